#include "modn/common.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace modn {

namespace {

u64 env_u64(const char* name, u64 fallback) {
    const char* s = std::getenv(name);
    if (!s || !*s) return fallback;
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (end == s) return fallback;
    return static_cast<u64>(v);
}

std::atomic<u64> g_cap{0};  // 0 = uninitialized

u64 cap_init() {
    u64 c = env_u64("MODN_CAP", 100000000ull);
    if (c == 0) c = 100000000ull;
    return c;
}

}  // namespace

u64 enumeration_cap() {
    u64 c = g_cap.load(std::memory_order_relaxed);
    if (c == 0) {
        c = cap_init();
        g_cap.store(c, std::memory_order_relaxed);
    }
    return c;
}

void set_enumeration_cap(u64 cap) {
    g_cap.store(cap == 0 ? cap_init() : cap, std::memory_order_relaxed);
}

void check_cap(u64 count, const std::string& what) {
    if (count > enumeration_cap()) {
        throw CapExceeded(what + " would materialize " + std::to_string(count) +
                          " elements (cap " + std::to_string(enumeration_cap()) + ")");
    }
}

u64 default_seed() {
    return env_u64("MODN_SEED", 1);
}

void parallel_for(u64 begin, u64 end, const std::function<void(u64)>& fn) {
    if (begin >= end) return;
    const u64 total = end - begin;
    unsigned workers = std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    if (workers > total) workers = static_cast<unsigned>(total);
    if (workers <= 1) {
        for (u64 i = begin; i < end; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const u64 chunk = (total + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const u64 lo = begin + w * chunk;
        const u64 hi = std::min(end, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (u64 i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace modn
