#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace modn {

using cd = std::complex<double>;
using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

// Thrown when an operation would materialize more elements than the
// enumeration cap allows.
struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Global enumeration cap (default 1e8 elements). The environment variable
// MODN_CAP overrides the default at startup; set_enumeration_cap overrides
// both.
u64 enumeration_cap();
void set_enumeration_cap(u64 cap);
void check_cap(u64 count, const std::string& what);

// Default 64-bit seed for randomized experiments. MODN_SEED overrides.
u64 default_seed();

// Runs fn(i) for i in [begin, end) across worker threads. fn must only write
// state owned by index i; chunks are contiguous so results are deterministic.
void parallel_for(u64 begin, u64 end, const std::function<void(u64)>& fn);

inline u64 pow_u64(u64 base, unsigned exp) {
    u64 r = 1;
    while (exp--) r *= base;
    return r;
}

inline i64 mod_floor(i64 x, i64 m) {
    i64 r = x % m;
    return r < 0 ? r + m : r;
}

}  // namespace modn
