#include "modn/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace modn::kernels {

namespace {

std::atomic<int> g_forced{-1};  // -1 = auto

Impl resolve() {
    int f = g_forced.load(std::memory_order_relaxed);
    if (f >= 0) return static_cast<Impl>(f);
    if (const char* env = std::getenv("MODN_KERNEL")) {
        if (std::strcmp(env, "scalar") == 0) return Impl::Scalar;
        if (std::strcmp(env, "avx2") == 0 && avx2_available()) return Impl::Avx2;
    }
    return avx2_available() ? Impl::Avx2 : Impl::Scalar;
}

}  // namespace

bool avx2_available() {
#if defined(__x86_64__)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

Impl active() {
    return resolve();
}

void force(Impl impl) {
    g_forced.store(static_cast<int>(impl), std::memory_order_relaxed);
}

cd phase_sum_scalar(const u32* idx, std::size_t count, const cd* roots) {
    double re = 0, im = 0;
    for (std::size_t i = 0; i < count; ++i) {
        const cd& r = roots[idx[i]];
        re += r.real();
        im += r.imag();
    }
    return {re, im};
}

cd weighted_phase_sum_scalar(const cd* w, const u32* idx, std::size_t count, const cd* roots) {
    double re = 0, im = 0;
    for (std::size_t i = 0; i < count; ++i) {
        const cd& r = roots[idx[i]];
        const cd& c = w[i];
        re += c.real() * r.real() - c.imag() * r.imag();
        im += c.real() * r.imag() + c.imag() * r.real();
    }
    return {re, im};
}

cd phase_sum(const u32* idx, std::size_t count, const cd* roots) {
#if defined(__x86_64__)
    if (resolve() == Impl::Avx2) return phase_sum_avx2(idx, count, roots);
#endif
    return phase_sum_scalar(idx, count, roots);
}

cd weighted_phase_sum(const cd* w, const u32* idx, std::size_t count, const cd* roots) {
#if defined(__x86_64__)
    if (resolve() == Impl::Avx2) return weighted_phase_sum_avx2(w, idx, count, roots);
#endif
    return weighted_phase_sum_scalar(w, idx, count, roots);
}

}  // namespace modn::kernels
