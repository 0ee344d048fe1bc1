// AVX2 variants of the phase-accumulation kernels. Compiled with -mavx2 and
// only reached after a runtime cpuid check. Each complex root occupies two
// consecutive doubles, so index k maps to double offsets 2k (re) and 2k+1
// (im); interleaved pairs are fetched with 64-bit gathers and combined with
// fmaddsub for the complex product.

#if defined(__x86_64__)

#include <immintrin.h>

#include "modn/kernels.hpp"

namespace modn::kernels {

namespace {

// [r0.re r0.im r1.re r1.im] for indices (i0, i1)
inline __m256d gather_pair(const double* base, u32 i0, u32 i1) {
    const __m256i off = _mm256_setr_epi64x(2ll * i0, 2ll * i0 + 1, 2ll * i1, 2ll * i1 + 1);
    return _mm256_i64gather_pd(base, off, 8);
}

inline __m256d complex_mul(__m256d w, __m256d r) {
    const __m256d wre = _mm256_movedup_pd(w);                     // [a a c c]
    const __m256d wim = _mm256_permute_pd(w, 0xF);                // [b b d d]
    const __m256d rsw = _mm256_permute_pd(r, 0x5);                // [im re im re]
    return _mm256_fmaddsub_pd(wre, r, _mm256_mul_pd(wim, rsw));   // (a+bi)(c+di)
}

inline cd reduce_pairs(__m256d acc) {
    alignas(32) double lane[4];
    _mm256_store_pd(lane, acc);
    return {lane[0] + lane[2], lane[1] + lane[3]};
}

}  // namespace

cd phase_sum_avx2(const u32* idx, std::size_t count, const cd* roots) {
    const double* base = reinterpret_cast<const double*>(roots);
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= count; i += 4) {
        acc0 = _mm256_add_pd(acc0, gather_pair(base, idx[i], idx[i + 1]));
        acc1 = _mm256_add_pd(acc1, gather_pair(base, idx[i + 2], idx[i + 3]));
    }
    cd tail{0.0, 0.0};
    for (; i < count; ++i) tail += roots[idx[i]];
    return reduce_pairs(_mm256_add_pd(acc0, acc1)) + tail;
}

cd weighted_phase_sum_avx2(const cd* w, const u32* idx, std::size_t count, const cd* roots) {
    const double* base = reinterpret_cast<const double*>(roots);
    const double* wbase = reinterpret_cast<const double*>(w);
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= count; i += 4) {
        const __m256d w0 = _mm256_loadu_pd(wbase + 2 * i);
        const __m256d w1 = _mm256_loadu_pd(wbase + 2 * i + 4);
        acc0 = _mm256_add_pd(acc0, complex_mul(w0, gather_pair(base, idx[i], idx[i + 1])));
        acc1 = _mm256_add_pd(acc1, complex_mul(w1, gather_pair(base, idx[i + 2], idx[i + 3])));
    }
    cd tail{0.0, 0.0};
    for (; i < count; ++i) tail += w[i] * roots[idx[i]];
    return reduce_pairs(_mm256_add_pd(acc0, acc1)) + tail;
}

}  // namespace modn::kernels

#endif  // __x86_64__
