#include <random>
#include <vector>

#include "doctest.h"
#include "modn/fourier.hpp"
#include "modn/kernels.hpp"

using namespace modn;

namespace {

struct KernelGuard {
    KernelGuard() = default;
    ~KernelGuard() { kernels::force(kernels::avx2_available() ? kernels::Impl::Avx2 : kernels::Impl::Scalar); }
};

}  // namespace

TEST_CASE("scalar and dispatched kernels agree") {
    std::mt19937_64 rng(99);
    for (u64 N : {3ull, 64ull, 999ull}) {
        const RootTable& rt = root_table(N);
        for (size_t len : {0ull, 1ull, 5ull, 64ull, 1001ull}) {
            std::vector<u32> idx(len);
            std::vector<cd> w(len);
            std::uniform_real_distribution<double> uni(-2.0, 2.0);
            for (size_t i = 0; i < len; ++i) {
                idx[i] = static_cast<u32>(rng() % N);
                w[i] = cd{uni(rng), uni(rng)};
            }
            const cd ps = kernels::phase_sum_scalar(idx.data(), len, rt.w.data());
            const cd ws = kernels::weighted_phase_sum_scalar(w.data(), idx.data(), len, rt.w.data());
            const cd pd = kernels::phase_sum(idx.data(), len, rt.w.data());
            const cd wd = kernels::weighted_phase_sum(w.data(), idx.data(), len, rt.w.data());
            const double tol = 1e-12 * static_cast<double>(len + 1);
            CHECK(std::abs(ps - pd) < tol);
            CHECK(std::abs(ws - wd) < tol);
        }
    }
}

#if defined(__x86_64__)
TEST_CASE("avx2 variant matches scalar exactly enough") {
    if (!kernels::avx2_available()) return;
    std::mt19937_64 rng(7);
    const RootTable& rt = root_table(257);
    std::vector<u32> idx(513);
    std::vector<cd> w(513);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (size_t i = 0; i < idx.size(); ++i) {
        idx[i] = static_cast<u32>(rng() % 257);
        w[i] = cd{uni(rng), uni(rng)};
    }
    const cd a = kernels::phase_sum_avx2(idx.data(), idx.size(), rt.w.data());
    const cd b = kernels::phase_sum_scalar(idx.data(), idx.size(), rt.w.data());
    CHECK(std::abs(a - b) < 1e-10);
    const cd c = kernels::weighted_phase_sum_avx2(w.data(), idx.data(), idx.size(), rt.w.data());
    const cd d = kernels::weighted_phase_sum_scalar(w.data(), idx.data(), idx.size(), rt.w.data());
    CHECK(std::abs(c - d) < 1e-10);
}
#endif

TEST_CASE("forcing the implementation changes the active kernel") {
    KernelGuard guard;
    kernels::force(kernels::Impl::Scalar);
    CHECK(kernels::active() == kernels::Impl::Scalar);
    if (kernels::avx2_available()) {
        kernels::force(kernels::Impl::Avx2);
        CHECK(kernels::active() == kernels::Impl::Avx2);
    }
}

TEST_CASE("transforms are kernel independent") {
    KernelGuard guard;
    auto f = GroupFunction::random(60, 2, Side::Group, 1234);
    kernels::force(kernels::Impl::Scalar);
    auto scalar = dft(f);
    if (!kernels::avx2_available()) return;
    kernels::force(kernels::Impl::Avx2);
    auto vec = dft(f);
    CHECK(max_abs_difference(scalar, vec) < 1e-9);
}
