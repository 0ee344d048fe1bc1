#include <cmath>
#include <random>

#include "doctest.h"
#include "modn/fourier.hpp"
#include "modn/kernels.hpp"

using namespace modn;

TEST_CASE("delta and constant transforms") {
    auto d0 = GroupFunction::delta(4, 1, Side::Group);
    auto hat = dft(d0);
    for (size_t i = 0; i < hat.size(); ++i) CHECK(std::abs(hat[i] - cd{1.0, 0.0}) < 1e-12);

    auto one = GroupFunction::constant(4, 1, Side::Group);
    auto onehat = dft(one);
    CHECK(std::abs(onehat[0] - cd{4.0, 0.0}) < 1e-12);
    for (size_t i = 1; i < onehat.size(); ++i) CHECK(std::abs(onehat[i]) < 1e-12);

    auto dualone = GroupFunction::constant(5, 1, Side::Dual);
    auto inv = inverse_dft(dualone);
    CHECK(std::abs(inv[0] - cd{1.0, 0.0}) < 1e-12);
    for (size_t i = 1; i < inv.size(); ++i) CHECK(std::abs(inv[i]) < 1e-12);
}

TEST_CASE("Parseval identity on random inputs") {
    for (u64 N : {5ull, 12ull, 31ull}) {
        for (int n : {1, 2}) {
            auto f = GroupFunction::random(N, n, Side::Group, 1000 + N + static_cast<u64>(n));
            auto fh = dft(f);
            double lhs = 0, rhs = 0;
            for (size_t i = 0; i < f.size(); ++i) lhs += std::norm(f[i]);
            for (size_t i = 0; i < fh.size(); ++i) rhs += std::norm(fh[i]);
            rhs /= std::pow(static_cast<double>(N), n);
            CHECK(std::abs(lhs - rhs) < 1e-9 * std::max(1.0, lhs));
        }
    }
}

TEST_CASE("fast transform agrees with the direct reference") {
    for (u64 N : {7ull, 12ull, 20ull}) {
        for (int n : {1, 2}) {
            auto f = GroupFunction::random(N, n, Side::Group, 77 + N);
            CHECK(max_abs_difference(dft(f), dft_reference(f)) < 1e-9);
            auto g = GroupFunction::random(N, n, Side::Dual, 78 + N);
            CHECK(max_abs_difference(inverse_dft(g), inverse_dft_reference(g)) < 1e-9);
        }
    }
    // Bluestein path (length above the direct-summation cutoff)
    auto big = GroupFunction::random(257, 1, Side::Group, 9);
    CHECK(max_abs_difference(dft(big), dft_reference(big)) < 1e-8);
}

TEST_CASE("inversion round trip") {
    for (u64 N : {9ull, 100ull, 625ull}) {
        auto f = GroupFunction::random(N, 1, Side::Group, N);
        CHECK(max_abs_difference(inverse_dft(dft(f)), f) < 1e-9);
    }
    auto f2 = GroupFunction::random(11, 2, Side::Group, 5);
    CHECK(max_abs_difference(inverse_dft(dft(f2)), f2) < 1e-9);
}

TEST_CASE("indicator of a ball transforms to the dual ball") {
    // For B_d in [Z/NZ]^k: chi_hat_{B_d} = d^k chi_{B_{N/d}}.
    for (u64 N : {12ull, 9ull}) {
        RingContext ctx(N);
        for (int k : {1, 2}) {
            for (u64 d : ctx.divisors) {
                GroupFunction chi(N, k, Side::Group);
                std::vector<u64> x(static_cast<size_t>(k));
                for (size_t i = 0; i < chi.size(); ++i) {
                    decode_point(i, N, x);
                    chi[i] = in_ball(x, d, ctx) ? 1.0 : 0.0;
                }
                auto hat = dft(chi);
                const double amp = std::pow(static_cast<double>(d), k);
                for (size_t i = 0; i < hat.size(); ++i) {
                    decode_point(i, N, x);
                    const cd expect = in_ball(x, N / d, ctx) ? cd{amp, 0.0} : cd{0.0, 0.0};
                    CHECK(std::abs(hat[i] - expect) < 1e-9);
                }
            }
        }
    }
}

TEST_CASE("parabolic rectangle inverts to the scaled dual rectangle") {
    // N=9, d=3, n=2: theta = {(w,t): 3|w, 9|t}, inverse transform of chi_theta
    // equals (1/27) chi_{theta*}.
    const u64 N = 9;
    RingContext ctx(N);
    GroupFunction chi(N, 2, Side::Dual);
    std::vector<u64> p(2);
    for (size_t i = 0; i < chi.size(); ++i) {
        decode_point(i, N, p);
        chi[i] = (p[0] % 3 == 0 && p[1] % 9 == 0) ? 1.0 : 0.0;
    }
    auto inv = inverse_dft(chi);
    for (size_t i = 0; i < inv.size(); ++i) {
        decode_point(i, N, p);
        const bool in_dual = (p[0] % 3 == 0);  // ||x1|| <= 3, |x2| <= 9 (no constraint)
        const cd expect = in_dual ? cd{1.0 / 27.0, 0.0} : cd{0.0, 0.0};
        CHECK(std::abs(inv[i] - expect) < 1e-12);
    }
}

TEST_CASE("modulation translation duality") {
    const u64 N = 15;
    const RootTable& rt = root_table(N);
    auto f = GroupFunction::random(N, 1, Side::Group, 3);
    const u64 a = 4;
    GroupFunction g(N, 1, Side::Group);
    for (u64 x = 0; x < N; ++x) g[x] = f[x] * rt.w[(x * a) % N];
    auto fh = dft(f);
    auto gh = dft(g);
    for (u64 xi = 0; xi < N; ++xi) CHECK(std::abs(gh[xi] - fh[(xi + N - a) % N]) < 1e-9);
}

TEST_CASE("convolution identities") {
    const u64 N = 12;
    auto f = GroupFunction::random(N, 1, Side::Group, 21);
    auto d0 = GroupFunction::delta(N, 1, Side::Group);
    CHECK(max_abs_difference(convolve(f, d0), f) < 1e-12);

    auto g = GroupFunction::random(N, 1, Side::Group, 22);
    auto lhs = dft(convolve(f, g));
    auto rhs = dft(f);
    auto gh = dft(g);
    for (size_t i = 0; i < rhs.size(); ++i) rhs[i] *= gh[i];
    CHECK(max_abs_difference(lhs, rhs) < 1e-9);

    // chi_{B_d} * chi_{B_d}(0) = d^n on the group side (N=12, d=3, n=1)
    RingContext ctx(N);
    GroupFunction chi(N, 1, Side::Group);
    for (u64 x = 0; x < N; ++x) chi[x] = (x % 4 == 0) ? 1.0 : 0.0;
    auto conv = convolve(chi, chi);
    CHECK(std::abs(conv[0] - cd{3.0, 0.0}) < 1e-12);
}

TEST_CASE("2d convolution theorem") {
    auto f = GroupFunction::random(6, 2, Side::Group, 31);
    auto g = GroupFunction::random(6, 2, Side::Group, 32);
    auto lhs = dft(convolve(f, g));
    auto rhs = dft(f);
    auto gh = dft(g);
    for (size_t i = 0; i < rhs.size(); ++i) rhs[i] *= gh[i];
    CHECK(max_abs_difference(lhs, rhs) < 1e-9);
}
