#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "modn/intmat.hpp"
#include "modn/ring.hpp"

using namespace modn;

TEST_CASE("gcd norm basics") {
    CHECK(gcd_norm(0, 12) == 1);
    CHECK(gcd_norm(1, 12) == 12);
    CHECK(gcd_norm(8, 12) == 3);  // gcd(8,12) = 4
    CHECK(gcd_norm(6, 12) == 2);
    const u64 v1[] = {4, 8};
    CHECK(gcd_norm(std::span<const u64>(v1), 12) == 3);
    const u64 v2[] = {0, 0, 0};
    CHECK(gcd_norm(std::span<const u64>(v2), 9) == 1);
}

TEST_CASE("norm is multiplicative across CRT components") {
    std::mt19937_64 rng(7);
    for (u64 N : {12ull, 60ull, 90ull, 180ull}) {
        RingContext ctx(N);
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<u64> x(3);
            for (auto& c : x) c = rng() % N;
            u64 prod = 1;
            for (auto [p, e] : ctx.prime_factors) {
                const u64 q = pow_u64(p, static_cast<unsigned>(e));
                std::vector<u64> xq(3);
                for (size_t i = 0; i < 3; ++i) xq[i] = x[i] % q;
                prod *= gcd_norm(std::span<const u64>(xq), q);
            }
            CHECK(prod == gcd_norm(std::span<const u64>(x), N));
        }
    }
}

TEST_CASE("ring context factorization and divisors") {
    RingContext ctx(360);
    u64 recon = 1;
    for (auto [p, e] : ctx.prime_factors) recon *= pow_u64(p, static_cast<unsigned>(e));
    CHECK(recon == 360);
    CHECK(ctx.divisors.size() == 24);
    CHECK(std::is_sorted(ctx.divisors.begin(), ctx.divisors.end()));
    for (u64 d : ctx.divisors) CHECK(360 % d == 0);
}

TEST_CASE("in_ball matches componentwise divisibility") {
    RingContext ctx(12);
    const u64 a[] = {4, 8};
    CHECK(in_ball(std::span<const u64>(a), 3, ctx));
    const u64 z[] = {0, 0};
    for (u64 d : ctx.divisors) CHECK(in_ball(std::span<const u64>(z), d, ctx));
    const u64 b[] = {1, 0};
    CHECK_FALSE(in_ball(std::span<const u64>(b), 3, ctx));
    CHECK_THROWS_AS(in_ball(std::span<const u64>(b), 5, ctx), std::invalid_argument);
}

TEST_CASE("ball cardinality |B_d| = d^n") {
    for (u64 N : {12ull, 45ull, 100ull}) {
        RingContext ctx(N);
        for (int n = 1; n <= 3; ++n) {
            if (pow_u64(N, static_cast<unsigned>(n)) > 2000000) continue;
            for (u64 d : ctx.divisors) {
                u64 count = 0;
                std::vector<u64> x(static_cast<size_t>(n));
                const u64 total = pow_u64(N, static_cast<unsigned>(n));
                for (u64 flat = 0; flat < total; ++flat) {
                    decode_point(flat, N, x);
                    if (in_ball(x, d, ctx)) ++count;
                }
                CHECK(count == pow_u64(d, static_cast<unsigned>(n)));
            }
        }
    }
}

TEST_CASE("lambda set and tiling of the group by ball cosets") {
    RingContext ctx(12);
    CHECK(lambda_set(ctx, 3) == std::vector<u64>{0, 1, 2, 3});
    CHECK(lambda_set(ctx, 12) == std::vector<u64>{0});
    RingContext ctx9(9);
    CHECK(lambda_set(ctx9, 1).size() == 9);

    // Every point of [Z/NZ]^k has exactly one representative v in Lambda^k
    // with x - v in B_d.
    for (u64 d : ctx.divisors) {
        const auto reps = lambda_set(ctx, d);
        const int k = 2;
        std::vector<u64> x(k), v(k), diff(k);
        for (u64 flat = 0; flat < 144; ++flat) {
            decode_point(flat, 12, x);
            int hits = 0;
            for (u64 r0 : reps)
                for (u64 r1 : reps) {
                    v = {r0, r1};
                    for (int i = 0; i < k; ++i) diff[static_cast<size_t>(i)] = (x[static_cast<size_t>(i)] + 12 - v[static_cast<size_t>(i)]) % 12;
                    if (in_ball(diff, d, ctx)) ++hits;
                }
            CHECK(hits == 1);
        }
    }
}

TEST_CASE("nested ball members") {
    RingContext ctx(12);
    CHECK(nested_ball_members(3.0, 1, ctx) == std::vector<u64>{0, 4, 6, 8});
    CHECK(nested_ball_members(1.0, 1, ctx) == std::vector<u64>{0});
    CHECK(nested_ball_members(12.0, 1, ctx).size() == 12);
    // dual family at rho = 1/4: gcd(xi,12) >= 4 -> {0, 4, 8, 6(gcd 6), 0...}
    const auto dual = nested_ball_members(0.25, 1, ctx, BallFamily::Dual);
    CHECK(dual == std::vector<u64>{0, 4, 6, 8});
}

TEST_CASE("norm power sum disentangles over divisors") {
    for (u64 N : {12ull, 45ull, 64ull, 97ull}) {
        RingContext ctx(N);
        for (int r : {0, 1, 2, 3}) {
            const Rational exact = norm_power_sum_exact(ctx, r);
            const double direct = norm_power_sum_direct(ctx, static_cast<double>(r));
            CHECK(std::abs(exact.to_double() - direct) < 1e-10 * direct);
        }
        // non-integer exponents fall back to doubles
        double lhs = norm_power_sum_direct(ctx, 1.5);
        double rhs = 0;
        for (u64 d : ctx.divisors) rhs += static_cast<double>(euler_phi(d)) * std::pow(static_cast<double>(d), -1.5);
        CHECK(std::abs(lhs - rhs) < 1e-10 * rhs);
    }
}

TEST_CASE("crt split and combine invert each other") {
    RingContext ctx(12);
    CHECK(crt_split(7, ctx) == std::vector<u64>{3, 1});  // mod 4, mod 3 (prime order 2,3 -> 4 first? factors ascending: 2^2, 3)
    CHECK(crt_split(0, ctx) == std::vector<u64>{0, 0});
    const std::vector<u64> parts{1, 1};
    // x ≡ 1 mod 4, x ≡ 1 mod 3 -> 1; and 7 ≡ 3 mod 4, 1 mod 3
    CHECK(crt_combine(parts, ctx) == 1);
    for (u64 N : {12ull, 90ull, 210ull}) {
        RingContext c2(N);
        for (u64 x = 0; x < N; ++x) CHECK(crt_combine(crt_split(x, c2), c2) == x);
    }
}

TEST_CASE("smith normal form solution counts match brute force") {
    SUBCASE("frozen examples") {
        RingContext ctx12(12);
        IntMatrix A = IntMatrix::diag(std::vector<i64>{2, 3});
        const u64 b0[] = {0, 0};
        CHECK(count_linear_solutions(A, std::span<const u64>(b0), ctx12).count == 6);

        IntMatrix I = IntMatrix::identity(2);
        const u64 b1[] = {5, 11};
        CHECK(count_linear_solutions(I, std::span<const u64>(b1), ctx12).count == 1);

        RingContext ctx4(4);
        IntMatrix B(2, 2);
        B.at(0, 0) = 1;
        B.at(0, 1) = 1;
        B.at(1, 0) = 0;
        B.at(1, 1) = 2;
        CHECK(count_linear_solutions(B, std::span<const u64>(b0), ctx4).count == 2);
    }

    SUBCASE("det ≡ 0 mod N rejected") {
        RingContext ctx(6);
        IntMatrix A = IntMatrix::diag(std::vector<i64>{2, 3});
        const u64 b[] = {0, 0};
        CHECK_THROWS_AS(count_linear_solutions(A, std::span<const u64>(b), ctx), std::invalid_argument);
    }

    SUBCASE("randomized sweep vs brute force") {
        std::mt19937_64 rng(42);
        int done = 0;
        while (done < 300) {
            const u64 N = 2 + rng() % 29;
            const int n = 1 + static_cast<int>(rng() % 3);
            RingContext ctx(N);
            IntMatrix A(n, n);
            for (auto& v : A.a) v = static_cast<i64>(rng() % N);
            const i64 dA = det(A);
            if (mod_floor(dA, static_cast<i64>(N)) == 0) continue;
            std::vector<u64> b(static_cast<size_t>(n));
            for (auto& v : b) v = rng() % N;
            const auto snf = count_linear_solutions(A, b, ctx);
            const u64 brute = count_linear_solutions_brute(A, b, ctx);
            CHECK(snf.count == brute);
            if (snf.dichotomy_asserted) {
                const bool dichotomy = snf.count == 0 || snf.count == N / snf.det_norm;
                CHECK(dichotomy);
            }
            ++done;
        }
    }
}

TEST_CASE("smith normal form dichotomy needs per-prime nondegeneracy") {
    // diag(2,4) mod 12: det = 8 ≢ 0 mod 12 yet the count is 8, not
    // gcd(8,12) = 4; the 0-or-N/|det| dichotomy only holds when det stays
    // nonzero mod every prime-power part.
    RingContext ctx(12);
    IntMatrix A = IntMatrix::diag(std::vector<i64>{2, 4});
    const u64 b[] = {0, 0};
    const auto r = count_linear_solutions(A, std::span<const u64>(b), ctx);
    CHECK(r.count == 8);
    CHECK(r.count == count_linear_solutions_brute(A, std::span<const u64>(b), ctx));
    CHECK_FALSE(r.dichotomy_asserted);
}
