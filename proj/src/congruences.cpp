#include "modn/congruences.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace modn {

std::vector<u64> power_sum_map(std::span<const u64> t, u64 N) {
    const int n = static_cast<int>(t.size());
    std::vector<u64> out(static_cast<size_t>(n), 0);
    for (u64 ti : t) {
        u64 pw = 1;
        for (int k = 0; k < n; ++k) {
            pw = pw * (ti % N) % N;
            out[static_cast<size_t>(k)] = (out[static_cast<size_t>(k)] + pw) % N;
        }
    }
    return out;
}

namespace {

u64 count_solutions_prime_power(std::span<const u64> y, u64 q, int n) {
    u64 total = 1;
    for (int i = 0; i < n; ++i) {
        total *= q;
        check_cap(total, "count_solutions");
    }
    std::vector<u64> ymod(y.begin(), y.end());
    for (auto& c : ymod) c %= q;
    const auto target = power_sum_map(ymod, q);
    u64 count = 0;
    std::vector<u64> t(static_cast<size_t>(n));
    for (u64 flat = 0; flat < total; ++flat) {
        decode_point(flat, q, t);
        if (power_sum_map(t, q) == target) ++count;
    }
    return count;
}

}  // namespace

CountReport count_solutions(std::span<const u64> y, const RingContext& ctx, int n) {
    if (static_cast<int>(y.size()) != n)
        throw std::invalid_argument("count_solutions: y must have n entries");
    CountReport rep;
    rep.exact = 1;
    for (auto [p, e] : ctx.prime_factors) {
        const u64 q = pow_u64(p, static_cast<unsigned>(e));
        rep.exact *= count_solutions_prime_power(y, q, n);
    }
    if (ctx.prime_factors.empty()) rep.exact = 1;  // N = 1

    rep.gcd_product = 1;
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
            const u64 diff = (y[static_cast<size_t>(j)] + ctx.N - y[static_cast<size_t>(k)]) % ctx.N;
            rep.gcd_product *= std::gcd(diff, ctx.N);
        }
    rep.conjecture_constant = static_cast<double>(rep.exact) / static_cast<double>(rep.gcd_product);

    if (ctx.prime_factors.size() == 1) {
        const auto [p, e] = ctx.prime_factors[0];
        if (p > static_cast<u64>(n)) {
            const auto hb = hensel_regime_bound(y, p, e, n);
            rep.hensel_applicable = hb.applicable;
            if (hb.applicable) rep.hensel_bound = hb.bound;
            rep.two_d_bound = hb.two_d_bound;
        }
    }

    if (rep.hensel_bound && rep.exact > *rep.hensel_bound)
        throw std::logic_error("count_solutions: Hensel-regime bound violated");
    if (rep.two_d_bound && rep.exact > *rep.two_d_bound)
        throw std::logic_error("count_solutions: 2-d bound violated");
    return rep;
}

std::vector<u64> count_solutions_all(const RingContext& ctx, int n) {
    const u64 N = ctx.N;
    u64 total = 1;
    for (int i = 0; i < n; ++i) {
        total *= N;
        check_cap(total, "count_solutions_all");
    }
    std::vector<u64> bucket(static_cast<size_t>(total), 0);
    std::vector<u64> t(static_cast<size_t>(n));
    for (u64 flat = 0; flat < total; ++flat) {
        decode_point(flat, N, t);
        ++bucket[encode_point(power_sum_map(t, N), N)];
    }
    // count for y is the bucket at Phi(y)
    return bucket;
}

std::optional<u64> hensel_delta(std::span<const u64> y, u64 p, int alpha) {
    const u64 q = pow_u64(p, static_cast<unsigned>(alpha));
    u64 delta = 0;
    for (size_t j = 0; j < y.size(); ++j)
        for (size_t k = j + 1; k < y.size(); ++k) {
            u64 diff = (y[j] % q + q - y[k] % q) % q;
            if (diff == 0) return std::nullopt;
            while (diff % p == 0) {
                diff /= p;
                ++delta;
            }
        }
    if (delta >= static_cast<u64>(alpha)) return std::nullopt;
    return delta;
}

HenselBound hensel_regime_bound(std::span<const u64> y, u64 p, int alpha, int n) {
    if (p <= static_cast<u64>(n)) throw std::invalid_argument("hensel_regime_bound: requires p > n");
    HenselBound out;
    const auto delta = hensel_delta(y, p, alpha);
    out.delta = delta;
    if (delta && 2 * *delta < static_cast<u64>(alpha)) {
        out.applicable = true;
        u64 fact = 1;
        for (int i = 2; i <= n; ++i) fact *= static_cast<u64>(i);
        out.bound = fact * pow_u64(p, static_cast<unsigned>(*delta));
    }
    if (n == 2) {
        const u64 q = pow_u64(p, static_cast<unsigned>(alpha));
        const u64 diff = (y[0] % q + q - y[1] % q) % q;
        out.two_d_bound = 2 * std::gcd(diff, q);
    }
    return out;
}

DiagonalReport diagonal_count_check(u64 p, int alpha, int n) {
    // triangular n = r(r+1)/2
    int r = 0;
    while (r * (r + 1) / 2 < n) ++r;
    if (r * (r + 1) / 2 != n)
        throw std::invalid_argument("diagonal_count_check: n must be triangular");
    if (p <= static_cast<u64>(n)) throw std::invalid_argument("diagonal_count_check: requires p > n");
    DiagonalReport rep;
    rep.r = r;
    const u64 q = pow_u64(p, static_cast<unsigned>(alpha));
    std::vector<u64> zero(static_cast<size_t>(n), 0);
    rep.exact = count_solutions_prime_power(zero, q, n);
    rep.envelope_unit = static_cast<double>(alpha) *
                        std::pow(static_cast<double>(p), static_cast<double>(alpha) * (n - r));
    rep.ratio = static_cast<double>(rep.exact) / rep.envelope_unit;
    return rep;
}

MultilinearReport christ_multilinear(std::span<const double> F, double gamma, double alpha,
                                     int n, const RingContext& ctx) {
    const u64 N = ctx.N;
    if (F.size() != N) throw std::invalid_argument("christ_multilinear: F must have N entries");
    MultilinearReport rep;
    rep.gamma = gamma;
    rep.alpha = alpha;
    rep.in_theorem_range = gamma <= 2.0 / n + 1e-12 && 1.0 / alpha + gamma * (n - 1) / 2.0 <= 1.0 + 1e-12;

    // gcd powers cached per residue
    std::vector<double> g(N);
    for (u64 t = 0; t < N; ++t) g[t] = std::pow(static_cast<double>(std::gcd(t, N)), gamma);

    u64 total = 1;
    for (int i = 0; i < n; ++i) {
        total *= N;
        check_cap(total, "christ_multilinear");
    }
    double lhs = 0;
    std::vector<u64> t(static_cast<size_t>(n));
    for (u64 flat = 0; flat < total; ++flat) {
        decode_point(flat, N, t);
        double term = 1;
        for (int i = 0; i < n; ++i) term *= F[t[static_cast<size_t>(i)]];
        if (term == 0) continue;
        for (int j = 0; j < n; ++j)
            for (int k = j + 1; k < n; ++k)
                term *= g[(t[static_cast<size_t>(j)] + N - t[static_cast<size_t>(k)]) % N];
        lhs += term;
    }
    rep.lhs = lhs / std::pow(static_cast<double>(N), n);

    double norm = 0;
    for (double v : F) norm += std::pow(std::abs(v), alpha);
    norm = std::pow(norm / static_cast<double>(N), 1.0 / alpha);
    rep.rhs = std::pow(norm, n);
    return rep;
}

Rational gcd_weight_l1(const RingContext& ctx) {
    Rational sum(0);
    for (u64 d : ctx.divisors)
        sum += Rational(static_cast<i64>(euler_phi(ctx.N / d)) * static_cast<i64>(d));
    return sum / Rational(static_cast<i64>(ctx.N));
}

FactorisationReport factorisation_count(std::span<const u64> y, const RingContext& ctx, int n,
                                        bool brute_check) {
    if (!ctx.prime_factors_exceed(static_cast<u64>(n)))
        throw std::invalid_argument("factorisation_count: all prime factors of N must exceed n");
    FactorisationReport rep;
    rep.power_sum_count = count_solutions(y, ctx, n).exact;
    if (brute_check) {
        const u64 N = ctx.N;
        u64 total = 1;
        for (int i = 0; i < n; ++i) {
            total *= N;
            check_cap(total, "factorisation_count");
        }
        // elementary symmetric coefficients of prod (X - y_j)
        auto elem = [&](std::span<const u64> roots) {
            std::vector<u64> e(static_cast<size_t>(n) + 1, 0);
            e[0] = 1;
            for (u64 root : roots) {
                for (int k = n; k >= 1; --k)
                    e[static_cast<size_t>(k)] =
                        (e[static_cast<size_t>(k)] + (N - root % N) * e[static_cast<size_t>(k - 1)]) % N;
            }
            return e;
        };
        const auto target = elem(y);
        u64 count = 0;
        std::vector<u64> x(static_cast<size_t>(n));
        for (u64 flat = 0; flat < total; ++flat) {
            decode_point(flat, N, x);
            if (elem(x) == target) ++count;
        }
        rep.coefficient_match_count = count;
    }
    return rep;
}

}  // namespace modn
