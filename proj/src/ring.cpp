#include "modn/ring.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace modn {

std::vector<std::pair<u64, int>> factorize(u64 n) {
    std::vector<std::pair<u64, int>> fs;
    for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            fs.emplace_back(p, e);
        }
    }
    if (n > 1) fs.emplace_back(n, 1);
    return fs;
}

u64 euler_phi(u64 n) {
    u64 phi = n;
    for (auto [p, e] : factorize(n)) phi -= phi / p;
    return phi;
}

RingContext::RingContext(u64 modulus) : N(modulus) {
    if (N == 0) throw std::invalid_argument("RingContext: modulus must be positive");
    prime_factors = factorize(N);
    divisors = {1};
    for (auto [p, e] : prime_factors) {
        const size_t base = divisors.size();
        u64 pk = 1;
        for (int j = 1; j <= e; ++j) {
            pk *= p;
            for (size_t i = 0; i < base; ++i) divisors.push_back(divisors[i] * pk);
        }
    }
    std::sort(divisors.begin(), divisors.end());
}

bool RingContext::prime_factors_exceed(u64 n) const {
    for (auto [p, e] : prime_factors)
        if (p <= n) return false;
    return true;
}

u64 gcd_norm(u64 x, u64 N) {
    return N / std::gcd(x % N, N);
}

u64 gcd_norm(std::span<const u64> x, u64 N) {
    u64 g = N;
    for (u64 xi : x) g = std::gcd(g, xi % N);
    return N / g;
}

bool in_ball(std::span<const u64> x, u64 d, const RingContext& ctx) {
    if (!ctx.divides(d)) throw std::invalid_argument("in_ball: d must divide N");
    const u64 step = ctx.N / d;
    for (u64 xi : x)
        if (xi % step != 0) return false;
    return true;
}

std::vector<u64> lambda_set(const RingContext& ctx, u64 d) {
    if (!ctx.divides(d)) throw std::invalid_argument("lambda_set: d must divide N");
    std::vector<u64> reps(ctx.N / d);
    std::iota(reps.begin(), reps.end(), 0);
    return reps;
}

std::vector<u64> nested_ball_members(double rho, int n, const RingContext& ctx,
                                     BallFamily family) {
    if (rho <= 0) throw std::invalid_argument("nested_ball_members: rho must be positive");
    const u64 N = ctx.N;
    // Coordinate-wise admissible residues; the n-fold ball is their product
    // for the primal family but not the dual, so membership is tested on the
    // joint gcd.
    u64 count_estimate = 1;
    std::vector<u64> admissible;  // gcd values g = gcd(x,N) allowed per point
    // A point belongs iff g = gcd(x_1,..,x_n,N) satisfies the family predicate.
    auto gcd_ok = [&](u64 g) {
        if (family == BallFamily::Primal) return static_cast<double>(N / g) <= rho;
        return static_cast<double>(g) * rho >= 1.0;
    };
    // Upper bound the output size before materializing.
    u64 bound = 0;
    for (u64 d : ctx.divisors) {
        if (gcd_ok(d)) {
            u64 c = 1;
            for (int i = 0; i < n; ++i) {
                c *= N / d;
                if (c > enumeration_cap()) break;
            }
            bound = std::max(bound, c);
        }
    }
    check_cap(bound, "nested_ball_members");
    (void)count_estimate;

    std::vector<u64> out;
    // Walk multiples of the coarsest admissible step; dedupe via sort+unique.
    for (u64 d : ctx.divisors) {
        if (!gcd_ok(d)) continue;
        const u64 pts = [&] {
            u64 c = 1;
            for (int i = 0; i < n; ++i) c *= N / d;
            return c;
        }();
        check_cap(out.size() + pts, "nested_ball_members");
        std::vector<u64> x(static_cast<size_t>(n), 0);
        for (u64 flat = 0; flat < pts; ++flat) {
            u64 rem = flat;
            for (int i = 0; i < n; ++i) {
                x[static_cast<size_t>(i)] = (rem % (N / d)) * d;
                rem /= (N / d);
            }
            out.push_back(encode_point(x, N));
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Rational norm_power_sum_exact(const RingContext& ctx, int r) {
    if (r < 0) throw std::invalid_argument("norm_power_sum_exact: r must be >= 0");
    Rational sum(0);
    for (u64 d : ctx.divisors) {
        Rational term(static_cast<i64>(euler_phi(d)));
        term /= Rational(static_cast<i64>(d)).pow(r);
        sum += term;
    }
    return sum;
}

double norm_power_sum_direct(const RingContext& ctx, double r) {
    double sum = 0;
    for (u64 x = 0; x < ctx.N; ++x) sum += std::pow(static_cast<double>(gcd_norm(x, ctx.N)), -r);
    return sum;
}

std::vector<u64> crt_split(u64 x, const RingContext& ctx) {
    std::vector<u64> parts;
    parts.reserve(ctx.prime_factors.size());
    for (auto [p, e] : ctx.prime_factors) parts.push_back(x % pow_u64(p, static_cast<unsigned>(e)));
    return parts;
}

namespace {
i64 egcd(i64 a, i64 b, i64& x, i64& y) {
    if (b == 0) {
        x = 1;
        y = 0;
        return a;
    }
    i64 x1, y1;
    i64 g = egcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}
}  // namespace

u64 crt_combine(std::span<const u64> parts, const RingContext& ctx) {
    if (parts.size() != ctx.prime_factors.size())
        throw std::invalid_argument("crt_combine: wrong number of components");
    i64 value = 0;
    i64 modulus = 1;
    for (size_t i = 0; i < parts.size(); ++i) {
        const i64 q = static_cast<i64>(
            pow_u64(ctx.prime_factors[i].first, static_cast<unsigned>(ctx.prime_factors[i].second)));
        // Solve value' ≡ value (mod modulus), value' ≡ parts[i] (mod q).
        i64 x, y;
        egcd(modulus % q, q, x, y);
        i64 diff = mod_floor(static_cast<i64>(parts[i]) - value, q);
        i64 t = mod_floor((__int128)diff * x % q, q);
        value = value + modulus * t;
        modulus *= q;
        value = mod_floor(value, modulus);
    }
    return static_cast<u64>(value);
}

}  // namespace modn
