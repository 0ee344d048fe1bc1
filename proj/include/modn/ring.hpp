#pragma once

#include <span>
#include <utility>
#include <vector>

#include "modn/common.hpp"
#include "modn/rational.hpp"

namespace modn {

// A modulus N with its prime factorization and divisor lattice. Immutable
// after construction and safe to share across threads.
struct RingContext {
    u64 N;
    std::vector<std::pair<u64, int>> prime_factors;  // ascending primes
    std::vector<u64> divisors;                       // ascending, all divisors of N

    explicit RingContext(u64 modulus);

    bool divides(u64 d) const { return d != 0 && N % d == 0; }
    bool is_odd() const { return N % 2 == 1; }
    bool is_prime() const { return prime_factors.size() == 1 && prime_factors[0].second == 1; }
    // true iff every prime factor exceeds n (the moment-curve admissibility filter)
    bool prime_factors_exceed(u64 n) const;
};

std::vector<std::pair<u64, int>> factorize(u64 n);
u64 euler_phi(u64 n);

// |x| = N/gcd(x,N); |0| = 1, units have norm N.
u64 gcd_norm(u64 x, u64 N);
// ||x⃗|| = N/gcd(x_1,...,x_n,N)
u64 gcd_norm(std::span<const u64> x, u64 N);

// x⃗ ∈ B_d  ⟺  N/d divides every coordinate. Requires d | N.
bool in_ball(std::span<const u64> x, u64 d, const RingContext& ctx);

// Coset representatives {[0],...,[N/d − 1]} for B_d. Requires d | N.
std::vector<u64> lambda_set(const RingContext& ctx, u64 d);

// Members of the nested ball B_rho(0) in [Z/NZ]^n, as flat indices with
// radix-N encoding, sorted ascending. Primal family: {x : ||x|| <= rho};
// dual family: {xi : gcd(xi,N) >= 1/rho}.
enum class BallFamily { Primal, Dual };
std::vector<u64> nested_ball_members(double rho, int n, const RingContext& ctx,
                                     BallFamily family = BallFamily::Primal);

// Sum over x mod N of |x|^{-r}, disentangled as sum over d|N of phi(d) d^{-r}.
// Exact when r is a nonnegative integer.
Rational norm_power_sum_exact(const RingContext& ctx, int r);
double norm_power_sum_direct(const RingContext& ctx, double r);

// CRT between Z/NZ and the product of Z/p^e Z, components in prime order.
std::vector<u64> crt_split(u64 x, const RingContext& ctx);
u64 crt_combine(std::span<const u64> parts, const RingContext& ctx);

// Flat radix-N index helpers for points of [Z/NZ]^n (coordinate 0 fastest).
inline u64 encode_point(std::span<const u64> x, u64 N) {
    u64 idx = 0;
    for (size_t i = x.size(); i-- > 0;) idx = idx * N + x[i];
    return idx;
}
inline void decode_point(u64 idx, u64 N, std::span<u64> out) {
    for (size_t i = 0; i < out.size(); ++i) {
        out[i] = idx % N;
        idx /= N;
    }
}

}  // namespace modn
