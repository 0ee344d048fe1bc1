#pragma once

#include <optional>

#include "modn/group_function.hpp"
#include "modn/rational.hpp"
#include "modn/ring.hpp"

namespace modn {

// Power-sum map Phi(t) = (sum t_i, sum t_i^2, ..., sum t_i^n) mod N.
std::vector<u64> power_sum_map(std::span<const u64> t, u64 N);

// Exact count of ordered solutions t in [Z/NZ]^n to Phi(t) = Phi(y), brute
// per prime power and multiplied across the factorization.
struct CountReport {
    u64 exact = 0;
    // Hensel-regime bound n! prod gcd(y_j - y_k, p^alpha), present when N is
    // a prime power p^alpha with p > n and delta < alpha/2.
    std::optional<u64> hensel_bound;
    bool hensel_applicable = false;
    std::optional<u64> two_d_bound;  // n = 2 prime powers: 2 gcd(y_1 - y_2, p^alpha)
    u64 gcd_product = 0;             // prod_{j<k} gcd(y_j - y_k, N)
    double conjecture_constant = 0;  // exact / gcd_product
};

CountReport count_solutions(std::span<const u64> y, const RingContext& ctx, int n);

// Counts for every residue class at once: bucket[flat(Phi(t))] over t.
std::vector<u64> count_solutions_all(const RingContext& ctx, int n);

// delta with p^delta || prod_{j<k}(y_j - y_k); nullopt encodes "the product
// vanishes mod p^alpha" (delta >= alpha).
std::optional<u64> hensel_delta(std::span<const u64> y, u64 p, int alpha);

struct HenselBound {
    bool applicable = false;  // delta < alpha/2
    u64 bound = 0;            // n! p^delta when applicable
    std::optional<u64> two_d_bound;
    std::optional<u64> delta;
};

HenselBound hensel_regime_bound(std::span<const u64> y, u64 p, int alpha, int n);

// Diagonal counts N(0; p^alpha) against the envelope C alpha p^{alpha(n-r)}
// for triangular n = r(r+1)/2.
struct DiagonalReport {
    u64 exact = 0;
    int r = 0;
    double envelope_unit = 0;  // alpha p^{alpha(n-r)}
    double ratio = 0;          // exact / envelope_unit
};

DiagonalReport diagonal_count_check(u64 p, int alpha, int n);

// Christ-type multilinear form
//   lhs = N^{-n} sum_t prod_i F(t_i) prod_{j<k} gcd(t_j - t_k, N)^gamma
// against rhs = ||F||_{l^alpha(normalized)}^n.
struct MultilinearReport {
    double lhs = 0;
    double rhs = 0;
    double gamma = 0;
    double alpha = 0;
    bool in_theorem_range = false;  // gamma <= 2/n and 1/alpha + gamma(n-1)/2 <= 1
};

MultilinearReport christ_multilinear(std::span<const double> F, double gamma, double alpha,
                                     int n, const RingContext& ctx);

// N^{-1} sum_t gcd(t, N) = N^{-1} sum_{d|N} phi(N/d) d, exactly.
Rational gcd_weight_l1(const RingContext& ctx);

// Number of factorisations of prod (X - y_j) into linear factors mod N;
// equals the power-sum count when every prime factor of N exceeds n.
struct FactorisationReport {
    u64 power_sum_count = 0;
    std::optional<u64> coefficient_match_count;  // brute force when affordable
};

FactorisationReport factorisation_count(std::span<const u64> y, const RingContext& ctx, int n,
                                        bool brute_check);

}  // namespace modn
