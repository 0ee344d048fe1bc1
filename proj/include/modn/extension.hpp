#pragma once

#include <optional>
#include <string>

#include "modn/exp_sums.hpp"
#include "modn/rational.hpp"

namespace modn {

// Extension operator for a polynomial graph:
//   EH(x) = N^{-d} sum_w H(w) e^{2 pi i (x'.w + x''.P(w))/N}
// H lives on the dual parameter space [Z/NZ]^d, the output on [Z/NZ]^n.
GroupFunction extend(const GroupFunction& H, const Surface& surface, const RingContext& ctx);

// F̂ sampled along the parametrization, one value per parameter point.
std::vector<cd> restrict_to_surface(const GroupFunction& Fhat, const Surface& surface,
                                    const RingContext& ctx);

struct RestrictionReport {
    double lhs = 0;    // (|Sigma|^{-1} sum_params |F̂(Gamma(w))|^s)^{1/s}
    double rhs = 0;    // l^r counting-measure norm of F
    double ratio = 0;  // lhs / rhs
    double r = 0, s = 0;
    u64 N = 0;
};

RestrictionReport restriction_ratio(const GroupFunction& F, const Surface& surface,
                                    double r, double s, const RingContext& ctx);

// Knapp example for the paraboloid: F with F̂ = chi_theta for the parabolic
// rectangle theta at scale d (requires d | N and d^2 | N). Closed forms are
// pure powers of d, so predicted-vs-measured equality is checked on the
// exponents in exact rational arithmetic.
struct KnappReport {
    u64 d = 0;
    GroupFunction F;                // group side, exact closed form
    double predicted_lhs = 0;       // d^{-(n-1)/s}
    double predicted_rhs = 0;       // d^{-(n+1)/r'}
    double measured_lhs = 0;        // via DFT restriction
    double measured_rhs = 0;        // l^r norm of the closed-form F
    Rational lhs_exponent;          // -(n-1)/s when s rational
    Rational rhs_exponent;          // -(n+1)/r'
    bool exponents_exact = false;   // measured support/amplitude reproduce the exponents exactly
    double dft_error = 0;           // max |dft(F) - chi_theta|
};

KnappReport knapp_function(u64 d, const RingContext& ctx, int n, const Rational& s,
                           const Rational& rprime, bool verify_dft = true);

// ||E1||_{r'}^{r'} for the paraboloid versus the divisor-sum identity
// sum_{d|N} phi(d) d^{-(n-1)(r'/2-1)} (odd N).
struct ConstantTestReport {
    double direct = 0;            // direct summation of |E1|^{r'}
    double exact = 0;             // divisor sum (rational when the exponent is integral)
    std::optional<Rational> exact_rational;
    double rel_error = 0;
};

ConstantTestReport constant_test(const Rational& rprime, const RingContext& ctx, int n);

// One modulus of the Stein-Tomas scan: max restriction ratio over the test
// family {delta, constant, Knapp at every admissible d, k random functions}.
struct TomasScanRow {
    u64 N = 0;
    double max_ratio = 0;
    std::string worst_family;
    double knapp_ratio = 0;  // max over admissible d (0 when none)
};

struct TomasScanResult {
    std::vector<TomasScanRow> rows;
    double slope_all = 0;           // log max_ratio vs log N least squares
    double slope_knapp_squares = 0; // same over perfect-square N, Knapp family
};

TomasScanResult tomas_scan(std::span<const u64> moduli, int n, double r, double s,
                           int random_trials, u64 seed);

// Moment-curve sharpness at N = p^{nL}: the full l^{r'} mass of E1, the
// restricted A-chain of the lower-bound recursion, and the analytic bound
// sum_{m=0}^{L-1} p^{(L-m)(n(n+1)/2+1-r')}.
struct MomentLowerBoundReport {
    u64 p = 0;
    int n = 0, L = 0;
    double rprime = 0;
    double direct = 0;           // ||S_{nL}||_{r'}^{r'}
    double analytic_bound = 0;
    std::vector<double> a_chain;  // A(0..L)
    double chain_sum = 0;         // sum_{M=1}^{L} A(M)
    bool direct_dominates_chain = false;
    bool chain_dominates_bound = false;
    bool claim_holds = false;     // A(M) >= p^{n(n+1)/2+1-r'} A(M-1) for M=1..L
};

MomentLowerBoundReport moment_lowerbound(u64 p, int n, int L, double rprime);
// Shares the exponential-sum tables across exponents.
std::vector<MomentLowerBoundReport> moment_lowerbound(u64 p, int n, int L,
                                                      std::span<const double> rprimes);

// Rayleigh-quotient estimate of the (2,2) restriction norm via power
// iteration on the composition extend(restrict(.)); reported as a lower
// bound. The exact value is N^{(n-d)/2} for an injective graph.
double restriction_operator_norm_22(const Surface& surface, const RingContext& ctx,
                                    int iterations = 40, u64 seed = 2);

cd group_inner(const GroupFunction& a, const GroupFunction& b);
cd dual_inner(const GroupFunction& a, const GroupFunction& b);

}  // namespace modn
