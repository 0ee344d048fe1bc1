#pragma once

#include <optional>

#include "modn/fourier.hpp"
#include "modn/surface.hpp"

namespace modn {

// ---- Gauss sums -----------------------------------------------------------

// G_N(a,b) = (1/N) sum_t e^{2 pi i (a t + b t^2)/N}
struct GaussSumValue {
    cd value;
    // Exact-form magnitude, asserted only for odd N: zero unless gcd(b,N) | a,
    // otherwise sqrt(gcd(b,N)/N).
    std::optional<double> closed_form_magnitude;
};

GaussSumValue gauss_sum(u64 a, u64 b, const RingContext& ctx);
double gauss_closed_form_magnitude(u64 a, u64 b, u64 N);

// All G_N(a,b) at once; entry [a + b*N]. One length-N transform per b.
std::vector<cd> gauss_table(const RingContext& ctx);

// ---- Exponential sums over polynomial graphs ------------------------------

// table[x] = sum_w weights[flat(w)] e^{+2 pi i x . Gamma(w) / N} over all
// x in [Z/NZ]^n. This is the engine behind the extension operator and every
// surface-measure transform; the inner loop is the gather kernel.
GroupFunction weighted_graph_sum(const Surface& surface, const RingContext& ctx,
                                 std::span<const cd> weights);

// Fourier transform of the normalized counting measure on the surface:
// mu_check(x) = N^{-d} sum_w e^{+2 pi i x . Gamma(w)/N}; mu_check(0) = 1.
GroupFunction surface_measure_ft(const Surface& surface, const RingContext& ctx);

// ---- Decay checks ----------------------------------------------------------

struct DecayReport {
    double worst_ratio = 0;     // max over x != 0 classes of |mu_check(x)| * ||x||^exponent
    u64 worst_flat = 0;         // attaining point (flat index)
    double bound = 0;           // the constant tested against
    bool pass = true;
    u64 violations = 0;
};

// Moment curve: |mu_check(x)| <= B ||x||^{-1/n}.
DecayReport check_hua_decay(int n, const RingContext& ctx, double B);

// Paraboloid: |E1(x)| <= ||x||^{-(n-1)/2} for odd N, using the Gauss-product
// factorization of E1 (itself verified against the direct sum elsewhere).
DecayReport check_parabola_decay(int n, const RingContext& ctx);

// ---- Littlewood-Paley multiplier -------------------------------------------

struct ConditionFRow {
    u64 e;                    // dual-scale threshold: admissible xi have gcd(xi,N) < e
    double max_abs = 0;       // max |phi_hat_rho(xi)| over admissible xi
    u64 argmax_flat = 0;
    double scale_power = 0;   // e^n, the allowed growth factor
    double required_constant = 0;  // max_abs / e^n
    bool pass = true;         // max_abs <= tau(N) * e^n
};

struct ConditionFReport {
    double rho;
    u64 ball_size = 0;        // |B_rho(0)| = phi_hat(0)
    std::vector<ConditionFRow> rows;
    bool pass = true;
};

// phi_rho = chi_{B_rho(0)} in [Z/NZ]^n; computes phi_hat by summation over
// ball members and checks |phi_hat(xi)| <= tau(N) e^n off the dual balls.
ConditionFReport ball_multiplier_condition_f(double rho, const RingContext& ctx, int n);

// Full table of phi_hat_rho (dual side) for small N.
GroupFunction ball_multiplier_ft(double rho, const RingContext& ctx, int n);

// ---- Partial exponential sums over exact-gcd shells ------------------------

// S_{N,d}(xi) = sum over x with gcd(x_1,...,x_n,N) = d of e^{2 pi i xi.x/N}
cd partial_sum_SNd(std::span<const u64> xi, u64 d, const RingContext& ctx, int n);

// I(m, p^L) = #{x in [Z/p^L]^m : gcd(x_1,...,x_m,p) = 1} = p^{Lm}(1-p^{-m})
u64 coprime_tuple_count_formula(int m, u64 p, int L);
u64 coprime_tuple_count_brute(int m, u64 p, int L);

}  // namespace modn
