#pragma once

#include <optional>

#include "modn/extension.hpp"
#include "modn/fourier.hpp"
#include "modn/rational.hpp"

namespace modn {

// Finite representation of f in S(Q_p^n; k, l): supported on B_{p^l}(0),
// constant on cosets of B_{p^{-k}}(0). The table runs over [Z/p^{k+l}Z]^n
// with values[y] = f(p^{-l} y~) for any lift y~ of y; the class is lossless
// on this grid.
struct TruncatedFunction {
    u64 p = 2;
    int k = 0;
    int l = 0;
    int n = 1;
    std::vector<cd> values;

    u64 grid_modulus() const { return pow_u64(p, static_cast<unsigned>(k + l)); }
    u64 grid_size() const;
    static TruncatedFunction zero(u64 p, int k, int l, int n);
    static TruncatedFunction random(u64 p, int k, int l, int n, u64 seed);
    static TruncatedFunction indicator_unit_ball(u64 p, int k, int l, int n);

    // L^r norm under Haar measure (cells carry mass p^{-kn}); r = inf -> sup.
    double haar_lr_norm(double r) const;
};

// {x}_p of the rational m / p^j, via canonical digit extraction; returns the
// numerator of the fractional part over denominator p^j.
u64 padic_fractional_numerator(u64 m, int j, u64 p);

// F_{k,l}[f](x) = p^{-kn} f(p^{-l} y): group-side function on [Z/p^{k+l}]^n.
GroupFunction lift_down_F(const TruncatedFunction& f);
TruncatedFunction lift_up_F(const GroupFunction& F, u64 p, int k, int l);

// Fhat_{l,k}[g](xi) = g(p^{-k} eta): dual-side function, no amplitude change.
GroupFunction lift_down_Fhat(const TruncatedFunction& g);
TruncatedFunction lift_up_Fhat(const GroupFunction& G, u64 p, int k, int l);

// Continuous Fourier transform on the truncation grid, carried out with the
// fractional-part character: maps S(p; k, l) to S(p; l, k).
TruncatedFunction padic_fourier(const TruncatedFunction& f);

struct NormIdentityReport {
    double r = 0;
    // a) ||F_{k,l}[f]||_{l^r (counting)} = p^{-kn/r'} ||f||_{L^r}
    double lhs_a = 0, rhs_a = 0;
    // b) as printed: ||Fhat_{l,k}[g]||_{l^r (counting)} = p^{ln/r} ||g||_{L^r};
    // under the normalized dual convention the factor reads p^{-kn/r}.
    double lhs_b_counting = 0, rhs_b_counting = 0;
    double lhs_b_normalized = 0, rhs_b_normalized = 0;
    bool pass = false;
};

NormIdentityReport verify_norm_identities(const TruncatedFunction& f, double r);
// Shares one transform across several exponents.
std::vector<NormIdentityReport> verify_norm_identities(const TruncatedFunction& f,
                                                       std::span<const double> rs);

struct CommutationReport {
    double max_error = 0;  // dft(F[f]) vs Fhat[padic_fourier(f)]
    bool pass = false;
};

CommutationReport verify_ft_commutation(const TruncatedFunction& f);

// E given by level-alpha cells: Haar measure of its p^{-alpha}-neighborhood
// equals |pi_alpha(E)| / p^{alpha n}, exactly.
struct SetCorrespondenceReport {
    Rational neighborhood_measure;
    Rational quotient_density;
    u64 cell_count = 0;
    bool equal = false;
    double indicator_error = 0;  // Fhat_{alpha,0}[chi_N(E)] vs chi_{pi(E)}
};

SetCorrespondenceReport set_correspondence(std::span<const u64> cells, u64 p, int alpha, int n);

struct QuotientRestrictionReport {
    u64 p = 0;
    int k = 0, l = 0, n = 0;
    bool dilation_bijects = false;      // delta_k : pi_l(Sigma) -> pi_{k+l}(p^k Sigma)
    double fold_identity_error = 0;     // Fhat(delta_k xi) vs (F_l)hat(xi)
    double average_identity_error = 0;  // rescaled average = folded average
    double holder_min_slack = 0;        // p^{kn/r'} ||F||_r - ||F_l||_r >= 0
    double neighborhood_error = 0;      // continuous averaged norm vs quotient value
    bool pass = false;
};

QuotientRestrictionReport quotient_restriction_equivalence(u64 p, int k, int l,
                                                           const Surface& surface, double r,
                                                           double s, int batch, u64 seed);

}  // namespace modn
