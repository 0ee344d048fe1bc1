#pragma once

#include "modn/extension.hpp"

namespace modn {

// Index (theta, v) of a wave packet at scale d | N in parameter dimension
// n-1: theta is the coset omega_theta + B_{d'} (d' = N/d) with its unique
// representative in Lambda(N;d')^{n-1}, v ranges over Lambda(N;d)^{n-1}.
struct PacketIndex {
    u64 N = 0;
    u64 d = 0;
    int n = 0;                      // ambient dimension; packets live in n-1
    std::vector<u64> omega_theta;   // representative, entries in [0, d)
    std::vector<u64> v;             // entries in [0, N/d)

    u64 dprime() const { return N / d; }
};

std::vector<std::vector<u64>> theta_representatives(const RingContext& ctx, u64 d, int n);

// psi_{theta,v}(w) = d^{n-1} e^{-2 pi i v.w/N} chi_theta(w) on the dual
// parameter space.
GroupFunction packet(const PacketIndex& idx, const RingContext& ctx);

// Wave packet coefficients {(theta, v) -> (chi_theta H)ˇ(v)}; reconstruction
// sums coeff * psi back to H.
struct PacketDecomposition {
    u64 d = 0;
    std::vector<std::vector<u64>> thetas;  // representatives
    std::vector<std::vector<cd>> coeffs;   // [theta][flat(v)] with radix N/d
};

PacketDecomposition decompose(const GroupFunction& H, u64 d, const RingContext& ctx);
GroupFunction reconstruct(const PacketDecomposition& dec, const RingContext& ctx, int n);

// d-tube attached to (theta, v) and the surface polynomial h:
// membership ||x' + x_n grad h(omega_theta) - v|| <= d.
struct Tube {
    u64 N = 0;
    u64 d = 0;
    int n = 0;
    std::vector<u64> gradient;  // grad h(omega_theta) mod N
    std::vector<u64> v;

    bool contains(std::span<const u64> x, const RingContext& ctx) const;
    u64 cardinality_brute(const RingContext& ctx) const;
};

Tube packet_tube(const PacketIndex& idx, const Poly& h, const RingContext& ctx);

// E psi_{theta,v}(x) = e^{2 pi i (phi(x;omega_theta) - v.omega_theta)/N} chi_T(x),
// valid when d | N and N | d^2. Returns the predicted table and the max
// pointwise deviation from the actual extension.
struct PacketImageReport {
    Tube tube;
    GroupFunction predicted;
    double max_error = 0;
    u64 tube_cardinality = 0;
};

PacketImageReport packet_extension_image(const PacketIndex& idx, const Poly& h,
                                         const RingContext& ctx);

// Random-sign Kakeya-maximal experiment at N = d^2: H = sum of signed
// packets, expectation of |E H| against the square-function lower bound.
struct KhintchineReport {
    u64 d = 0;
    size_t packet_count = 0;
    bool exhaustive = false;
    u64 trials = 0;
    double closed_form_norm = 0;    // d^{(n+1)(n-1)/2n} |Theta~|^{(n-1)/2n}
    double measured_norm = 0;       // direct l^{2n/(n-1)} dual norm of H
    double min_slack = 0;           // min over x of E|EH(x)| - 2^{-1/2} sqrt(sum chi_T)
    bool bound_holds = false;
};

KhintchineReport khintchine_experiment(u64 d, const RingContext& ctx, int n,
                                       std::span<const std::vector<u64>> thetas,
                                       std::span<const std::vector<u64>> vs,
                                       const Poly& h, u64 seed, u64 monte_carlo_trials = 4096);

}  // namespace modn
