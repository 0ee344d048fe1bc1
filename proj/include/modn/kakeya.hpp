#pragma once

#include <optional>

#include "modn/ring.hpp"

namespace modn {

// A point of P^{n-1}(N): the lexicographically smallest representative of a
// unit-orbit in S^{n-1}(N).
struct Direction {
    std::vector<u64> rep;
};

bool has_invertible_coordinate(std::span<const u64> w, const RingContext& ctx);
std::vector<u64> canonical_direction(std::span<const u64> w, const RingContext& ctx);

struct DirectionCensus {
    std::vector<Direction> directions;
    u64 unit_count = 0;       // |S^0(N)|
    u64 sphere_count = 0;     // |S^{n-1}(N)|
    u64 unit_formula = 0;     // N prod (1 - 1/p)
    u64 projective_formula = 0;  // N^{n-1} prod sum_j p^{-j}
};

DirectionCensus enumerate_directions(const RingContext& ctx, int n);

// angle(w, w') = max over 2x2 minors of |det|; representative independent.
u64 angle(std::span<const u64> w, std::span<const u64> wp, const RingContext& ctx);
// Alternative form: min over representative pairs of max_j |w_j - w'_j|.
u64 angle_minmax_form(std::span<const u64> w, std::span<const u64> wp, const RingContext& ctx);

// A line {t w + v} stored with canonical base point (lexicographically
// smallest point on the line) so equality is structural.
struct Line {
    std::vector<u64> dir;   // canonical direction representative
    std::vector<u64> base;  // canonical base point

    std::vector<u64> point(u64 t, u64 N) const;
    bool operator==(const Line& other) const { return dir == other.dir && base == other.base; }
};

Line make_line(std::span<const u64> dir, std::span<const u64> base, const RingContext& ctx);
bool line_contains(const Line& line, std::span<const u64> x, const RingContext& ctx);

struct IntersectionReport {
    u64 count = 0;
    u64 angle = 0;
    u64 bound = 0;  // N / angle
    bool within_bound = true;
};

IntersectionReport line_intersection_count(const Line& a, const Line& b, const RingContext& ctx);

// || sum chi_l ||_q against (sum |l|)^{(n-1)/n}; disjoint families meet with
// equality at q = n/(n-1).
struct MaximalReport {
    double lhs = 0;
    double rhs = 0;
    double q = 0;
};

MaximalReport maximal_functional(std::span<const Line> lines, double q, const RingContext& ctx, int n);

struct CordobaReport {
    u64 l2_squared = 0;  // sum over pairs of |l ∩ l'| (exact integer)
    std::vector<std::pair<u64, u64>> angle_class_max;  // (d, max count of w' at angle d from some w)
    u64 line_count = 0;
    u64 pair_bound = 0;  // |P|(|P| + p - 1) for prime N concurrent families
};

CordobaReport cordoba_l2(std::span<const Line> lines, const RingContext& ctx, int n);

// Digit-twisted Kakeya construction over Z/p^alpha Z with alpha = s p^s:
// phi_w(t) = t w + sum_j floor(j/s) w_j p^j. Per-slice image counts stay
// below p^{alpha-s}, giving density |K|/p^{2 alpha} <= p^{-s}.
struct SawyerReport {
    u64 p = 0;
    u64 s = 0;
    u64 alpha = 0;
    u64 modulus = 0;           // p^alpha
    u64 max_slice_image = 0;
    u64 slice_bound = 0;       // p^{alpha - s}
    u64 set_size = 0;          // |K_s|
    double density = 0;        // |K_s| / p^{2 alpha}
    double density_bound = 0;  // p^{-s}
    bool pass = false;
};

SawyerReport sawyer_construct(u64 p, u64 s, bool verify_line_membership = false);

// The union of the Sawyer set with its coordinate swap (the "rotated copy")
// as a membership table over [Z/p^alpha Z]^2.
std::vector<char> sawyer_completed_set(u64 p, u64 s);

// Lines sharing two points at full separation coincide.
struct SeparatedPointsReport {
    u64 pairs_checked = 0;
    u64 counterexamples = 0;
};

SeparatedPointsReport separated_points_check(const RingContext& ctx, int n, u64 sample_budget,
                                             u64 seed);

// Membership table over [Z/NZ]^n.
struct PointSet {
    u64 N = 0;
    int n = 0;
    std::vector<char> member;  // size N^n

    bool contains(std::span<const u64> x) const { return member[encode_point(x, N)] != 0; }
};

struct KakeyaCheck {
    bool is_kakeya = false;
    std::vector<Line> witnesses;                  // one per direction when true
    std::optional<Direction> failing_direction;   // first direction with no line
};

KakeyaCheck is_kakeya(const PointSet& K, const RingContext& ctx);

}  // namespace modn
