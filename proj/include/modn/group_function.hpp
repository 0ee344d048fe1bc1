#pragma once

#include <limits>
#include <random>
#include <span>
#include <vector>

#include "modn/ring.hpp"

namespace modn {

// Measure convention attached to a function table: counting measure on the
// group side, normalized counting measure on the dual side. The flag decides
// every l^r normalization below.
enum class Side { Group, Dual };

class GroupFunction {
public:
    GroupFunction(u64 N, int dim, Side side)
        : N_(N), dim_(dim), side_(side) {
        u64 total = 1;
        for (int i = 0; i < dim; ++i) {
            total *= N;
            check_cap(total, "GroupFunction");
        }
        values_.assign(static_cast<size_t>(total), cd{0.0, 0.0});
    }

    static GroupFunction delta(u64 N, int dim, Side side) {
        GroupFunction f(N, dim, side);
        f.values_[0] = 1.0;
        return f;
    }
    static GroupFunction constant(u64 N, int dim, Side side, cd value = 1.0) {
        GroupFunction f(N, dim, side);
        for (auto& v : f.values_) v = value;
        return f;
    }
    static GroupFunction random(u64 N, int dim, Side side, u64 seed) {
        GroupFunction f(N, dim, side);
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> uni(-1.0, 1.0);
        for (auto& v : f.values_) v = cd{uni(rng), uni(rng)};
        return f;
    }

    u64 modulus() const { return N_; }
    int dim() const { return dim_; }
    Side side() const { return side_; }
    size_t size() const { return values_.size(); }

    cd& operator[](size_t flat) { return values_[flat]; }
    const cd& operator[](size_t flat) const { return values_[flat]; }
    cd& at(std::span<const u64> x) { return values_[encode_point(x, N_)]; }
    const cd& at(std::span<const u64> x) const { return values_[encode_point(x, N_)]; }

    std::vector<cd>& values() { return values_; }
    const std::vector<cd>& values() const { return values_; }

    // l^r norm under the side's measure; r = infinity gives the sup norm.
    double lp_norm(double r) const;
    double sup_norm() const;

    // Measure weight of a single point (1 on the group, N^-dim on the dual).
    double point_mass() const;

    GroupFunction with_side(Side s) const {
        GroupFunction g = *this;
        g.side_ = s;
        return g;
    }

private:
    u64 N_;
    int dim_;
    Side side_;
    std::vector<cd> values_;
};

double max_abs_difference(const GroupFunction& a, const GroupFunction& b);

inline constexpr double kInfExponent = std::numeric_limits<double>::infinity();

}  // namespace modn
