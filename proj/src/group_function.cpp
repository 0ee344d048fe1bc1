#include "modn/group_function.hpp"

#include <cmath>
#include <stdexcept>

namespace modn {

double GroupFunction::point_mass() const {
    if (side_ == Side::Group) return 1.0;
    double w = 1.0;
    for (int i = 0; i < dim_; ++i) w /= static_cast<double>(N_);
    return w;
}

double GroupFunction::sup_norm() const {
    double m = 0;
    for (const cd& v : values_) m = std::max(m, std::abs(v));
    return m;
}

double GroupFunction::lp_norm(double r) const {
    if (std::isinf(r)) return sup_norm();
    if (r < 1.0) throw std::invalid_argument("lp_norm: r must be >= 1");
    double sum = 0;
    for (const cd& v : values_) sum += std::pow(std::abs(v), r);
    return std::pow(point_mass() * sum, 1.0 / r);
}

double max_abs_difference(const GroupFunction& a, const GroupFunction& b) {
    if (a.size() != b.size()) throw std::invalid_argument("max_abs_difference: shape mismatch");
    double m = 0;
    for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace modn
