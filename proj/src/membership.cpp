#include "cobweb/membership.hpp"

#include <cmath>
#include <stdexcept>

namespace cobweb {

std::string_view to_string(MembershipKind k) {
    return k == MembershipKind::Rectangular ? "rect" : "fuzzy";
}

double gaussian_membership(double a, double center, double sigma) {
    if (!std::isfinite(a) || !std::isfinite(center))
        throw std::invalid_argument("gaussian_membership: non-finite input");
    if (!(sigma > 0.0) || !std::isfinite(sigma))
        throw std::invalid_argument("gaussian_membership: sigma must be positive and finite");
    const double z = (a - center) / sigma;
    return std::exp(-0.5 * z * z);
}

std::size_t rectangular_node(double a, const Grid& g) {
    if (g.centers.empty()) throw std::invalid_argument("rectangular_node: empty grid");
    if (!std::isfinite(a)) throw std::invalid_argument("rectangular_node: non-finite value");
    if (g.degenerate) return 0;
    const double w = g.cell_width();
    const double raw = std::floor((a - g.lo) / w);
    if (raw < 0.0) return 0;
    const std::size_t last = g.centers.size() - 1;
    if (raw > static_cast<double>(last)) return last;
    return static_cast<std::size_t>(raw);
}

std::vector<double> membership_vector(double a, const Grid& g, MembershipKind kind) {
    std::vector<double> out(g.centers.size(), 0.0);
    accumulate_membership(a, g, kind, out);
    return out;
}

void accumulate_membership(double a, const Grid& g, MembershipKind kind, std::span<double> acc) {
    if (acc.size() != g.centers.size())
        throw std::invalid_argument("accumulate_membership: accumulator size mismatch");
    if (kind == MembershipKind::Rectangular) {
        acc[rectangular_node(a, g)] += 1.0;
        return;
    }
    for (std::size_t i = 0; i < g.centers.size(); ++i)
        acc[i] += gaussian_membership(a, g.centers[i], g.sigma);
}

}  // namespace cobweb
