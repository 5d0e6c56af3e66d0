#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cobweb/core.hpp"

namespace cobweb {

// How a numeric value relates to grid nodes: a hard indicator over cells
// (rectangular) or a graded Gaussian kernel response (fuzzy).
enum class MembershipKind { Rectangular, Gaussian };

std::string_view to_string(MembershipKind k);

// Gaussian kernel response of node center `center` (width sigma > 0) to
// value `a`: exp(-(a - center)^2 / (2 sigma^2)). Symmetric in a/center,
// 1 at a == center, strictly positive. Throws std::invalid_argument on
// non-finite inputs or sigma <= 0.
double gaussian_membership(double a, double center, double sigma);

// Index of the half-open cell [center - w/2, center + w/2) containing `a`,
// i.e. floor((a - lo) / w), clamped to [0, d-1] so out-of-range values
// belong to the nearest edge cell. A degenerate grid maps everything to 0.
std::size_t rectangular_node(double a, const Grid& g);

// Membership of `a` in every node of `g` under `kind`. Rectangular yields
// a one-hot indicator; Gaussian yields graded responses in (0, 1].
std::vector<double> membership_vector(double a, const Grid& g, MembershipKind kind);

// Adds membership_vector(a, g, kind) into `acc` (size must equal g.size()).
// This is the single accumulation path used by all cached statistics.
void accumulate_membership(double a, const Grid& g, MembershipKind kind, std::span<double> acc);

}  // namespace cobweb
