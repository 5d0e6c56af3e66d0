#pragma once

#include <span>
#include <string>
#include <vector>

#include "cobweb/concept.hpp"
#include "cobweb/core.hpp"
#include "cobweb/membership.hpp"

namespace cobweb {

// One row of a category-utility report: the three probability-role factors
// and their product for cluster k, attribute j, and one attribute value
// (a declared label, or a grid node rendered through fmt_double).
struct UtilityTerm {
    std::size_t cluster = 0;
    std::string cluster_label;
    std::size_t attribute = 0;
    std::string attribute_name;
    std::string value;
    double weight = 0.0;          // share of the value in the whole universe
    double predictability = 0.0;  // share of the value within the cluster
    double predictiveness = 0.0;  // share of the cluster within the value
    double product = 0.0;         // weight * predictability * predictiveness
};

// Full per-term decomposition of a category-utility evaluation.
struct UtilityReport {
    double total = 0.0;
    std::vector<UtilityTerm> terms;

    // Tab-separated table with columns cluster, attribute, value, weight,
    // predictability, predictiveness, term, followed by a total row.
    std::string to_table() const;
};

// Which attributes an evaluation covers.
enum class AttrFilter { All, NominalOnly, NumericOnly };

// Core evaluator over cluster statistics. For nominal attributes the factors
// are the classical occurrence shares; for numeric attributes they are the
// graded analogues computed from per-node membership mass, with the value
// column denominator taken as the sum of cluster masses so the cluster
// shares of one value sum to exactly 1 (and are defined as 0 when the value
// carries no mass at all). The membership kind is already baked into the
// cached masses, so it is not a parameter here. Requires at least one
// cluster, every cluster non-empty, and a grid for every covered numeric
// attribute.
UtilityReport evaluate_cu(const Schema& schema, std::span<const ConceptStats* const> clusters,
                          const GridSet& grids, AttrFilter filter = AttrFilter::All);

// Builds one cluster's statistics from dataset rows (ids into dataset.instances).
ConceptStats cluster_stats(const Dataset& data, std::span<const std::size_t> ids,
                           const GridSet& grids, MembershipKind kind);

// Grids over the observed range of every numeric attribute of a dataset.
GridSet dataset_grids(const Dataset& data, std::size_t grid_size, SigmaPolicy sigma,
                      bool literal_centers = false);

// Classical category utility over an all-nominal dataset. Throws
// std::invalid_argument (NonNominalAttribute) if any attribute is numeric,
// and rejects invalid partitions or out-of-range ids.
UtilityReport nominal_cu(const Dataset& data, const Partition& p);

// Graded category utility over the numeric attributes only (nominal
// attributes are ignored). Every numeric attribute must carry a grid.
UtilityReport fuzzy_cu(const Dataset& data, const Partition& p, const GridSet& grids,
                       MembershipKind kind);

// Combined evaluator: classical terms for nominal attributes plus graded
// terms for numeric attributes, in one report.
UtilityReport mixed_cu(const Dataset& data, const Partition& p, const GridSet& grids,
                       MembershipKind kind);

// Standalone graded factors for one grid node, computed directly from raw
// values (no caching); used for spot checks and tests.
//
// Mean membership of the node over the cluster's values.
double fuzzy_predictability(std::span<const double> cluster_values, const Grid& g,
                            std::size_t node, MembershipKind kind);
// Cluster's share of the node's total mass over the universe; 0 when the
// universe mass is zero.
double fuzzy_predictiveness(std::span<const double> cluster_values,
                            std::span<const double> universe_values, const Grid& g,
                            std::size_t node, MembershipKind kind);
// Mean membership of the node over the whole universe.
double fuzzy_weight(std::span<const double> universe_values, const Grid& g, std::size_t node,
                    MembershipKind kind);

}  // namespace cobweb
