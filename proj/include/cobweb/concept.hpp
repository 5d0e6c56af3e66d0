#pragma once

#include <cstdint>
#include <memory>
#include <variant>
#include <vector>

#include "cobweb/core.hpp"
#include "cobweb/membership.hpp"

namespace cobweb {

// Per-value occurrence counts for one nominal attribute, indexed by the
// position of the value in the schema's declared set.
struct NominalStats {
    std::vector<std::int64_t> counts;
};

// Raw member values plus the cached per-grid-node membership mass
// (sum of each node's responses over the members) for one numeric attribute.
struct NumericStats {
    std::vector<double> raw;        // member values in arrival order
    std::vector<double> node_mass;  // cached mass per grid node
};

using AttrStats = std::variant<NominalStats, NumericStats>;

// Sufficient statistics of one concept (cluster): member count plus one
// AttrStats per schema attribute. The numeric caches are kept consistent
// with `raw` under the active grids; rebuild_mass restores them after a
// grid change.
struct ConceptStats {
    std::size_t count = 0;
    std::vector<AttrStats> attrs;

    static ConceptStats empty(const Schema& schema, const GridSet& grids);

    // Folds one admissible instance into the statistics.
    void add(const Schema& schema, const GridSet& grids, MembershipKind kind,
             const Instance& inst);

    // Element-wise union with another concept's statistics (same schema/grids).
    void merge(const ConceptStats& other);

    // Recomputes every numeric node_mass from raw under `grids`.
    void rebuild_mass(const Schema& schema, const GridSet& grids, MembershipKind kind);

    // Largest absolute difference between the cached masses and a fresh
    // recomputation from raw values; 0 for purely nominal schemas.
    double mass_drift(const Schema& schema, const GridSet& grids, MembershipKind kind) const;
};

// A node of the concept hierarchy: either a leaf covering duplicates of one
// observation or an internal category with at least two children.
struct ConceptNode {
    std::uint64_t id = 0;
    std::vector<std::size_t> members;  // instance ids in arrival order
    ConceptStats stats;
    std::vector<std::unique_ptr<ConceptNode>> children;

    bool leaf() const { return children.empty(); }
    std::size_t count() const { return stats.count; }
};

}  // namespace cobweb
