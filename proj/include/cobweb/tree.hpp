#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "cobweb/concept.hpp"
#include "cobweb/core.hpp"
#include "cobweb/membership.hpp"
#include "cobweb/utility.hpp"

namespace cobweb {

// The four restructuring moves considered when an instance passes through
// an internal node, in canonical evaluation (and tie-break) order.
enum class MoveKind { InsertIntoBest, CreateNewCategory, MergeBestPair, SplitBest };

std::string_view to_string(MoveKind k);

// One scored candidate move. `score` is the move-comparison score: the raw
// partition utility minus the single-cluster baseline utility of the same
// instances, divided by the number of resulting clusters. Utilities reported
// elsewhere are never normalized this way; the correction is applied only
// when ranking moves, where the raw total is monotone under refinement and
// would otherwise always favor creating singletons.
struct MoveScore {
    MoveKind kind = MoveKind::InsertIntoBest;
    double score = 0.0;
    std::uint64_t node_a = 0;  // insert target / merge first / split host
    std::uint64_t node_b = 0;  // merge second / split descend target
};

// How often each restructuring move has been applied at internal nodes,
// totalled over every insert and descent level. Leaf handling (absorbing a
// duplicate or growing the first sibling pair) is not a scored move and is
// not counted.
struct MoveCounts {
    std::uint64_t insert = 0;
    std::uint64_t create = 0;
    std::uint64_t merge = 0;
    std::uint64_t split = 0;
};

struct TreeConfig {
    MembershipKind membership = MembershipKind::Gaussian;
    std::size_t grid_size = 4;
    SigmaPolicy sigma = SigmaPolicy::cell_width();
    bool literal_centers = false;
    // Optional fixed (lo, hi) grid bounds per attribute; numeric attributes
    // with fixed bounds never trigger grid rebuilds on out-of-range values.
    std::vector<std::optional<std::pair<double, double>>> fixed_bounds;
    // When set, every insert re-derives cached statistics and candidate
    // scores from raw values and checks the tree invariants.
    bool audit = false;
};

// Incremental concept hierarchy. Instances stream in one at a time; each
// insert descends from the root, choosing at every internal node among
// inserting into the best child, creating a new child, merging the two best
// hosts, or splitting the best host, and continues the descent into the
// chosen (possibly restructured) host. All statistics are maintained
// incrementally; numeric grids are rebuilt (and caches recomputed) whenever
// an observed value falls outside the current range.
class Hierarchy {
public:
    Hierarchy(Schema schema, TreeConfig cfg);

    // Validates the instance (throws std::invalid_argument) and adds it.
    // The instance id is its arrival index.
    void insert(Instance inst);

    // Root-to-leaf path of node ids for an instance, without mutating the
    // tree: at each internal node the descent follows the child whose
    // insertion score is highest. `max_depth` limits the number of edges
    // walked. Requires a non-empty hierarchy. Safe to call concurrently.
    std::vector<std::uint64_t> classify(const Instance& inst,
                                        std::optional<std::size_t> max_depth = {}) const;

    // Scores every feasible move for placing `inst` under `node` (which must
    // belong to this hierarchy and must not yet contain the instance).
    // Returns the candidates in canonical order: best insertion, second-best
    // insertion, create, merge (3+ children), split (best host internal).
    // Returns an empty list for leaves.
    std::vector<MoveScore> score_moves(const ConceptNode& node, const Instance& inst) const;

    bool empty() const { return root_ == nullptr; }
    std::size_t size() const { return instances_.size(); }
    const ConceptNode& root() const;
    const Schema& schema() const { return schema_; }
    const TreeConfig& config() const { return cfg_; }
    const GridSet& grids() const { return grids_; }
    const std::vector<Instance>& instances() const { return instances_; }
    // Instance ids in arrival order; replaying them over instances()
    // reconstructs an identical tree.
    const std::vector<std::size_t>& insertion_log() const { return log_; }
    const MoveCounts& move_counts() const { return moves_; }

    // Top-level clustering: one cluster of instance ids per root child
    // (members sorted ascending), or a single cluster when the root is a
    // leaf. Cluster order follows child order.
    Partition root_partition() const;

    // Raw (unnormalized) utility report of the root partition, evaluated
    // from the cached per-node statistics.
    UtilityReport root_utility() const;

    std::size_t node_count() const;
    std::size_t leaf_count() const;

    // Order-sensitive hash of the tree shape, node sizes and leaf members.
    std::uint64_t structure_hash() const;

    // Verifies structural invariants and cache consistency everywhere:
    // member/count agreement, internal nodes with >= 2 children, children
    // partitioning their parent, leaves holding exact duplicates, root
    // covering every instance, cached masses within 1e-9 of a fresh
    // recomputation. Throws std::logic_error on the first violation.
    void audit() const;

private:
    friend struct SnapshotAccess;

    std::unique_ptr<ConceptNode> make_leaf(const Instance& inst, std::size_t id);
    void refresh_grids(const Instance& inst);
    void descend(ConceptNode& node, const Instance& inst, std::size_t id);
    std::vector<MoveScore> score_moves_impl(const ConceptNode& node, const Instance& inst,
                                            bool node_includes_inst) const;
    const ConceptNode* best_child(const ConceptNode& node, const Instance& inst) const;
    bool duplicate_of(const ConceptNode& leaf, const Instance& inst) const;
    void audit_node(const ConceptNode& node, std::vector<std::size_t>& seen) const;
    void audit_moves(const ConceptNode& node, const Instance& inst,
                     const std::vector<MoveScore>& cached) const;

    Schema schema_;
    TreeConfig cfg_;
    GridSet grids_;
    std::vector<std::optional<std::pair<double, double>>> ranges_;
    std::unique_ptr<ConceptNode> root_;
    std::vector<Instance> instances_;
    std::vector<std::size_t> log_;
    MoveCounts moves_;
    std::uint64_t next_node_id_ = 1;
};

}  // namespace cobweb
