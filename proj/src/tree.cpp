#include "cobweb/tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace cobweb {

std::string_view to_string(MoveKind k) {
    switch (k) {
        case MoveKind::InsertIntoBest: return "insert";
        case MoveKind::CreateNewCategory: return "create";
        case MoveKind::MergeBestPair: return "merge";
        case MoveKind::SplitBest: return "split";
    }
    return "unknown";
}

namespace {

bool equal_values(const Instance& a, const Instance& b) {
    if (a.values.size() != b.values.size()) return false;
    for (std::size_t j = 0; j < a.values.size(); ++j) {
        if (a.values[j].index() != b.values[j].index()) return false;
        if (is_number(a.values[j])) {
            if (as_number(a.values[j]) != as_number(b.values[j])) return false;
        } else if (as_label(a.values[j]) != as_label(b.values[j])) {
            return false;
        }
    }
    return true;
}

void rebuild_subtree_mass(ConceptNode& node, const Schema& schema, const GridSet& grids,
                          MembershipKind kind) {
    node.stats.rebuild_mass(schema, grids, kind);
    for (auto& ch : node.children) rebuild_subtree_mass(*ch, schema, grids, kind);
}

}  // namespace

Hierarchy::Hierarchy(Schema schema, TreeConfig cfg)
    : schema_(std::move(schema)), cfg_(std::move(cfg)) {
    if (schema_.arity() == 0) throw std::invalid_argument("Hierarchy: schema has no attributes");
    if (cfg_.grid_size == 0) throw std::invalid_argument("Hierarchy: grid size must be >= 1");
    if (cfg_.fixed_bounds.size() > schema_.arity())
        throw std::invalid_argument("Hierarchy: more fixed bounds than attributes");
    cfg_.fixed_bounds.resize(schema_.arity());
    grids_.per_attribute.resize(schema_.arity());
    ranges_.resize(schema_.arity());
    for (std::size_t j = 0; j < schema_.arity(); ++j) {
        const auto& decl = schema_.attribute(j);
        if (decl.kind != AttrKind::Numeric) {
            if (cfg_.fixed_bounds[j])
                throw std::invalid_argument("Hierarchy: fixed bounds given for nominal attribute '" +
                                            decl.name + "'");
            continue;
        }
        if (cfg_.fixed_bounds[j]) {
            const auto [lo, hi] = *cfg_.fixed_bounds[j];
            grids_.per_attribute[j] =
                build_grid_bounds(lo, hi, cfg_.grid_size, cfg_.sigma, cfg_.literal_centers);
        }
    }
}

const ConceptNode& Hierarchy::root() const {
    if (!root_) throw std::logic_error("Hierarchy: empty hierarchy has no root");
    return *root_;
}

std::unique_ptr<ConceptNode> Hierarchy::make_leaf(const Instance& inst, std::size_t id) {
    auto node = std::make_unique<ConceptNode>();
    node->id = next_node_id_++;
    node->members.push_back(id);
    node->stats = ConceptStats::empty(schema_, grids_);
    node->stats.add(schema_, grids_, cfg_.membership, inst);
    return node;
}

void Hierarchy::refresh_grids(const Instance& inst) {
    bool rebuilt = false;
    for (std::size_t j = 0; j < schema_.arity(); ++j) {
        if (schema_.attribute(j).kind != AttrKind::Numeric || cfg_.fixed_bounds[j]) continue;
        const double v = as_number(inst.values[j]);
        auto& range = ranges_[j];
        if (range && v >= range->first && v <= range->second) continue;
        if (!range)
            range = {v, v};
        else
            range = {std::min(range->first, v), std::max(range->second, v)};
        grids_.per_attribute[j] = build_grid_bounds(range->first, range->second, cfg_.grid_size,
                                                    cfg_.sigma, cfg_.literal_centers);
        rebuilt = true;
    }
    if (rebuilt && root_) rebuild_subtree_mass(*root_, schema_, grids_, cfg_.membership);
}

void Hierarchy::insert(Instance inst) {
    require_valid(schema_, inst);
    refresh_grids(inst);
    const std::size_t id = instances_.size();
    instances_.push_back(std::move(inst));
    log_.push_back(id);
    const Instance& x = instances_.back();
    if (!root_)
        root_ = make_leaf(x, id);
    else
        descend(*root_, x, id);
    if (cfg_.audit) audit();
}

bool Hierarchy::duplicate_of(const ConceptNode& leaf, const Instance& inst) const {
    return !leaf.members.empty() && equal_values(instances_[leaf.members.front()], inst);
}

void Hierarchy::descend(ConceptNode& node, const Instance& x, std::size_t id) {
    if (node.leaf()) {
        if (duplicate_of(node, x)) {
            node.members.push_back(id);
            node.stats.add(schema_, grids_, cfg_.membership, x);
            return;
        }
        // Expand the leaf: its previous contents become one child, the new
        // (distinct) instance a sibling leaf.
        auto twin = std::make_unique<ConceptNode>();
        twin->id = next_node_id_++;
        twin->members = node.members;
        twin->stats = node.stats;
        node.children.push_back(std::move(twin));
        node.children.push_back(make_leaf(x, id));
        node.members.push_back(id);
        node.stats.add(schema_, grids_, cfg_.membership, x);
        return;
    }

    node.members.push_back(id);
    node.stats.add(schema_, grids_, cfg_.membership, x);

    const auto moves = score_moves_impl(node, x, true);
    if (cfg_.audit) audit_moves(node, x, moves);
    const MoveScore* best = &moves.front();
    for (const auto& m : moves)
        if (m.score > best->score) best = &m;  // ties keep the canonical order

    auto child_pos = [&](std::uint64_t nid) {
        for (std::size_t i = 0; i < node.children.size(); ++i)
            if (node.children[i]->id == nid) return i;
        throw std::logic_error("descend: move target vanished");
    };

    switch (best->kind) {
        case MoveKind::InsertIntoBest: {
            ++moves_.insert;
            descend(*node.children[child_pos(best->node_a)], x, id);
            return;
        }
        case MoveKind::CreateNewCategory: {
            ++moves_.create;
            node.children.push_back(make_leaf(x, id));
            return;
        }
        case MoveKind::MergeBestPair: {
            ++moves_.merge;
            std::size_t pa = child_pos(best->node_a);
            std::size_t pb = child_pos(best->node_b);
            if (pa > pb) std::swap(pa, pb);
            auto a = std::move(node.children[pa]);
            auto b = std::move(node.children[pb]);
            auto merged = std::make_unique<ConceptNode>();
            merged->id = next_node_id_++;
            merged->members = a->members;
            merged->members.insert(merged->members.end(), b->members.begin(), b->members.end());
            merged->stats = a->stats;
            merged->stats.merge(b->stats);
            merged->children.push_back(std::move(a));
            merged->children.push_back(std::move(b));
            node.children[pa] = std::move(merged);
            node.children.erase(node.children.begin() + static_cast<std::ptrdiff_t>(pb));
            descend(*node.children[pa], x, id);
            return;
        }
        case MoveKind::SplitBest: {
            ++moves_.split;
            const std::size_t ph = child_pos(best->node_a);
            auto host = std::move(node.children[ph]);
            node.children.erase(node.children.begin() + static_cast<std::ptrdiff_t>(ph));
            ConceptNode* target = nullptr;
            for (std::size_t i = 0; i < host->children.size(); ++i) {
                if (host->children[i]->id == best->node_b) target = host->children[i].get();
                node.children.insert(node.children.begin() + static_cast<std::ptrdiff_t>(ph + i),
                                     std::move(host->children[i]));
            }
            if (target == nullptr) throw std::logic_error("descend: split target vanished");
            descend(*target, x, id);
            return;
        }
    }
}

std::vector<MoveScore> Hierarchy::score_moves(const ConceptNode& node, const Instance& inst) const {
    require_valid(schema_, inst);
    return score_moves_impl(node, inst, false);
}

std::vector<MoveScore> Hierarchy::score_moves_impl(const ConceptNode& node, const Instance& x,
                                                   bool node_includes_inst) const {
    if (node.leaf()) return {};
    const auto& kids = node.children;
    const std::size_t m = kids.size();

    // Baseline: every instance reaching this node (plus x) in one cluster.
    ConceptStats base_store;
    const ConceptStats* base = &node.stats;
    if (!node_includes_inst) {
        base_store = node.stats;
        base_store.add(schema_, grids_, cfg_.membership, x);
        base = &base_store;
    }
    const double baseline =
        evaluate_cu(schema_, std::vector<const ConceptStats*>{base}, grids_).total;
    auto norm = [&](double raw, std::size_t nclusters) {
        return (raw - baseline) / static_cast<double>(nclusters);
    };

    std::vector<const ConceptStats*> views(m);
    for (std::size_t i = 0; i < m; ++i) views[i] = &kids[i]->stats;

    // Insertion score of x into each child.
    std::vector<double> ins(m);
    for (std::size_t c = 0; c < m; ++c) {
        ConceptStats plus = kids[c]->stats;
        plus.add(schema_, grids_, cfg_.membership, x);
        views[c] = &plus;
        ins[c] = norm(evaluate_cu(schema_, views, grids_).total, m);
        views[c] = &kids[c]->stats;
    }

    // Best and second-best hosts; ties go to the earlier-created child.
    auto better = [&](std::size_t a, std::size_t b) {
        return ins[a] > ins[b] || (ins[a] == ins[b] && kids[a]->id < kids[b]->id);
    };
    std::size_t b0 = 0;
    for (std::size_t c = 1; c < m; ++c)
        if (better(c, b0)) b0 = c;
    std::size_t b1 = m;
    for (std::size_t c = 0; c < m; ++c)
        if (c != b0 && (b1 == m || better(c, b1))) b1 = c;

    std::vector<MoveScore> out;
    out.push_back({MoveKind::InsertIntoBest, ins[b0], kids[b0]->id, 0});
    if (b1 != m) out.push_back({MoveKind::InsertIntoBest, ins[b1], kids[b1]->id, 0});

    // Create a new singleton child for x.
    {
        ConceptStats singleton = ConceptStats::empty(schema_, grids_);
        singleton.add(schema_, grids_, cfg_.membership, x);
        std::vector<const ConceptStats*> v = views;
        v.push_back(&singleton);
        const double raw = evaluate_cu(schema_, v, grids_).total;
        out.push_back({MoveKind::CreateNewCategory, norm(raw, m + 1), 0, 0});
    }

    // Merge the two best hosts into one child holding both (and x). Only
    // offered when it leaves at least two children, preserving the shape
    // invariant for internal nodes.
    if (m >= 3 && b1 != m) {
        ConceptStats merged = kids[b0]->stats;
        merged.merge(kids[b1]->stats);
        merged.add(schema_, grids_, cfg_.membership, x);
        std::vector<const ConceptStats*> v;
        v.reserve(m - 1);
        v.push_back(&merged);
        for (std::size_t c = 0; c < m; ++c)
            if (c != b0 && c != b1) v.push_back(&kids[c]->stats);
        const double raw = evaluate_cu(schema_, v, grids_).total;
        out.push_back({MoveKind::MergeBestPair, norm(raw, m - 1), kids[b0]->id, kids[b1]->id});
    }

    // Split the best host: hoist its children one level and place x into
    // whichever of them scores best.
    if (!kids[b0]->leaf()) {
        const auto& grand = kids[b0]->children;
        const std::size_t n_clusters = m - 1 + grand.size();
        double best_score = -std::numeric_limits<double>::infinity();
        std::uint64_t best_target = 0;
        for (std::size_t g = 0; g < grand.size(); ++g) {
            ConceptStats plus = grand[g]->stats;
            plus.add(schema_, grids_, cfg_.membership, x);
            std::vector<const ConceptStats*> v;
            v.reserve(n_clusters);
            for (std::size_t c = 0; c < m; ++c)
                if (c != b0) v.push_back(&kids[c]->stats);
            for (std::size_t gg = 0; gg < grand.size(); ++gg)
                v.push_back(gg == g ? &plus : &grand[gg]->stats);
            const double score = norm(evaluate_cu(schema_, v, grids_).total, n_clusters);
            if (score > best_score ||
                (score == best_score && grand[g]->id < best_target)) {
                best_score = score;
                best_target = grand[g]->id;
            }
        }
        out.push_back({MoveKind::SplitBest, best_score, kids[b0]->id, best_target});
    }
    return out;
}

const ConceptNode* Hierarchy::best_child(const ConceptNode& node, const Instance& x) const {
    // Argmax over insertion targets; the baseline shift and cluster-count
    // divisor are constant across children, so raw totals suffice.
    const auto& kids = node.children;
    std::vector<const ConceptStats*> views(kids.size());
    for (std::size_t i = 0; i < kids.size(); ++i) views[i] = &kids[i]->stats;
    const ConceptNode* best = nullptr;
    double best_raw = -std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < kids.size(); ++c) {
        ConceptStats plus = kids[c]->stats;
        plus.add(schema_, grids_, cfg_.membership, x);
        views[c] = &plus;
        const double raw = evaluate_cu(schema_, views, grids_).total;
        views[c] = &kids[c]->stats;
        if (best == nullptr || raw > best_raw || (raw == best_raw && kids[c]->id < best->id)) {
            best = kids[c].get();
            best_raw = raw;
        }
    }
    return best;
}

std::vector<std::uint64_t> Hierarchy::classify(const Instance& inst,
                                               std::optional<std::size_t> max_depth) const {
    require_valid(schema_, inst);
    if (!root_) throw std::logic_error("classify: empty hierarchy");
    std::vector<std::uint64_t> path;
    const ConceptNode* node = root_.get();
    path.push_back(node->id);
    std::size_t steps = 0;
    while (!node->leaf() && (!max_depth || steps < *max_depth)) {
        node = best_child(*node, inst);
        path.push_back(node->id);
        ++steps;
    }
    return path;
}

Partition Hierarchy::root_partition() const {
    const ConceptNode& r = root();
    Partition p;
    if (r.leaf()) {
        p.clusters.push_back(r.members);
    } else {
        for (const auto& ch : r.children) p.clusters.push_back(ch->members);
    }
    for (auto& c : p.clusters) std::sort(c.begin(), c.end());
    return p;
}

UtilityReport Hierarchy::root_utility() const {
    const ConceptNode& r = root();
    std::vector<const ConceptStats*> views;
    if (r.leaf()) {
        views.push_back(&r.stats);
    } else {
        for (const auto& ch : r.children) views.push_back(&ch->stats);
    }
    return evaluate_cu(schema_, views, grids_);
}

namespace {

std::size_t count_nodes(const ConceptNode& n, bool leaves_only) {
    std::size_t total = leaves_only ? (n.leaf() ? 1 : 0) : 1;
    for (const auto& ch : n.children) total += count_nodes(*ch, leaves_only);
    return total;
}

void shape_string(const ConceptNode& n, std::string& out) {
    out += '(';
    out += std::to_string(n.count());
    if (n.leaf()) {
        out += ':';
        for (std::size_t id : n.members) {
            out += std::to_string(id);
            out += ',';
        }
    }
    for (const auto& ch : n.children) shape_string(*ch, out);
    out += ')';
}

}  // namespace

std::size_t Hierarchy::node_count() const { return root_ ? count_nodes(*root_, false) : 0; }

std::size_t Hierarchy::leaf_count() const { return root_ ? count_nodes(*root_, true) : 0; }

std::uint64_t Hierarchy::structure_hash() const {
    std::string s;
    if (root_) shape_string(*root_, s);
    return fnv1a64(s);
}

void Hierarchy::audit_node(const ConceptNode& n, std::vector<std::size_t>& seen) const {
    const std::string where = "node " + std::to_string(n.id);
    if (n.members.empty()) throw std::logic_error("audit: " + where + " is empty");
    if (n.stats.count != n.members.size())
        throw std::logic_error("audit: " + where + " count disagrees with member list");
    for (std::size_t j = 0; j < schema_.arity(); ++j) {
        if (schema_.attribute(j).kind == AttrKind::Nominal) {
            const auto& counts = std::get<NominalStats>(n.stats.attrs[j]).counts;
            std::int64_t sum = 0;
            for (auto c : counts) {
                if (c < 0) throw std::logic_error("audit: " + where + " negative count");
                sum += c;
            }
            if (sum != static_cast<std::int64_t>(n.stats.count))
                throw std::logic_error("audit: " + where + " nominal counts do not sum to size");
        } else if (std::get<NumericStats>(n.stats.attrs[j]).raw.size() != n.stats.count) {
            throw std::logic_error("audit: " + where + " raw value count disagrees with size");
        }
    }
    if (n.stats.mass_drift(schema_, grids_, cfg_.membership) > 1e-9)
        throw std::logic_error("audit: " + where + " cached mass drifted from raw values");

    if (n.leaf()) {
        for (std::size_t id : n.members) {
            if (id >= instances_.size())
                throw std::logic_error("audit: " + where + " references unknown instance");
            if (!equal_values(instances_[id], instances_[n.members.front()]))
                throw std::logic_error("audit: " + where + " mixes distinct instances in a leaf");
        }
        seen.insert(seen.end(), n.members.begin(), n.members.end());
        return;
    }

    if (n.children.size() < 2)
        throw std::logic_error("audit: " + where + " is internal with fewer than 2 children");
    std::vector<std::size_t> mine = n.members;
    std::sort(mine.begin(), mine.end());
    if (std::adjacent_find(mine.begin(), mine.end()) != mine.end())
        throw std::logic_error("audit: " + where + " repeats a member id");
    std::vector<std::size_t> theirs;
    for (const auto& ch : n.children)
        theirs.insert(theirs.end(), ch->members.begin(), ch->members.end());
    std::sort(theirs.begin(), theirs.end());
    if (mine != theirs)
        throw std::logic_error("audit: children of " + where + " do not partition it");
    for (const auto& ch : n.children) audit_node(*ch, seen);
}

void Hierarchy::audit() const {
    if (!root_) {
        if (!instances_.empty())
            throw std::logic_error("audit: instances recorded but the hierarchy is empty");
        return;
    }
    std::vector<std::size_t> seen;
    audit_node(*root_, seen);
    std::sort(seen.begin(), seen.end());
    if (seen.size() != instances_.size())
        throw std::logic_error("audit: leaves do not cover every instance exactly once");
    for (std::size_t i = 0; i < seen.size(); ++i)
        if (seen[i] != i) throw std::logic_error("audit: leaf membership misses instance " +
                                                 std::to_string(i));
}

void Hierarchy::audit_moves(const ConceptNode& node, const Instance& x,
                            const std::vector<MoveScore>& cached) const {
    auto fresh_stats = [&](const ConceptNode& n) {
        ConceptStats s = ConceptStats::empty(schema_, grids_);
        for (std::size_t id : n.members) s.add(schema_, grids_, cfg_.membership, instances_[id]);
        return s;
    };
    // Shadow copy of the node two levels deep with statistics re-derived
    // from raw instances; deeper levels never influence move scores.
    ConceptNode shadow;
    shadow.id = node.id;
    shadow.members = node.members;
    shadow.stats = fresh_stats(node);
    for (const auto& ch : node.children) {
        auto sc = std::make_unique<ConceptNode>();
        sc->id = ch->id;
        sc->members = ch->members;
        sc->stats = fresh_stats(*ch);
        for (const auto& g : ch->children) {
            auto sg = std::make_unique<ConceptNode>();
            sg->id = g->id;
            sg->members = g->members;
            sg->stats = fresh_stats(*g);
            sc->children.push_back(std::move(sg));
        }
        shadow.children.push_back(std::move(sc));
    }
    const auto fresh = score_moves_impl(shadow, x, true);
    if (fresh.size() != cached.size())
        throw std::logic_error("audit: cached and re-derived move candidate sets differ");
    for (std::size_t i = 0; i < fresh.size(); ++i) {
        if (fresh[i].kind != cached[i].kind || fresh[i].node_a != cached[i].node_a ||
            fresh[i].node_b != cached[i].node_b)
            throw std::logic_error("audit: cached and re-derived move candidates diverge");
        if (std::abs(fresh[i].score - cached[i].score) > 1e-9)
            throw std::logic_error("audit: move score drift exceeds tolerance for " +
                                   std::string(to_string(fresh[i].kind)));
    }
}

}  // namespace cobweb
