#include "cobweb/snapshot.hpp"

#include <fstream>
#include <stdexcept>

namespace cobweb {

// Friend of Hierarchy: bridges private state to and from snapshots.
struct SnapshotAccess {
    static const std::vector<std::optional<std::pair<double, double>>>& ranges(
        const Hierarchy& h) {
        return h.ranges_;
    }
    static std::uint64_t next_node_id(const Hierarchy& h) { return h.next_node_id_; }
    static const ConceptNode* root_or_null(const Hierarchy& h) { return h.root_.get(); }

    static Hierarchy restore(Schema schema, TreeConfig cfg, GridSet grids,
                             std::vector<std::optional<std::pair<double, double>>> ranges,
                             std::vector<Instance> instances, std::vector<std::size_t> log,
                             MoveCounts moves, std::unique_ptr<ConceptNode> root,
                             std::uint64_t next_node_id) {
        Hierarchy h(std::move(schema), std::move(cfg));
        h.grids_ = std::move(grids);
        h.ranges_ = std::move(ranges);
        h.instances_ = std::move(instances);
        h.log_ = std::move(log);
        h.moves_ = moves;
        h.root_ = std::move(root);
        h.next_node_id_ = next_node_id;
        return h;
    }
};

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr int kFormatVersion = 1;

ordered_json grid_to_json(const Grid& g) {
    return ordered_json{{"lo", g.lo},
                        {"hi", g.hi},
                        {"sigma", g.sigma},
                        {"degenerate", g.degenerate},
                        {"literal_centers", g.literal_centers},
                        {"centers", g.centers}};
}

Grid grid_from_json(const ordered_json& j) {
    Grid g;
    g.lo = j.at("lo").get<double>();
    g.hi = j.at("hi").get<double>();
    g.sigma = j.at("sigma").get<double>();
    g.degenerate = j.at("degenerate").get<bool>();
    g.literal_centers = j.at("literal_centers").get<bool>();
    g.centers = j.at("centers").get<std::vector<double>>();
    return g;
}

ordered_json stats_to_json(const ConceptStats& s) {
    ordered_json attrs = ordered_json::array();
    for (const auto& a : s.attrs) {
        if (std::holds_alternative<NominalStats>(a)) {
            attrs.push_back(ordered_json{{"counts", std::get<NominalStats>(a).counts}});
        } else {
            const auto& ns = std::get<NumericStats>(a);
            attrs.push_back(ordered_json{{"raw", ns.raw}, {"mass", ns.node_mass}});
        }
    }
    return ordered_json{{"count", s.count}, {"attrs", std::move(attrs)}};
}

ConceptStats stats_from_json(const ordered_json& j, const Schema& schema) {
    ConceptStats s;
    s.count = j.at("count").get<std::size_t>();
    const auto& attrs = j.at("attrs");
    if (attrs.size() != schema.arity())
        throw std::invalid_argument("tree snapshot: statistics arity mismatch");
    for (std::size_t a = 0; a < attrs.size(); ++a) {
        if (schema.attribute(a).kind == AttrKind::Nominal) {
            s.attrs.emplace_back(
                NominalStats{attrs[a].at("counts").get<std::vector<std::int64_t>>()});
        } else {
            s.attrs.emplace_back(NumericStats{attrs[a].at("raw").get<std::vector<double>>(),
                                              attrs[a].at("mass").get<std::vector<double>>()});
        }
    }
    return s;
}

ordered_json node_to_json(const ConceptNode& n) {
    ordered_json children = ordered_json::array();
    for (const auto& ch : n.children) children.push_back(node_to_json(*ch));
    return ordered_json{{"id", n.id},
                        {"members", n.members},
                        {"stats", stats_to_json(n.stats)},
                        {"children", std::move(children)}};
}

std::unique_ptr<ConceptNode> node_from_json(const ordered_json& j, const Schema& schema) {
    auto node = std::make_unique<ConceptNode>();
    node->id = j.at("id").get<std::uint64_t>();
    node->members = j.at("members").get<std::vector<std::size_t>>();
    node->stats = stats_from_json(j.at("stats"), schema);
    for (const auto& ch : j.at("children")) node->children.push_back(node_from_json(ch, schema));
    return node;
}

ordered_json value_to_json(const Value& v) {
    if (is_number(v)) return as_number(v);
    return as_label(v);
}

MembershipKind membership_from_string(const std::string& s) {
    if (s == "rect") return MembershipKind::Rectangular;
    if (s == "fuzzy") return MembershipKind::Gaussian;
    throw std::invalid_argument("tree snapshot: unknown membership kind '" + s + "'");
}

}  // namespace

nlohmann::ordered_json tree_to_json(const Hierarchy& h, const SnapshotMeta& meta) {
    const TreeConfig& cfg = h.config();
    ordered_json config{{"membership", std::string(to_string(cfg.membership))},
                        {"grid_size", cfg.grid_size},
                        {"sigma_policy",
                         cfg.sigma.kind == SigmaPolicy::Kind::CellWidth ? "cell" : "fixed"},
                        {"sigma_value", cfg.sigma.fixed},
                        {"literal_centers", cfg.literal_centers}};
    ordered_json bounds = ordered_json::array();
    for (const auto& b : cfg.fixed_bounds) {
        if (b)
            bounds.push_back(ordered_json::array({b->first, b->second}));
        else
            bounds.push_back(nullptr);
    }
    config["fixed_bounds"] = std::move(bounds);

    ordered_json schema = ordered_json::array();
    for (const auto& a : h.schema().attributes()) {
        ordered_json decl{{"name", a.name},
                          {"kind", a.kind == AttrKind::Nominal ? "nominal" : "numeric"}};
        if (a.kind == AttrKind::Nominal) decl["values"] = a.values;
        schema.push_back(std::move(decl));
    }

    ordered_json instances = ordered_json::array();
    for (const auto& inst : h.instances()) {
        ordered_json row = ordered_json::array();
        for (const auto& v : inst.values) row.push_back(value_to_json(v));
        instances.push_back(std::move(row));
    }

    ordered_json grids = ordered_json::array();
    for (const auto& g : h.grids().per_attribute) {
        if (g)
            grids.push_back(grid_to_json(*g));
        else
            grids.push_back(nullptr);
    }

    ordered_json ranges = ordered_json::array();
    for (const auto& r : SnapshotAccess::ranges(h)) {
        if (r)
            ranges.push_back(ordered_json::array({r->first, r->second}));
        else
            ranges.push_back(nullptr);
    }

    ordered_json j{{"format", "cobweb-tree"},
                   {"version", kFormatVersion},
                   {"config_hash", meta.config_hash},
                   {"seed", meta.seed},
                   {"config", std::move(config)},
                   {"schema", std::move(schema)},
                   {"instances", std::move(instances)},
                   {"insertion_log", h.insertion_log()},
                   {"move_counts", ordered_json{{"insert", h.move_counts().insert},
                                                {"create", h.move_counts().create},
                                                {"merge", h.move_counts().merge},
                                                {"split", h.move_counts().split}}},
                   {"ranges", std::move(ranges)},
                   {"grids", std::move(grids)},
                   {"next_node_id", SnapshotAccess::next_node_id(h)}};
    const ConceptNode* root = SnapshotAccess::root_or_null(h);
    j["root"] = root ? node_to_json(*root) : ordered_json(nullptr);
    return j;
}

Hierarchy tree_from_json(const nlohmann::ordered_json& j) {
    try {
        if (j.at("format").get<std::string>() != "cobweb-tree")
            throw std::invalid_argument("tree snapshot: unrecognized format tag");
        if (j.at("version").get<int>() != kFormatVersion)
            throw std::invalid_argument("tree snapshot: unsupported version");

        std::vector<AttributeDecl> decls;
        for (const auto& d : j.at("schema")) {
            AttributeDecl a;
            a.name = d.at("name").get<std::string>();
            a.kind = d.at("kind").get<std::string>() == "nominal" ? AttrKind::Nominal
                                                                  : AttrKind::Numeric;
            if (a.kind == AttrKind::Nominal) a.values = d.at("values").get<std::vector<std::string>>();
            decls.push_back(std::move(a));
        }
        Schema schema(std::move(decls));

        const auto& jc = j.at("config");
        TreeConfig cfg;
        cfg.membership = membership_from_string(jc.at("membership").get<std::string>());
        cfg.grid_size = jc.at("grid_size").get<std::size_t>();
        cfg.sigma = jc.at("sigma_policy").get<std::string>() == "cell"
                        ? SigmaPolicy::cell_width()
                        : SigmaPolicy::fixed_value(jc.at("sigma_value").get<double>());
        cfg.literal_centers = jc.at("literal_centers").get<bool>();
        for (const auto& b : jc.at("fixed_bounds")) {
            if (b.is_null())
                cfg.fixed_bounds.emplace_back(std::nullopt);
            else
                cfg.fixed_bounds.emplace_back(
                    std::make_pair(b.at(0).get<double>(), b.at(1).get<double>()));
        }

        std::vector<Instance> instances;
        for (const auto& row : j.at("instances")) {
            Instance inst;
            for (std::size_t a = 0; a < row.size(); ++a) {
                if (row[a].is_string())
                    inst.values.emplace_back(row[a].get<std::string>());
                else
                    inst.values.emplace_back(row[a].get<double>());
            }
            instances.push_back(std::move(inst));
        }

        GridSet grids;
        for (const auto& g : j.at("grids")) {
            if (g.is_null())
                grids.per_attribute.emplace_back(std::nullopt);
            else
                grids.per_attribute.emplace_back(grid_from_json(g));
        }

        std::vector<std::optional<std::pair<double, double>>> ranges;
        for (const auto& r : j.at("ranges")) {
            if (r.is_null())
                ranges.emplace_back(std::nullopt);
            else
                ranges.emplace_back(std::make_pair(r.at(0).get<double>(), r.at(1).get<double>()));
        }

        std::unique_ptr<ConceptNode> root;
        if (!j.at("root").is_null()) root = node_from_json(j.at("root"), schema);

        const auto& jm = j.at("move_counts");
        MoveCounts moves{jm.at("insert").get<std::uint64_t>(),
                         jm.at("create").get<std::uint64_t>(),
                         jm.at("merge").get<std::uint64_t>(),
                         jm.at("split").get<std::uint64_t>()};

        return SnapshotAccess::restore(std::move(schema), std::move(cfg), std::move(grids),
                                       std::move(ranges), std::move(instances),
                                       j.at("insertion_log").get<std::vector<std::size_t>>(),
                                       moves, std::move(root),
                                       j.at("next_node_id").get<std::uint64_t>());
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("tree snapshot: malformed JSON: ") + e.what());
    }
}

namespace {

void dot_node(const ConceptNode& n, std::string& out) {
    out += "  n" + std::to_string(n.id) + " [label=\"#" + std::to_string(n.id) +
           "\\nsize=" + std::to_string(n.count());
    if (n.leaf()) {
        out += "\\nids:";
        std::size_t shown = 0;
        for (std::size_t id : n.members) {
            if (shown++ == 8) {
                out += " ...";
                break;
            }
            out += " " + std::to_string(id);
        }
    }
    out += "\"];\n";
    for (const auto& ch : n.children) {
        out += "  n" + std::to_string(n.id) + " -> n" + std::to_string(ch->id) + ";\n";
        dot_node(*ch, out);
    }
}

}  // namespace

std::string tree_to_dot(const Hierarchy& h, const SnapshotMeta& meta) {
    std::string out = "digraph hierarchy {\n";
    out += "  // config " + (meta.config_hash.empty() ? std::string("-") : meta.config_hash) +
           " seed " + std::to_string(meta.seed) + "\n";
    out += "  node [shape=box, fontname=\"monospace\"];\n";
    if (const ConceptNode* root = SnapshotAccess::root_or_null(h)) dot_node(*root, out);
    out += "}\n";
    return out;
}

void save_tree(const std::string& path, const Hierarchy& h, const SnapshotMeta& meta) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_tree: cannot open '" + path + "' for writing");
    out << tree_to_json(h, meta).dump(2) << '\n';
    if (!out) throw std::runtime_error("save_tree: failed writing '" + path + "'");
}

Hierarchy load_tree(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_tree: cannot open '" + path + "'");
    nlohmann::ordered_json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("load_tree: '" + path + "' is not valid JSON: " + e.what());
    }
    return tree_from_json(j);
}

}  // namespace cobweb
