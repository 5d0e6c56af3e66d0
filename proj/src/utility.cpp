#include "cobweb/utility.hpp"

#include <cmath>
#include <stdexcept>

namespace cobweb {

namespace {

bool covered(AttrKind kind, AttrFilter filter) {
    switch (filter) {
        case AttrFilter::All: return true;
        case AttrFilter::NominalOnly: return kind == AttrKind::Nominal;
        case AttrFilter::NumericOnly: return kind == AttrKind::Numeric;
    }
    return false;
}

}  // namespace

UtilityReport evaluate_cu(const Schema& schema, std::span<const ConceptStats* const> clusters,
                          const GridSet& grids, AttrFilter filter) {
    if (clusters.empty()) throw std::invalid_argument("evaluate_cu: no clusters");
    std::size_t l = 0;
    for (const ConceptStats* c : clusters) {
        if (c == nullptr || c->count == 0)
            throw std::invalid_argument("evaluate_cu: empty cluster");
        if (c->attrs.size() != schema.arity())
            throw std::invalid_argument("evaluate_cu: cluster arity mismatch");
        l += c->count;
    }

    // Universe row for each covered attribute: summed counts or summed mass.
    std::vector<std::vector<double>> universe(schema.arity());
    for (std::size_t j = 0; j < schema.arity(); ++j) {
        const auto& decl = schema.attribute(j);
        if (!covered(decl.kind, filter)) continue;
        const std::size_t width = decl.kind == AttrKind::Nominal
                                      ? decl.values.size()
                                      : grids.require(j, decl.name).size();
        universe[j].assign(width, 0.0);
        for (const ConceptStats* c : clusters) {
            if (decl.kind == AttrKind::Nominal) {
                const auto& counts = std::get<NominalStats>(c->attrs[j]).counts;
                for (std::size_t v = 0; v < width; ++v)
                    universe[j][v] += static_cast<double>(counts[v]);
            } else {
                const auto& mass = std::get<NumericStats>(c->attrs[j]).node_mass;
                if (mass.size() != width)
                    throw std::invalid_argument("evaluate_cu: cached mass does not match grid");
                for (std::size_t i = 0; i < width; ++i) universe[j][i] += mass[i];
            }
        }
    }

    UtilityReport report;
    const double dl = static_cast<double>(l);
    for (std::size_t k = 0; k < clusters.size(); ++k) {
        const ConceptStats& c = *clusters[k];
        const double lk = static_cast<double>(c.count);
        for (std::size_t j = 0; j < schema.arity(); ++j) {
            const auto& decl = schema.attribute(j);
            if (!covered(decl.kind, filter)) continue;
            for (std::size_t i = 0; i < universe[j].size(); ++i) {
                UtilityTerm t;
                t.cluster = k;
                t.cluster_label = "C" + std::to_string(k + 1);
                t.attribute = j;
                t.attribute_name = decl.name;
                double in_cluster;  // this cluster's count/mass for the value
                if (decl.kind == AttrKind::Nominal) {
                    t.value = decl.values[i];
                    in_cluster = static_cast<double>(std::get<NominalStats>(c.attrs[j]).counts[i]);
                } else {
                    t.value = fmt_double(grids.require(j, decl.name).centers[i]);
                    in_cluster = std::get<NumericStats>(c.attrs[j]).node_mass[i];
                }
                const double total_mass = universe[j][i];
                t.weight = total_mass / dl;
                t.predictability = in_cluster / lk;
                t.predictiveness = total_mass > 0.0 ? in_cluster / total_mass : 0.0;
                t.product = t.weight * t.predictability * t.predictiveness;
                report.total += t.product;
                report.terms.push_back(std::move(t));
            }
        }
    }
    return report;
}

ConceptStats cluster_stats(const Dataset& data, std::span<const std::size_t> ids,
                           const GridSet& grids, MembershipKind kind) {
    ConceptStats s = ConceptStats::empty(data.schema, grids);
    for (std::size_t id : ids) {
        if (id >= data.instances.size())
            throw std::invalid_argument("cluster_stats: instance id " + std::to_string(id) +
                                        " out of range");
        s.add(data.schema, grids, kind, data.instances[id]);
    }
    return s;
}

GridSet dataset_grids(const Dataset& data, std::size_t grid_size, SigmaPolicy sigma,
                      bool literal_centers) {
    GridSet grids;
    grids.per_attribute.resize(data.schema.arity());
    for (std::size_t j = 0; j < data.schema.arity(); ++j) {
        if (data.schema.attribute(j).kind != AttrKind::Numeric) continue;
        std::vector<double> column;
        column.reserve(data.instances.size());
        for (const auto& inst : data.instances) column.push_back(as_number(inst.values[j]));
        grids.per_attribute[j] = build_grid(column, grid_size, sigma, literal_centers);
    }
    return grids;
}

namespace {

UtilityReport partition_cu(const Dataset& data, const Partition& p, const GridSet& grids,
                           MembershipKind kind, AttrFilter filter) {
    require_partition(p);
    std::vector<ConceptStats> stats;
    stats.reserve(p.clusters.size());
    for (const auto& ids : p.clusters) stats.push_back(cluster_stats(data, ids, grids, kind));
    std::vector<const ConceptStats*> view;
    view.reserve(stats.size());
    for (const auto& s : stats) view.push_back(&s);
    return evaluate_cu(data.schema, view, grids, filter);
}

}  // namespace

UtilityReport nominal_cu(const Dataset& data, const Partition& p) {
    for (const auto& decl : data.schema.attributes())
        if (decl.kind != AttrKind::Nominal)
            throw std::invalid_argument("NonNominalAttribute: attribute '" + decl.name +
                                        "' is numeric; the classical evaluator requires an "
                                        "all-nominal schema");
    return partition_cu(data, p, GridSet{}, MembershipKind::Rectangular, AttrFilter::NominalOnly);
}

UtilityReport fuzzy_cu(const Dataset& data, const Partition& p, const GridSet& grids,
                       MembershipKind kind) {
    return partition_cu(data, p, grids, kind, AttrFilter::NumericOnly);
}

UtilityReport mixed_cu(const Dataset& data, const Partition& p, const GridSet& grids,
                       MembershipKind kind) {
    return partition_cu(data, p, grids, kind, AttrFilter::All);
}

double fuzzy_predictability(std::span<const double> cluster_values, const Grid& g,
                            std::size_t node, MembershipKind kind) {
    if (cluster_values.empty())
        throw std::invalid_argument("fuzzy_predictability: empty cluster");
    if (node >= g.size()) throw std::invalid_argument("fuzzy_predictability: node out of range");
    double sum = 0.0;
    for (double a : cluster_values) sum += membership_vector(a, g, kind)[node];
    return sum / static_cast<double>(cluster_values.size());
}

double fuzzy_predictiveness(std::span<const double> cluster_values,
                            std::span<const double> universe_values, const Grid& g,
                            std::size_t node, MembershipKind kind) {
    if (node >= g.size()) throw std::invalid_argument("fuzzy_predictiveness: node out of range");
    double num = 0.0, den = 0.0;
    for (double a : cluster_values) num += membership_vector(a, g, kind)[node];
    for (double a : universe_values) den += membership_vector(a, g, kind)[node];
    return den > 0.0 ? num / den : 0.0;
}

double fuzzy_weight(std::span<const double> universe_values, const Grid& g, std::size_t node,
                    MembershipKind kind) {
    if (universe_values.empty()) throw std::invalid_argument("fuzzy_weight: empty universe");
    if (node >= g.size()) throw std::invalid_argument("fuzzy_weight: node out of range");
    double sum = 0.0;
    for (double a : universe_values) sum += membership_vector(a, g, kind)[node];
    return sum / static_cast<double>(universe_values.size());
}

std::string UtilityReport::to_table() const {
    std::string out = "cluster\tattribute\tvalue\tweight\tpredictability\tpredictiveness\tterm\n";
    for (const auto& t : terms) {
        out += t.cluster_label;
        out += '\t';
        out += t.attribute_name;
        out += '\t';
        out += t.value;
        out += '\t';
        out += fmt_double(t.weight);
        out += '\t';
        out += fmt_double(t.predictability);
        out += '\t';
        out += fmt_double(t.predictiveness);
        out += '\t';
        out += fmt_double(t.product);
        out += '\n';
    }
    out += "total\t\t\t\t\t\t" + fmt_double(total) + "\n";
    return out;
}

}  // namespace cobweb
