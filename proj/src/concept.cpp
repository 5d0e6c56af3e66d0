#include "cobweb/concept.hpp"

#include <cmath>
#include <stdexcept>

namespace cobweb {

ConceptStats ConceptStats::empty(const Schema& schema, const GridSet& grids) {
    ConceptStats s;
    s.attrs.reserve(schema.arity());
    for (std::size_t j = 0; j < schema.arity(); ++j) {
        const auto& decl = schema.attribute(j);
        if (decl.kind == AttrKind::Nominal) {
            s.attrs.emplace_back(NominalStats{std::vector<std::int64_t>(decl.values.size(), 0)});
        } else {
            const Grid& g = grids.require(j, decl.name);
            s.attrs.emplace_back(NumericStats{{}, std::vector<double>(g.size(), 0.0)});
        }
    }
    return s;
}

void ConceptStats::add(const Schema& schema, const GridSet& grids, MembershipKind kind,
                       const Instance& inst) {
    if (attrs.size() != schema.arity() || inst.values.size() != schema.arity())
        throw std::invalid_argument("ConceptStats::add: arity mismatch");
    for (std::size_t j = 0; j < schema.arity(); ++j) {
        const auto& decl = schema.attribute(j);
        if (decl.kind == AttrKind::Nominal) {
            auto idx = schema.value_index(j, as_label(inst.values[j]));
            if (!idx)
                throw std::invalid_argument("ConceptStats::add: undeclared value '" +
                                            as_label(inst.values[j]) + "' for attribute '" +
                                            decl.name + "'");
            ++std::get<NominalStats>(attrs[j]).counts[*idx];
        } else {
            auto& ns = std::get<NumericStats>(attrs[j]);
            const double v = as_number(inst.values[j]);
            ns.raw.push_back(v);
            accumulate_membership(v, grids.require(j, decl.name), kind, ns.node_mass);
        }
    }
    ++count;
}

void ConceptStats::merge(const ConceptStats& other) {
    if (attrs.size() != other.attrs.size())
        throw std::invalid_argument("ConceptStats::merge: arity mismatch");
    for (std::size_t j = 0; j < attrs.size(); ++j) {
        if (std::holds_alternative<NominalStats>(attrs[j])) {
            auto& mine = std::get<NominalStats>(attrs[j]).counts;
            const auto& theirs = std::get<NominalStats>(other.attrs[j]).counts;
            for (std::size_t v = 0; v < mine.size(); ++v) mine[v] += theirs[v];
        } else {
            auto& mine = std::get<NumericStats>(attrs[j]);
            const auto& theirs = std::get<NumericStats>(other.attrs[j]);
            mine.raw.insert(mine.raw.end(), theirs.raw.begin(), theirs.raw.end());
            for (std::size_t i = 0; i < mine.node_mass.size(); ++i)
                mine.node_mass[i] += theirs.node_mass[i];
        }
    }
    count += other.count;
}

void ConceptStats::rebuild_mass(const Schema& schema, const GridSet& grids, MembershipKind kind) {
    for (std::size_t j = 0; j < attrs.size(); ++j) {
        if (!std::holds_alternative<NumericStats>(attrs[j])) continue;
        auto& ns = std::get<NumericStats>(attrs[j]);
        const Grid& g = grids.require(j, schema.attribute(j).name);
        ns.node_mass.assign(g.size(), 0.0);
        for (double v : ns.raw) accumulate_membership(v, g, kind, ns.node_mass);
    }
}

double ConceptStats::mass_drift(const Schema& schema, const GridSet& grids,
                                MembershipKind kind) const {
    double drift = 0.0;
    for (std::size_t j = 0; j < attrs.size(); ++j) {
        if (!std::holds_alternative<NumericStats>(attrs[j])) continue;
        const auto& ns = std::get<NumericStats>(attrs[j]);
        const Grid& g = grids.require(j, schema.attribute(j).name);
        std::vector<double> fresh(g.size(), 0.0);
        for (double v : ns.raw) accumulate_membership(v, g, kind, fresh);
        for (std::size_t i = 0; i < fresh.size(); ++i)
            drift = std::max(drift, std::abs(fresh[i] - ns.node_mass[i]));
    }
    return drift;
}

}  // namespace cobweb
