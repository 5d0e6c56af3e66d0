#include "cobweb/core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace cobweb {

Schema::Schema(std::vector<AttributeDecl> attrs) : attrs_(std::move(attrs)) {
    std::unordered_set<std::string_view> names;
    for (const auto& a : attrs_) {
        if (a.name.empty()) throw std::invalid_argument("schema: attribute with empty name");
        if (!names.insert(a.name).second)
            throw std::invalid_argument("schema: duplicate attribute name '" + a.name + "'");
        if (a.kind == AttrKind::Nominal) {
            if (a.values.empty())
                throw std::invalid_argument("schema: nominal attribute '" + a.name +
                                            "' has an empty value set");
            std::unordered_set<std::string_view> labels;
            for (const auto& v : a.values)
                if (!labels.insert(v).second)
                    throw std::invalid_argument("schema: nominal attribute '" + a.name +
                                                "' repeats value '" + v + "'");
        }
    }
}

std::optional<std::size_t> Schema::value_index(std::size_t j, std::string_view label) const {
    const auto& vals = attrs_.at(j).values;
    for (std::size_t i = 0; i < vals.size(); ++i)
        if (vals[i] == label) return i;
    return std::nullopt;
}

bool Schema::all_nominal() const {
    return std::all_of(attrs_.begin(), attrs_.end(),
                       [](const AttributeDecl& a) { return a.kind == AttrKind::Nominal; });
}

bool Schema::all_numeric() const {
    return std::all_of(attrs_.begin(), attrs_.end(),
                       [](const AttributeDecl& a) { return a.kind == AttrKind::Numeric; });
}

std::optional<ValidationError> validate_instance(const Schema& schema, const Instance& inst) {
    if (inst.values.size() != schema.arity()) {
        return ValidationError{ValidationError::Code::ArityMismatch, "",
                               "ArityMismatch: instance has " + std::to_string(inst.values.size()) +
                                   " values, schema expects " + std::to_string(schema.arity())};
    }
    for (std::size_t j = 0; j < schema.arity(); ++j) {
        const auto& decl = schema.attribute(j);
        const Value& v = inst.values[j];
        if (decl.kind == AttrKind::Nominal) {
            if (!std::holds_alternative<std::string>(v))
                return ValidationError{ValidationError::Code::KindMismatch, decl.name,
                                       "KindMismatch: attribute '" + decl.name +
                                           "' is nominal but a numeric value was supplied"};
            const auto& label = std::get<std::string>(v);
            if (!schema.value_index(j, label))
                return ValidationError{ValidationError::Code::UnknownNominalValue, decl.name,
                                       "UnknownNominalValue: attribute '" + decl.name +
                                           "' does not declare value '" + label + "'"};
        } else {
            if (!std::holds_alternative<double>(v))
                return ValidationError{ValidationError::Code::KindMismatch, decl.name,
                                       "KindMismatch: attribute '" + decl.name +
                                           "' is numeric but a nominal value was supplied"};
            if (!std::isfinite(std::get<double>(v)))
                return ValidationError{ValidationError::Code::NonFiniteNumeric, decl.name,
                                       "NonFiniteNumeric: attribute '" + decl.name +
                                           "' received a non-finite value"};
        }
    }
    return std::nullopt;
}

void require_valid(const Schema& schema, const Instance& inst) {
    if (auto err = validate_instance(schema, inst)) throw std::invalid_argument(err->message);
}

bool operator==(const SigmaPolicy& a, const SigmaPolicy& b) {
    if (a.kind != b.kind) return false;
    return a.kind == SigmaPolicy::Kind::CellWidth || a.fixed == b.fixed;
}

Grid build_grid_bounds(double lo, double hi, std::size_t d, SigmaPolicy policy,
                       bool literal_centers) {
    if (d == 0) throw std::invalid_argument("build_grid: grid size must be at least 1");
    if (!std::isfinite(lo) || !std::isfinite(hi))
        throw std::invalid_argument("build_grid: non-finite bounds");
    if (lo > hi) throw std::invalid_argument("build_grid: lo exceeds hi");

    Grid g;
    g.lo = lo;
    g.hi = hi;
    g.degenerate = (lo == hi);
    g.literal_centers = literal_centers;
    const double width = (hi - lo) / static_cast<double>(d);
    g.centers.resize(d);
    for (std::size_t i = 0; i < d; ++i) {
        const double offset = (static_cast<double>(i) + 0.5) * width;
        g.centers[i] = literal_centers ? offset : lo + offset;
    }
    double sigma = policy.kind == SigmaPolicy::Kind::Fixed ? policy.fixed : width;
    if (policy.kind == SigmaPolicy::Kind::Fixed && !(sigma > 0.0))
        throw std::invalid_argument("build_grid: fixed sigma must be positive");
    g.sigma = std::max(sigma, kSigmaFloor);
    return g;
}

Grid build_grid(std::span<const double> values, std::size_t d, SigmaPolicy policy,
                bool literal_centers) {
    if (values.empty()) throw std::invalid_argument("build_grid: no observed values");
    double lo = values[0], hi = values[0];
    for (double v : values) {
        if (!std::isfinite(v)) throw std::invalid_argument("build_grid: non-finite value");
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return build_grid_bounds(lo, hi, d, policy, literal_centers);
}

const Grid& GridSet::require(std::size_t j, std::string_view attr_name) const {
    if (j < per_attribute.size() && per_attribute[j].has_value()) return *per_attribute[j];
    std::string name = attr_name.empty() ? ("#" + std::to_string(j)) : std::string(attr_name);
    throw std::invalid_argument("MissingGrid: numeric attribute " + name + " has no grid");
}

std::size_t Partition::total() const {
    std::size_t n = 0;
    for (const auto& c : clusters) n += c.size();
    return n;
}

std::optional<std::string> partition_defect(const Partition& p) {
    if (p.clusters.empty()) return "partition has no clusters";
    std::set<std::size_t> seen;
    for (std::size_t k = 0; k < p.clusters.size(); ++k) {
        if (p.clusters[k].empty()) return "cluster " + std::to_string(k) + " is empty";
        for (std::size_t id : p.clusters[k])
            if (!seen.insert(id).second)
                return "instance " + std::to_string(id) + " appears in more than one cluster";
    }
    return std::nullopt;
}

void require_partition(const Partition& p) {
    if (auto defect = partition_defect(p))
        throw std::invalid_argument("invalid partition: " + *defect);
}

std::string fmt_double(double v) {
    char buf[64];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

}  // namespace cobweb
