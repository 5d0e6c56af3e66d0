#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace cobweb {

// A single attribute value: a numeric measurement or a nominal label.
using Value = std::variant<double, std::string>;

inline bool is_number(const Value& v) { return std::holds_alternative<double>(v); }
inline double as_number(const Value& v) { return std::get<double>(v); }
inline const std::string& as_label(const Value& v) { return std::get<std::string>(v); }

enum class AttrKind { Nominal, Numeric };

struct AttributeDecl {
    std::string name;
    AttrKind kind = AttrKind::Numeric;
    // Declared label set; meaningful for nominal attributes only.
    std::vector<std::string> values;
};

// Ordered attribute declarations. Construction validates that names are
// unique and non-empty and that every nominal value set is non-empty and
// free of duplicates; violations throw std::invalid_argument.
class Schema {
public:
    Schema() = default;
    explicit Schema(std::vector<AttributeDecl> attrs);

    const std::vector<AttributeDecl>& attributes() const { return attrs_; }
    const AttributeDecl& attribute(std::size_t j) const { return attrs_.at(j); }
    std::size_t arity() const { return attrs_.size(); }

    // Index of `label` within attribute j's declared value set, if any.
    std::optional<std::size_t> value_index(std::size_t j, std::string_view label) const;

    bool all_nominal() const;
    bool all_numeric() const;

private:
    std::vector<AttributeDecl> attrs_;
};

// One observation; values are positional and must match the schema's arity.
struct Instance {
    std::vector<Value> values;
};

struct ValidationError {
    enum class Code { ArityMismatch, UnknownNominalValue, NonFiniteNumeric, KindMismatch };
    Code code;
    std::string attribute;  // offending attribute name; empty for arity errors
    std::string message;
};

// Checks one instance against a schema. Returns the first violation found,
// or nullopt when the instance is admissible.
std::optional<ValidationError> validate_instance(const Schema& schema, const Instance& inst);

// Throwing wrapper around validate_instance (std::invalid_argument).
void require_valid(const Schema& schema, const Instance& inst);

// How the kernel width of a numeric attribute is chosen.
struct SigmaPolicy {
    enum class Kind { CellWidth, Fixed };
    Kind kind = Kind::CellWidth;
    double fixed = 1.0;  // used when kind == Fixed

    static SigmaPolicy cell_width() { return {Kind::CellWidth, 1.0}; }
    static SigmaPolicy fixed_value(double s) { return {Kind::Fixed, s}; }
};

bool operator==(const SigmaPolicy& a, const SigmaPolicy& b);

// Width floor that keeps kernels well defined on degenerate (zero-range) grids.
inline constexpr double kSigmaFloor = 1e-9;

// Uniform discretization lattice over one numeric attribute's observed range.
// Centers sit at lo + (i - 1/2) * (hi - lo) / d for i = 1..d, i.e. cell
// midpoints of d equal cells spanning [lo, hi]; with `literal_centers` the
// lo offset is dropped (compatibility mode) and centers sit at
// (i - 1/2) * (hi - lo) / d.
struct Grid {
    double lo = 0.0;
    double hi = 0.0;
    double sigma = 1.0;
    std::vector<double> centers;
    bool degenerate = false;       // hi == lo (all observed values equal)
    bool literal_centers = false;  // built without the lo offset

    std::size_t size() const { return centers.size(); }
    double cell_width() const { return centers.empty() ? 0.0 : (hi - lo) / static_cast<double>(centers.size()); }
};

// Builds a d-node grid from observed values (lo/hi are their min/max).
// Throws std::invalid_argument when values is empty, d == 0, or any value
// is non-finite. Sigma comes from `policy`, floored at kSigmaFloor.
Grid build_grid(std::span<const double> values, std::size_t d, SigmaPolicy policy,
                bool literal_centers = false);

// Same, with explicit bounds instead of observed values (requires lo <= hi).
Grid build_grid_bounds(double lo, double hi, std::size_t d, SigmaPolicy policy,
                       bool literal_centers = false);

// Per-attribute grids aligned with a schema; nominal attributes carry nullopt.
struct GridSet {
    std::vector<std::optional<Grid>> per_attribute;

    // Grid for numeric attribute j; throws std::invalid_argument when absent.
    const Grid& require(std::size_t j, std::string_view attr_name = {}) const;
};

// Disjoint non-empty clusters of instance ids covering some universe.
struct Partition {
    std::vector<std::vector<std::size_t>> clusters;

    std::size_t total() const;
};

// Returns a human-readable defect description, or nullopt when `p` is a
// valid partition (non-empty, clusters non-empty and pairwise disjoint).
std::optional<std::string> partition_defect(const Partition& p);

// Throwing wrapper around partition_defect (std::invalid_argument).
void require_partition(const Partition& p);

// A schema plus its instances; the instance id is the row index.
struct Dataset {
    Schema schema;
    std::vector<Instance> instances;
};

// Shortest decimal rendering of `v` that parses back to the same double.
std::string fmt_double(double v);

// FNV-1a 64-bit hash of a byte string.
std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace cobweb
