#pragma once

// Reference implementations and shared random-data generators used to
// cross-check the engine. Everything here recomputes from first principles
// as straight loops over raw values, deliberately sharing no code path with
// the library beyond the basic data types, so an agreement failure points
// at the production code rather than at a common helper.

#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "cobweb/core.hpp"

namespace oracle {

// ---------------------------------------------------------------------------
// Exact rational arithmetic (small fixtures only; no overflow guarding).

struct Fraction {
    long long num = 0;
    long long den = 1;

    static Fraction of(long long n, long long d) {
        if (d == 0) throw std::invalid_argument("Fraction: zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        const long long g = std::gcd(n < 0 ? -n : n, d);
        return g == 0 ? Fraction{0, 1} : Fraction{n / g, d / g};
    }

    Fraction operator+(const Fraction& o) const {
        return of(num * o.den + o.num * den, den * o.den);
    }
    Fraction operator*(const Fraction& o) const { return of(num * o.num, den * o.den); }
    bool operator==(const Fraction& o) const { return num == o.num && den == o.den; }

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// ---------------------------------------------------------------------------
// Classical category utility over labelled data, in exact fractions.
//
// clusters[k][i][j] is the label of attribute j for member i of cluster k;
// value_sets[j] is the declared label set of attribute j. Terms are emitted
// cluster-major, then attribute, then declared value — the same order the
// engine reports.

struct FractionTerm {
    Fraction weight, predictability, predictiveness;

    Fraction product() const { return weight * predictability * predictiveness; }
};

struct FractionReport {
    Fraction total{0, 1};
    std::vector<FractionTerm> terms;
};

inline FractionReport nominal_cu_exact(
    const std::vector<std::vector<std::vector<std::string>>>& clusters,
    const std::vector<std::vector<std::string>>& value_sets) {
    long long l = 0;
    for (const auto& c : clusters) l += static_cast<long long>(c.size());

    FractionReport report;
    for (const auto& cluster : clusters) {
        const long long lk = static_cast<long long>(cluster.size());
        for (std::size_t j = 0; j < value_sets.size(); ++j) {
            for (const auto& value : value_sets[j]) {
                long long in_cluster = 0;
                for (const auto& member : cluster)
                    if (member[j] == value) ++in_cluster;
                long long in_universe = 0;
                for (const auto& other : clusters)
                    for (const auto& member : other)
                        if (member[j] == value) ++in_universe;

                FractionTerm t;
                t.weight = Fraction::of(in_universe, l);
                t.predictability = Fraction::of(in_cluster, lk);
                t.predictiveness = in_universe > 0 ? Fraction::of(in_cluster, in_universe)
                                                   : Fraction{0, 1};
                report.total = report.total + t.product();
                report.terms.push_back(t);
            }
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Graded category utility over numeric data: the membership kernel, the
// per-cluster mean (predictability), the universe-share (predictiveness),
// the universe mean (weight), and their triple-product sum, all as literal
// loops over the raw values.

struct GridRef {
    double lo = 0.0;
    double hi = 0.0;
    double sigma = 1.0;
    std::vector<double> centers;
};

inline GridRef to_ref(const cobweb::Grid& g) { return {g.lo, g.hi, g.sigma, g.centers}; }

inline double membership_ref(double a, const GridRef& g, std::size_t node, bool rectangular) {
    if (!rectangular) {
        const double d = a - g.centers[node];
        return std::exp(-d * d / (2.0 * g.sigma * g.sigma));
    }
    std::size_t idx = 0;
    if (g.hi > g.lo) {
        const double w = (g.hi - g.lo) / static_cast<double>(g.centers.size());
        const double r = std::floor((a - g.lo) / w);
        const double last = static_cast<double>(g.centers.size() - 1);
        idx = static_cast<std::size_t>(std::min(std::max(r, 0.0), last));
    }
    return idx == node ? 1.0 : 0.0;
}

struct GradedTerm {
    double weight = 0.0;
    double predictability = 0.0;
    double predictiveness = 0.0;
    double product = 0.0;
};

struct GradedReport {
    double total = 0.0;
    std::vector<GradedTerm> terms;
};

// clusters[k][i][j] is attribute j of member i of cluster k.
inline GradedReport graded_cu(const std::vector<std::vector<std::vector<double>>>& clusters,
                              const std::vector<GridRef>& grids, bool rectangular) {
    std::size_t l = 0;
    for (const auto& c : clusters) l += c.size();

    GradedReport report;
    for (const auto& cluster : clusters) {
        for (std::size_t j = 0; j < grids.size(); ++j) {
            const GridRef& g = grids[j];
            for (std::size_t node = 0; node < g.centers.size(); ++node) {
                double cluster_mass = 0.0;
                for (const auto& member : cluster)
                    cluster_mass += membership_ref(member[j], g, node, rectangular);
                double universe_mass = 0.0;
                for (const auto& other : clusters)
                    for (const auto& member : other)
                        universe_mass += membership_ref(member[j], g, node, rectangular);

                GradedTerm t;
                t.weight = universe_mass / static_cast<double>(l);
                t.predictability = cluster_mass / static_cast<double>(cluster.size());
                t.predictiveness = universe_mass > 0.0 ? cluster_mass / universe_mass : 0.0;
                t.product = t.weight * t.predictability * t.predictiveness;
                report.total += t.product;
                report.terms.push_back(t);
            }
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Shape adapters from the library's dataset/partition types to the nested
// vectors the reference implementations take.

inline std::vector<std::vector<std::vector<double>>> numeric_clusters(
    const cobweb::Dataset& data, const cobweb::Partition& p) {
    std::vector<std::vector<std::vector<double>>> out;
    for (const auto& ids : p.clusters) {
        std::vector<std::vector<double>> cluster;
        for (std::size_t id : ids) {
            std::vector<double> row;
            for (const auto& v : data.instances[id].values) row.push_back(cobweb::as_number(v));
            cluster.push_back(std::move(row));
        }
        out.push_back(std::move(cluster));
    }
    return out;
}

inline std::vector<std::vector<std::vector<std::string>>> label_clusters(
    const cobweb::Dataset& data, const cobweb::Partition& p) {
    std::vector<std::vector<std::vector<std::string>>> out;
    for (const auto& ids : p.clusters) {
        std::vector<std::vector<std::string>> cluster;
        for (std::size_t id : ids) {
            std::vector<std::string> row;
            for (const auto& v : data.instances[id].values) row.push_back(cobweb::as_label(v));
            cluster.push_back(std::move(row));
        }
        out.push_back(std::move(cluster));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Random generators shared by the property tests and the acceptance gate.

// A numeric dataset with 1..max_instances rows and 1..max_attributes columns.
// Columns mix plain uniform draws with occasional repeated and constant
// values so degenerate grids and duplicate instances occur.
inline cobweb::Dataset random_numeric_dataset(std::mt19937_64& rng, std::size_t max_instances,
                                              std::size_t max_attributes) {
    std::uniform_int_distribution<std::size_t> n_dist(1, max_instances);
    std::uniform_int_distribution<std::size_t> m_dist(1, max_attributes);
    std::uniform_real_distribution<double> value(-10.0, 10.0);
    std::uniform_int_distribution<int> style(0, 3);

    const std::size_t n = n_dist(rng);
    const std::size_t m = m_dist(rng);

    std::vector<cobweb::AttributeDecl> decls;
    for (std::size_t j = 0; j < m; ++j)
        decls.push_back({"x" + std::to_string(j + 1), cobweb::AttrKind::Numeric, {}});

    cobweb::Dataset data;
    data.schema = cobweb::Schema(std::move(decls));
    std::vector<std::vector<double>> columns(m);
    for (std::size_t j = 0; j < m; ++j) {
        const int s = style(rng);
        for (std::size_t i = 0; i < n; ++i) {
            double v;
            if (s == 0 && i > 0 && (rng() & 1u) != 0) {
                v = columns[j][rng() % i];  // repeat an earlier value
            } else if (s == 1) {
                v = columns[j].empty() ? value(rng) : columns[j][0];  // constant column
            } else {
                v = value(rng);
            }
            columns[j].push_back(v);
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        cobweb::Instance inst;
        for (std::size_t j = 0; j < m; ++j) inst.values.emplace_back(columns[j][i]);
        data.instances.push_back(std::move(inst));
    }
    return data;
}

// A uniformly random assignment of n instances to 1..n clusters, compacted
// so every cluster is non-empty.
inline cobweb::Partition random_partition(std::mt19937_64& rng, std::size_t n) {
    std::uniform_int_distribution<std::size_t> k_dist(1, n);
    const std::size_t k = k_dist(rng);
    std::vector<std::vector<std::size_t>> buckets(k);
    for (std::size_t i = 0; i < n; ++i) buckets[rng() % k].push_back(i);

    cobweb::Partition p;
    for (auto& b : buckets)
        if (!b.empty()) p.clusters.push_back(std::move(b));
    return p;
}

// Two well-separated pairs of points in two numeric attributes, plus the
// partition that groups each pair (separated) and the one that mixes them
// (crossed). The pair gap is far larger than the within-pair jitter.
struct QuadConfig {
    cobweb::Dataset data;
    cobweb::Partition separated;
    cobweb::Partition crossed;
};

inline QuadConfig separable_quad(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> center(-2.0, 2.0);
    std::uniform_real_distribution<double> gap(6.0, 20.0);
    std::uniform_real_distribution<double> jitter(-1.0, 1.0);

    const double gx = gap(rng), gy = gap(rng);
    const std::array<double, 2> ax{center(rng), center(rng)};
    const std::array<double, 2> bx{ax[0] + gx, ax[1] + gy};

    QuadConfig q;
    std::vector<cobweb::AttributeDecl> decls{{"x1", cobweb::AttrKind::Numeric, {}},
                                             {"x2", cobweb::AttrKind::Numeric, {}}};
    q.data.schema = cobweb::Schema(std::move(decls));
    for (int i = 0; i < 2; ++i) {
        cobweb::Instance inst;
        inst.values.emplace_back(ax[0] + jitter(rng));
        inst.values.emplace_back(ax[1] + jitter(rng));
        q.data.instances.push_back(std::move(inst));
    }
    for (int i = 0; i < 2; ++i) {
        cobweb::Instance inst;
        inst.values.emplace_back(bx[0] + jitter(rng));
        inst.values.emplace_back(bx[1] + jitter(rng));
        q.data.instances.push_back(std::move(inst));
    }
    q.separated.clusters = {{0, 1}, {2, 3}};
    q.crossed.clusters = {{0, 2}, {1, 3}};
    return q;
}

}  // namespace oracle
