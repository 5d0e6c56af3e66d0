#include "cobweb/bench.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "cobweb/utility.hpp"

namespace cobweb {

void require_spec(const BenchmarkSpec& spec) {
    if (spec.blobs < 2) throw std::invalid_argument("benchmark: need at least 2 blobs");
    if (spec.dims < 1) throw std::invalid_argument("benchmark: need at least 1 dimension");
    if (spec.per_blob < 2) throw std::invalid_argument("benchmark: need at least 2 points per blob");
    if (spec.trials < 1) throw std::invalid_argument("benchmark: need at least 1 trial");
    if (!(spec.data_sigma > 0.0)) throw std::invalid_argument("benchmark: data sigma must be positive");
    if (!(spec.jitter > 0.0)) throw std::invalid_argument("benchmark: jitter must be positive");
}

namespace {

double comb2(double x) { return x * (x - 1.0) / 2.0; }

// Contingency sums shared by both agreement indices.
struct PairCounts {
    double nij2 = 0.0;  // sum over cells of C(n_ij, 2)
    double a2 = 0.0;    // sum over rows of C(a_i, 2)
    double b2 = 0.0;    // sum over columns of C(b_j, 2)
    double total = 0.0; // C(n, 2)
};

PairCounts pair_counts(std::span<const std::size_t> a, std::span<const std::size_t> b) {
    if (a.size() != b.size())
        throw std::invalid_argument("agreement index: label vectors differ in length");
    const std::size_t ka = a.empty() ? 0 : *std::max_element(a.begin(), a.end()) + 1;
    const std::size_t kb = b.empty() ? 0 : *std::max_element(b.begin(), b.end()) + 1;
    std::vector<std::size_t> table(ka * kb, 0), ra(ka, 0), rb(kb, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        ++table[a[i] * kb + b[i]];
        ++ra[a[i]];
        ++rb[b[i]];
    }
    PairCounts c;
    for (std::size_t v : table) c.nij2 += comb2(static_cast<double>(v));
    for (std::size_t v : ra) c.a2 += comb2(static_cast<double>(v));
    for (std::size_t v : rb) c.b2 += comb2(static_cast<double>(v));
    c.total = comb2(static_cast<double>(a.size()));
    return c;
}

}  // namespace

double adjusted_rand_index(std::span<const std::size_t> a, std::span<const std::size_t> b) {
    const PairCounts c = pair_counts(a, b);
    if (c.total == 0.0) return 1.0;
    const double expected = c.a2 * c.b2 / c.total;
    const double maximum = 0.5 * (c.a2 + c.b2);
    if (maximum == expected)  // both labelings trivial: all-singletons or one cluster
        return c.nij2 == expected ? 1.0 : 0.0;
    return (c.nij2 - expected) / (maximum - expected);
}

double rand_index(std::span<const std::size_t> a, std::span<const std::size_t> b) {
    const PairCounts c = pair_counts(a, b);
    if (c.total == 0.0) return 1.0;
    const double disagreements = c.a2 + c.b2 - 2.0 * c.nij2;
    return (c.total - disagreements) / c.total;
}

namespace {

Schema numeric_schema(std::size_t dims) {
    std::vector<AttributeDecl> decls;
    for (std::size_t d = 0; d < dims; ++d)
        decls.push_back({"x" + std::to_string(d + 1), AttrKind::Numeric, {}});
    return Schema(std::move(decls));
}

std::vector<std::size_t> root_labels(const Hierarchy& h) {
    const Partition p = h.root_partition();
    std::vector<std::size_t> labels(h.size(), 0);
    for (std::size_t k = 0; k < p.clusters.size(); ++k)
        for (std::size_t id : p.clusters[k]) labels[id] = k;
    return labels;
}

Partition partition_from_labels(std::span<const std::size_t> labels) {
    Partition p;
    const std::size_t k = labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
    p.clusters.resize(k);
    for (std::size_t i = 0; i < labels.size(); ++i) p.clusters[labels[i]].push_back(i);
    p.clusters.erase(std::remove_if(p.clusters.begin(), p.clusters.end(),
                                    [](const auto& c) { return c.empty(); }),
                     p.clusters.end());
    return p;
}

Hierarchy fit_all(const Dataset& data, TreeConfig cfg, MembershipKind kind) {
    cfg.membership = kind;
    Hierarchy h(data.schema, std::move(cfg));
    for (const auto& inst : data.instances) h.insert(inst);
    return h;
}

}  // namespace

BenchResult run_benchmark(const BenchmarkSpec& spec, const TreeConfig& base, std::uint64_t seed) {
    require_spec(spec);
    BenchResult res;
    const Schema schema = numeric_schema(spec.dims);

    for (std::size_t t = 0; t < spec.trials; ++t) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(t)};
        std::mt19937_64 rng(seq);
        std::normal_distribution<double> noise(0.0, spec.data_sigma);

        // Draw blob points and shuffle the arrival order.
        const std::size_t n = spec.blobs * spec.per_blob;
        std::vector<Instance> points;
        std::vector<std::size_t> truth;
        points.reserve(n);
        truth.reserve(n);
        for (std::size_t b = 0; b < spec.blobs; ++b) {
            const double mean =
                (static_cast<double>(b) - (static_cast<double>(spec.blobs) - 1.0) / 2.0) *
                spec.separation;
            for (std::size_t i = 0; i < spec.per_blob; ++i) {
                Instance inst;
                for (std::size_t d = 0; d < spec.dims; ++d)
                    inst.values.emplace_back(mean + noise(rng));
                points.push_back(std::move(inst));
                truth.push_back(b);
            }
        }
        std::vector<std::size_t> order(n);
        for (std::size_t i = 0; i < n; ++i) order[i] = i;
        std::shuffle(order.begin(), order.end(), rng);

        Dataset data;
        data.schema = schema;
        std::vector<std::size_t> labels(n);
        for (std::size_t i = 0; i < n; ++i) {
            data.instances.push_back(points[order[i]]);
            labels[i] = truth[order[i]];
        }

        TrialResult tr;
        tr.trial = t;

        const Hierarchy rect_fit = fit_all(data, base, MembershipKind::Rectangular);
        const Hierarchy fuzzy_fit = fit_all(data, base, MembershipKind::Gaussian);
        const auto rect_labels = root_labels(rect_fit);
        const auto fuzzy_labels = root_labels(fuzzy_fit);
        tr.clusters_rect = rect_fit.root_partition().clusters.size();
        tr.clusters_fuzzy = fuzzy_fit.root_partition().clusters.size();
        tr.ari_rect = adjusted_rand_index(labels, rect_labels);
        tr.ari_fuzzy = adjusted_rand_index(labels, fuzzy_labels);

        // How the generating labels score against random same-size relabelings.
        const GridSet grids =
            dataset_grids(data, base.grid_size, base.sigma, base.literal_centers);
        const Partition truth_partition = partition_from_labels(labels);
        for (MembershipKind kind : {MembershipKind::Rectangular, MembershipKind::Gaussian}) {
            const double truth_total = mixed_cu(data, truth_partition, grids, kind).total;
            std::size_t wins = 0;
            std::vector<std::size_t> shuffled = labels;
            for (std::size_t r = 0; r < spec.random_partitions; ++r) {
                std::shuffle(shuffled.begin(), shuffled.end(), rng);
                const double total =
                    mixed_cu(data, partition_from_labels(shuffled), grids, kind).total;
                if (total < truth_total) ++wins;
            }
            const double rate = spec.random_partitions == 0
                                    ? 0.0
                                    : static_cast<double>(wins) /
                                          static_cast<double>(spec.random_partitions);
            if (kind == MembershipKind::Rectangular)
                tr.rank_rect = rate;
            else
                tr.rank_fuzzy = rate;
        }

        // Probe every interior cell boundary with a straddling epsilon pair.
        for (const auto& maybe_grid : grids.per_attribute) {
            if (!maybe_grid || maybe_grid->degenerate) continue;
            const Grid& g = *maybe_grid;
            const double w = g.cell_width();
            for (std::size_t i = 1; i < g.size(); ++i) {
                const double boundary = g.lo + static_cast<double>(i) * w;
                const double below = boundary - spec.jitter / 2.0;
                const double above = boundary + spec.jitter / 2.0;
                ++tr.boundaries;
                if (rectangular_node(below, g) != rectangular_node(above, g)) ++tr.flips_rect;
                for (double c : g.centers)
                    tr.fuzzy_max_delta =
                        std::max(tr.fuzzy_max_delta,
                                 std::abs(gaussian_membership(above, c, g.sigma) -
                                          gaussian_membership(below, c, g.sigma)));
            }
        }

        // Refit after shifting every value by the jitter and compare the
        // induced top-level co-clusterings.
        Dataset shifted;
        shifted.schema = schema;
        for (const auto& inst : data.instances) {
            Instance moved;
            for (const auto& v : inst.values) moved.values.emplace_back(as_number(v) + spec.jitter);
            shifted.instances.push_back(std::move(moved));
        }
        tr.agree_rect =
            rand_index(rect_labels, root_labels(fit_all(shifted, base, MembershipKind::Rectangular)));
        tr.agree_fuzzy =
            rand_index(fuzzy_labels, root_labels(fit_all(shifted, base, MembershipKind::Gaussian)));

        res.trials.push_back(tr);
    }

    const double nt = static_cast<double>(res.trials.size());
    for (const auto& tr : res.trials) {
        res.mean_ari_rect += tr.ari_rect / nt;
        res.mean_ari_fuzzy += tr.ari_fuzzy / nt;
        res.mean_rank_rect += tr.rank_rect / nt;
        res.mean_rank_fuzzy += tr.rank_fuzzy / nt;
        res.mean_agree_rect += tr.agree_rect / nt;
        res.mean_agree_fuzzy += tr.agree_fuzzy / nt;
    }
    return res;
}

std::string BenchResult::to_table() const {
    std::string out =
        "trial\tclusters_rect\tclusters_fuzzy\tari_rect\tari_fuzzy\trank_rect\trank_fuzzy\t"
        "boundaries\tflips_rect\tfuzzy_max_delta\tagree_rect\tagree_fuzzy\n";
    for (const auto& t : trials) {
        out += std::to_string(t.trial) + '\t' + std::to_string(t.clusters_rect) + '\t' +
               std::to_string(t.clusters_fuzzy) + '\t' + fmt_double(t.ari_rect) + '\t' +
               fmt_double(t.ari_fuzzy) + '\t' + fmt_double(t.rank_rect) + '\t' +
               fmt_double(t.rank_fuzzy) + '\t' + std::to_string(t.boundaries) + '\t' +
               std::to_string(t.flips_rect) + '\t' + fmt_double(t.fuzzy_max_delta) + '\t' +
               fmt_double(t.agree_rect) + '\t' + fmt_double(t.agree_fuzzy) + '\n';
    }
    out += "mean\t-\t-\t" + fmt_double(mean_ari_rect) + '\t' + fmt_double(mean_ari_fuzzy) + '\t' +
           fmt_double(mean_rank_rect) + '\t' + fmt_double(mean_rank_fuzzy) + "\t-\t-\t-\t" +
           fmt_double(mean_agree_rect) + '\t' + fmt_double(mean_agree_fuzzy) + '\n';
    return out;
}

}  // namespace cobweb
