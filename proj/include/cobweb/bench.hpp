#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cobweb/tree.hpp"

namespace cobweb {

// Synthetic recovery benchmark: `blobs` isotropic Gaussian clusters in
// `dims` dimensions, consecutive blob means `separation` apart on every
// axis, centered on the origin. Each trial draws per_blob points per blob,
// shuffles the arrival order, fits one hierarchy per membership kind, and
// measures (a) agreement between the root partition and the generating
// labels, (b) how the true labeling's utility ranks against random
// same-size relabelings, and (c) sensitivity to an epsilon perturbation:
// per-value bin flips across cell boundaries, the maximum graded-membership
// displacement, and the pairwise co-clustering agreement between the
// original fit and a fit of the shifted dataset.
struct BenchmarkSpec {
    std::size_t blobs = 2;
    std::size_t dims = 1;
    double separation = 20.0;
    double data_sigma = 1.0;
    std::size_t per_blob = 20;
    std::size_t trials = 20;
    std::size_t random_partitions = 100;
    double jitter = 1e-6;
};

// Throws std::invalid_argument unless blobs >= 2, dims >= 1, per_blob >= 2,
// trials >= 1, data_sigma > 0, and jitter > 0.
void require_spec(const BenchmarkSpec& spec);

// Agreement between two labelings of the same instances, corrected for
// chance; 1 for identical clusterings, ~0 for independent ones. When the
// chance-correction denominator vanishes (both labelings trivial) the value
// is 1 if the labelings induce the same partition and 0 otherwise.
double adjusted_rand_index(std::span<const std::size_t> a, std::span<const std::size_t> b);

// Plain pairwise co-clustering agreement in [0, 1].
double rand_index(std::span<const std::size_t> a, std::span<const std::size_t> b);

struct TrialResult {
    std::size_t trial = 0;
    std::size_t clusters_rect = 0;  // root children of the hard-bin fit
    std::size_t clusters_fuzzy = 0;
    double ari_rect = 0.0;
    double ari_fuzzy = 0.0;
    double rank_rect = 0.0;  // fraction of random relabelings scored strictly below truth
    double rank_fuzzy = 0.0;
    std::size_t boundaries = 0;  // boundary pairs probed by the jitter experiment
    std::size_t flips_rect = 0;  // pairs whose hard bin changed
    double fuzzy_max_delta = 0.0;
    double agree_rect = 0.0;  // rand_index(original fit, jittered fit)
    double agree_fuzzy = 0.0;
};

struct BenchResult {
    std::vector<TrialResult> trials;
    double mean_ari_rect = 0.0;
    double mean_ari_fuzzy = 0.0;
    double mean_rank_rect = 0.0;
    double mean_rank_fuzzy = 0.0;
    double mean_agree_rect = 0.0;
    double mean_agree_fuzzy = 0.0;

    // Tab-separated per-trial table plus a trailing mean row.
    std::string to_table() const;
};

// Runs the full benchmark. Identical (spec, base config, seed) inputs
// reproduce identical results for a given build.
BenchResult run_benchmark(const BenchmarkSpec& spec, const TreeConfig& base, std::uint64_t seed);

}  // namespace cobweb
