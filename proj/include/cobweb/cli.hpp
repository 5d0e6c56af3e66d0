#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "cobweb/bench.hpp"
#include "cobweb/tree.hpp"

namespace cobweb {

// Shared command-line configuration. `membership` selects the evaluator:
// "nominal" (classical counts over labels; numeric columns are coerced to
// nominal over their verbatim cell strings), "rect" (hard prediscretization
// over a uniform grid), or "fuzzy" (graded Gaussian memberships).
struct RunConfig {
    std::string input;
    std::optional<std::string> schema_path;
    std::string membership = "fuzzy";
    std::size_t grid_size = 4;
    std::string sigma = "cell";  // "cell" or "fixed:<value>"
    std::uint64_t seed = 0;
    std::string out_dir = ".";
    bool literal_centers = false;
    std::string delimiter = ",";
};

enum class Mode { Nominal, Rect, Fuzzy };

Mode parse_mode(const std::string& s);
SigmaPolicy parse_sigma(const std::string& s);

// 16-hex-digit digest of every result-affecting config field (the output
// directory is deliberately excluded).
std::string config_hash(const RunConfig& cfg);

// Builds the engine configuration implied by a RunConfig.
TreeConfig tree_config(const RunConfig& cfg);

// Fits a hierarchy over the input rows in file order and writes tree.json,
// tree.dot, and manifest.json into out_dir. Prints a one-line summary.
int cmd_fit(const RunConfig& cfg, std::ostream& out);

// Scores an explicit instance-to-cluster assignment with the configured
// evaluator; prints the per-term table and writes utility.tsv plus
// manifest.json into out_dir.
int cmd_score(const RunConfig& cfg, const std::string& partition_path, std::ostream& out);

// Runs the synthetic recovery benchmark and writes bench.tsv plus
// manifest.json into out_dir. Prints the per-trial table.
int cmd_bench(const RunConfig& cfg, const BenchmarkSpec& spec, std::ostream& out);

}  // namespace cobweb
