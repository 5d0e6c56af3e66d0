#include "cobweb/cli.hpp"

#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "cobweb/csv.hpp"
#include "cobweb/snapshot.hpp"
#include "cobweb/utility.hpp"

namespace cobweb {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string timestamp_utc() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

char delimiter_of(const RunConfig& cfg) {
    if (cfg.delimiter.size() != 1)
        throw std::invalid_argument("delimiter must be a single character");
    return cfg.delimiter[0];
}

ordered_json config_json(const RunConfig& cfg) {
    return ordered_json{{"input", cfg.input},
                        {"schema", cfg.schema_path ? ordered_json(*cfg.schema_path)
                                                   : ordered_json(nullptr)},
                        {"membership", cfg.membership},
                        {"grid_size", cfg.grid_size},
                        {"sigma", cfg.sigma},
                        {"seed", cfg.seed},
                        {"literal_centers", cfg.literal_centers},
                        {"delimiter", cfg.delimiter}};
}

Dataset load_input(const RunConfig& cfg, Mode mode) {
    LoadOptions opt;
    opt.delimiter = delimiter_of(cfg);
    opt.force_all_nominal = mode == Mode::Nominal;
    return load_csv(cfg.input, cfg.schema_path, opt);
}

void write_text(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    out << content;
    if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

void write_manifest(const std::filesystem::path& dir, ordered_json manifest) {
    manifest["timestamp_utc"] = timestamp_utc();
    write_text(dir / "manifest.json", manifest.dump(2) + "\n");
}

ordered_json manifest_base(const RunConfig& cfg, const std::string& command) {
    return ordered_json{{"format", "cobweb-manifest"},
                        {"version", 1},
                        {"command", command},
                        {"config_hash", config_hash(cfg)},
                        {"seed", cfg.seed},
                        {"config", config_json(cfg)}};
}

std::filesystem::path ensure_out_dir(const RunConfig& cfg) {
    std::filesystem::path dir(cfg.out_dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace

Mode parse_mode(const std::string& s) {
    if (s == "nominal") return Mode::Nominal;
    if (s == "rect") return Mode::Rect;
    if (s == "fuzzy") return Mode::Fuzzy;
    throw std::invalid_argument("unknown membership mode '" + s +
                                "' (expected nominal, rect, or fuzzy)");
}

SigmaPolicy parse_sigma(const std::string& s) {
    if (s == "cell") return SigmaPolicy::cell_width();
    if (s.rfind("fixed:", 0) == 0) {
        const std::string value = s.substr(6);
        try {
            std::size_t used = 0;
            const double v = std::stod(value, &used);
            if (used != value.size() || !(v > 0.0)) throw std::invalid_argument(value);
            return SigmaPolicy::fixed_value(v);
        } catch (const std::exception&) {
            throw std::invalid_argument("invalid sigma '" + s +
                                        "' (expected cell or fixed:<positive value>)");
        }
    }
    throw std::invalid_argument("invalid sigma '" + s +
                                "' (expected cell or fixed:<positive value>)");
}

std::string config_hash(const RunConfig& cfg) {
    return hex64(fnv1a64(config_json(cfg).dump()));
}

TreeConfig tree_config(const RunConfig& cfg) {
    const Mode mode = parse_mode(cfg.membership);
    TreeConfig tc;
    // In nominal mode every column is nominal, so the numeric kernel choice
    // is inert; rectangular is the conventional placeholder.
    tc.membership = mode == Mode::Fuzzy ? MembershipKind::Gaussian : MembershipKind::Rectangular;
    tc.grid_size = cfg.grid_size;
    tc.sigma = parse_sigma(cfg.sigma);
    tc.literal_centers = cfg.literal_centers;
    return tc;
}

int cmd_fit(const RunConfig& cfg, std::ostream& out) {
    const Mode mode = parse_mode(cfg.membership);
    const Dataset data = load_input(cfg, mode);
    const auto dir = ensure_out_dir(cfg);

    Hierarchy h(data.schema, tree_config(cfg));
    for (const auto& inst : data.instances) h.insert(inst);

    const SnapshotMeta meta{config_hash(cfg), cfg.seed};
    save_tree((dir / "tree.json").string(), h, meta);
    write_text(dir / "tree.dot", tree_to_dot(h, meta));

    ordered_json manifest = manifest_base(cfg, "fit");
    manifest["dataset"] = ordered_json{{"path", cfg.input},
                                       {"instances", data.instances.size()},
                                       {"attributes", data.schema.arity()}};
    const bool fitted = !h.empty();
    const std::size_t root_children =
        fitted && !h.root().leaf() ? h.root().children.size() : (fitted ? 1 : 0);
    ordered_json result{{"instances", h.size()},
                        {"node_count", h.node_count()},
                        {"leaf_count", h.leaf_count()},
                        {"root_children", root_children},
                        {"structure_hash", hex64(h.structure_hash())},
                        {"moves", ordered_json{{"insert", h.move_counts().insert},
                                               {"create", h.move_counts().create},
                                               {"merge", h.move_counts().merge},
                                               {"split", h.move_counts().split}}}};
    result["top_utility"] = fitted ? ordered_json(h.root_utility().total) : ordered_json(nullptr);
    manifest["result"] = std::move(result);
    manifest["outputs"] = ordered_json{{"tree", "tree.json"}, {"dot", "tree.dot"}};
    write_manifest(dir, std::move(manifest));

    out << "fit: " << h.size() << " instances, " << h.node_count() << " nodes, " << root_children
        << " root children";
    if (fitted) out << ", top-level utility " << fmt_double(h.root_utility().total);
    out << "\n";
    return 0;
}

int cmd_score(const RunConfig& cfg, const std::string& partition_path, std::ostream& out) {
    const Mode mode = parse_mode(cfg.membership);
    const Dataset data = load_input(cfg, mode);
    const auto dir = ensure_out_dir(cfg);

    std::vector<std::string> labels;
    const Partition p =
        load_partition(partition_path, data.instances.size(), &labels, delimiter_of(cfg));

    const TreeConfig tc = tree_config(cfg);
    UtilityReport report;
    if (mode == Mode::Nominal) {
        report = nominal_cu(data, p);
    } else {
        const GridSet grids = dataset_grids(data, tc.grid_size, tc.sigma, tc.literal_centers);
        report = mixed_cu(data, p, grids, tc.membership);
    }
    for (auto& term : report.terms) term.cluster_label = labels[term.cluster];

    const std::string table = report.to_table();
    write_text(dir / "utility.tsv", table);

    ordered_json manifest = manifest_base(cfg, "score");
    manifest["dataset"] = ordered_json{{"path", cfg.input},
                                       {"instances", data.instances.size()},
                                       {"attributes", data.schema.arity()}};
    manifest["partition"] =
        ordered_json{{"path", partition_path}, {"clusters", labels}};
    manifest["result"] = ordered_json{{"total", report.total}, {"terms", report.terms.size()}};
    manifest["outputs"] = ordered_json{{"table", "utility.tsv"}};
    write_manifest(dir, std::move(manifest));

    out << table;
    return 0;
}

int cmd_bench(const RunConfig& cfg, const BenchmarkSpec& spec, std::ostream& out) {
    const auto dir = ensure_out_dir(cfg);
    const BenchResult res = run_benchmark(spec, tree_config(cfg), cfg.seed);

    const std::string table = res.to_table();
    write_text(dir / "bench.tsv", table);

    ordered_json manifest = manifest_base(cfg, "bench");
    manifest["benchmark"] = ordered_json{{"blobs", spec.blobs},
                                         {"dims", spec.dims},
                                         {"separation", spec.separation},
                                         {"data_sigma", spec.data_sigma},
                                         {"per_blob", spec.per_blob},
                                         {"trials", spec.trials},
                                         {"random_partitions", spec.random_partitions},
                                         {"jitter", spec.jitter}};
    manifest["result"] = ordered_json{{"mean_ari_rect", res.mean_ari_rect},
                                      {"mean_ari_fuzzy", res.mean_ari_fuzzy},
                                      {"mean_rank_rect", res.mean_rank_rect},
                                      {"mean_rank_fuzzy", res.mean_rank_fuzzy},
                                      {"mean_agree_rect", res.mean_agree_rect},
                                      {"mean_agree_fuzzy", res.mean_agree_fuzzy}};
    manifest["outputs"] = ordered_json{{"table", "bench.tsv"}};
    write_manifest(dir, std::move(manifest));

    out << table;
    return 0;
}

}  // namespace cobweb
