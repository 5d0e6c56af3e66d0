#include <iostream>

#include <CLI11.hpp>

#include "cobweb/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"cobweb: incremental concept-hierarchy clustering"};
    app.require_subcommand(1);

    cobweb::RunConfig cfg;
    cobweb::BenchmarkSpec spec;
    std::string partition_path;

    auto add_engine_options = [&](CLI::App* sub) {
        sub->add_option("--membership", cfg.membership,
                        "evaluator: nominal, rect, or fuzzy (default fuzzy)");
        sub->add_option("--grid-size", cfg.grid_size, "numeric grid nodes per attribute")
            ->check(CLI::PositiveNumber);
        sub->add_option("--sigma", cfg.sigma, "kernel width: cell or fixed:<value>");
        sub->add_option("--seed", cfg.seed, "run seed recorded in every output");
        sub->add_option("--out-dir", cfg.out_dir, "output directory (default .)");
        sub->add_flag("--literal-centers", cfg.literal_centers,
                      "place grid centers without the half-cell offset");
    };
    auto add_input_options = [&](CLI::App* sub) {
        sub->add_option("--input", cfg.input, "dataset CSV (header row required)")
            ->required();
        sub->add_option("--schema", cfg.schema_path,
                        "sidecar schema: name,kind[,labels...] per column");
        sub->add_option("--delimiter", cfg.delimiter, "field delimiter (default ,)");
    };

    CLI::App* fit = app.add_subcommand("fit", "stream the dataset into a concept hierarchy");
    add_input_options(fit);
    add_engine_options(fit);

    CLI::App* score =
        app.add_subcommand("score", "evaluate an explicit partition of the dataset");
    add_input_options(score);
    add_engine_options(score);
    score->add_option("--partition", partition_path, "assignment file: id,cluster rows")
        ->required();

    CLI::App* bench = app.add_subcommand("bench", "synthetic cluster-recovery benchmark");
    add_engine_options(bench);
    bench->add_option("--blobs", spec.blobs, "number of generating clusters")
        ->check(CLI::PositiveNumber);
    bench->add_option("--dims", spec.dims, "numeric attributes per instance")
        ->check(CLI::PositiveNumber);
    bench->add_option("--separation", spec.separation, "distance between blob means");
    bench->add_option("--data-sigma", spec.data_sigma, "blob standard deviation")
        ->check(CLI::PositiveNumber);
    bench->add_option("--per-blob", spec.per_blob, "points drawn per blob")
        ->check(CLI::PositiveNumber);
    bench->add_option("--trials", spec.trials, "independent trials")->check(CLI::PositiveNumber);
    bench->add_option("--random-partitions", spec.random_partitions,
                      "random relabelings per ranking probe");
    bench->add_option("--jitter", spec.jitter, "perturbation used by the boundary probes")
        ->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(fit)) return cobweb::cmd_fit(cfg, std::cout);
        if (app.got_subcommand(score)) return cobweb::cmd_score(cfg, partition_path, std::cout);
        return cobweb::cmd_bench(cfg, spec, std::cout);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
