#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mopg/orchestrator.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Multi-objective policy-gradient search over enumerable decision spaces"};
    app.require_subcommand(1);

    std::string run_config;
    std::vector<std::uint64_t> run_seeds;
    std::string run_out;
    auto* run = app.add_subcommand("run", "Execute the configured algorithm for every seed");
    run->add_option("--config", run_config, "Config file (.toml or .json)")->required();
    run->add_option("--seed", run_seeds, "Override the config's seed list (repeatable)");
    run->add_option("--out", run_out, "Override the output directory");

    std::string oracle_config;
    auto* oracle = app.add_subcommand("oracle", "Brute-force the exact Pareto front");
    oracle->add_option("--config", oracle_config, "Config file (.toml or .json)")->required();

    std::vector<std::string> compare_dirs;
    std::string compare_out = ".";
    auto* compare = app.add_subcommand("compare", "Aggregate per-run metrics into a comparison table");
    compare->add_option("dirs", compare_dirs, "Run directories holding metrics.json")->required();
    compare->add_option("--out", compare_out, "Directory for comparison.csv / comparison.json");

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) {
        const std::optional<std::string> out =
            run_out.empty() ? std::nullopt : std::optional<std::string>(run_out);
        return mopg::cmd_run(run_config, run_seeds, out, std::cout);
    }
    if (oracle->parsed()) return mopg::cmd_oracle(oracle_config, std::cout);
    std::vector<std::filesystem::path> dirs(compare_dirs.begin(), compare_dirs.end());
    return mopg::cmd_compare(dirs, compare_out, std::cout);
}
