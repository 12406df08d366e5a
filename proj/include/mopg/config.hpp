#ifndef MOPG_CONFIG_HPP
#define MOPG_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "mopg/algorithms.hpp"

namespace mopg {

// Invalid or inconsistent run configuration; the message names the field.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Converts a small TOML subset to JSON: [table] / [table.sub] headers and
// key = value lines where value is a string, integer, float, boolean, or a
// single-line array of those. Enough for run configs; anything fancier
// should just use the JSON mirror.
nlohmann::json toml_to_json(const std::string& text);

// Reads a config file; .toml parses through the subset reader, everything
// else as JSON.
nlohmann::json load_config_file(const std::filesystem::path& path);

// Fully resolved run configuration. All defaults are embedded, so a config
// naming only the algorithm runs the stock two-objective benchmark.
struct RunConfig {
    SequenceSpace space;
    std::size_t m = 2;
    EvaluatorKind evaluator_kind = EvaluatorKind::Deterministic;
    double sigma = 0.0;

    std::string algorithm; // adf | adc | rs | mdf
    AdfConfig adf;
    AdcConfig adc;
    long rs_steps = 6000;
    MdfConfig mdf;

    double learning_rate = 0.0; // resolved per algorithm when unset
    double baseline_decay = 0.95;
    double tanh_constant = 1.5;
    UpdateRule update_rule = UpdateRule::GradientAscent;
    int batch_size = 1;

    std::vector<std::uint64_t> seeds;
    std::string out_dir = "out";
    int histogram_bins = 10;

    nlohmann::json canonical;  // normalized config, the fingerprint input
    std::string config_fingerprint;
    std::string space_fingerprint;
};

// Validates the raw config and fills in every default. `base_dir` anchors
// relative space-file paths. Throws ConfigError with field-level messages.
RunConfig resolve_config(const nlohmann::json& raw, const std::filesystem::path& base_dir = ".");

RunConfig load_run_config(const std::filesystem::path& path);

// Builds the policy an algorithm run starts from.
PolicyParams initial_policy(const RunConfig& cfg);

Evaluator make_run_evaluator(const RunConfig& cfg);

} // namespace mopg

#endif
