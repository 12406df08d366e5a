#include "mopg/orchestrator.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <thread>

#include "mopg/metrics.hpp"
#include "mopg/run_io.hpp"

namespace mopg {

RunRecord execute_run(const RunConfig& cfg, std::uint64_t seed) {
    RngStream rng = make_stream(seed);
    const Evaluator evaluator = make_run_evaluator(cfg);
    std::optional<RunRecord> record;
    if (cfg.algorithm == "adf") {
        record = run_adf(cfg.space, evaluator, initial_policy(cfg), cfg.adf, rng);
    } else if (cfg.algorithm == "adc") {
        record = run_adc(cfg.space, evaluator, initial_policy(cfg), cfg.adc, rng);
    } else if (cfg.algorithm == "rs") {
        record = run_random(cfg.space, evaluator, cfg.m, cfg.rs_steps, rng);
    } else if (cfg.algorithm == "mdf") {
        record = run_mdf(cfg.space, evaluator, initial_policy(cfg), cfg.mdf, rng);
    } else {
        throw ConfigError("config: unknown algorithm '" + cfg.algorithm + "'");
    }
    record->seed = seed;
    record->config_fingerprint = cfg.config_fingerprint;
    return std::move(*record);
}

std::pair<double, double> mean_sd(const std::vector<double>& values) {
    if (values.empty()) return {0.0, 0.0};
    double sum = 0.0;
    for (double v : values) sum += v;
    const double mean = sum / static_cast<double>(values.size());
    if (values.size() < 2) return {mean, 0.0};
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return {mean, std::sqrt(ss / static_cast<double>(values.size() - 1))};
}

namespace {

std::size_t worker_count(std::size_t jobs) {
    std::size_t n = std::thread::hardware_concurrency();
    if (const char* env = std::getenv("MOPG_WORKERS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v >= 1) n = static_cast<std::size_t>(v);
    }
    if (n == 0) n = 1;
    return std::min(n, jobs);
}

struct SeedResult {
    std::uint64_t seed = 0;
    nlohmann::json metrics;
    std::string error; // empty when the run succeeded
};

} // namespace

int cmd_run(const std::filesystem::path& config_path,
            const std::vector<std::uint64_t>& seed_overrides,
            const std::optional<std::string>& out_override, std::ostream& log) {
    RunConfig cfg;
    try {
        cfg = load_run_config(config_path);
        if (!seed_overrides.empty()) {
            cfg.seeds = seed_overrides;
            std::set<std::uint64_t> unique(cfg.seeds.begin(), cfg.seeds.end());
            if (unique.size() != cfg.seeds.size())
                throw ConfigError("config: --seed overrides hold duplicates");
        }
        if (out_override) cfg.out_dir = *out_override;
    } catch (const std::exception& e) {
        log << "error: " << e.what() << "\n";
        return kExitConfig;
    }

    const std::filesystem::path algo_dir = std::filesystem::path(cfg.out_dir) / cfg.algorithm;
    std::vector<SeedResult> results(cfg.seeds.size());
    std::atomic<std::size_t> next{0};

    auto work = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cfg.seeds.size()) return;
            SeedResult& r = results[i];
            r.seed = cfg.seeds[i];
            try {
                RunRecord record = execute_run(cfg, r.seed);
                nlohmann::json metrics = run_metrics_json(record, cfg.histogram_bins);
                metrics["space_fingerprint"] = cfg.space_fingerprint;
                write_run(algo_dir / std::to_string(r.seed), record, metrics);
                r.metrics = std::move(metrics);
            } catch (const std::exception& e) {
                r.error = e.what();
            }
        }
    };

    const std::size_t n_workers = worker_count(cfg.seeds.size());
    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < n_workers; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    // Summary, merged deterministically in seed order.
    std::vector<double> areas, volumes;
    nlohmann::json per_seed = nlohmann::json::array();
    nlohmann::json failed = nlohmann::json::array();
    for (const auto& r : results) {
        if (!r.error.empty()) {
            per_seed.push_back({{"seed", r.seed}, {"error", r.error}});
            failed.push_back(r.seed);
            log << "seed " << r.seed << " failed: " << r.error << "\n";
            continue;
        }
        areas.push_back(r.metrics.at("dominated_area").get<double>());
        volumes.push_back(r.metrics.at("hypervolume").get<double>());
        per_seed.push_back({{"seed", r.seed},
                            {"dominated_area", r.metrics.at("dominated_area")},
                            {"hypervolume", r.metrics.at("hypervolume")},
                            {"front_size", r.metrics.at("front_size")}});
    }
    const auto [area_mean, area_sd] = mean_sd(areas);
    const auto [hv_mean, hv_sd] = mean_sd(volumes);
    nlohmann::json summary{
        {"algorithm", cfg.algorithm},
        {"config_fingerprint", cfg.config_fingerprint},
        {"space_fingerprint", cfg.space_fingerprint},
        {"seeds", cfg.seeds},
        {"dominated_area", {{"mean", area_mean}, {"sd", area_sd}}},
        {"hypervolume", {{"mean", hv_mean}, {"sd", hv_sd}}},
        {"per_seed", per_seed},
        {"failed_seeds", failed},
    };
    write_json_atomic(std::filesystem::path(cfg.out_dir) / "summary.json", summary);
    log << cfg.algorithm << ": " << areas.size() << "/" << cfg.seeds.size()
        << " seeds done, dominated area mean " << area_mean << " sd " << area_sd << "\n";
    return failed.empty() ? kExitOk : kExitRuntime;
}

int cmd_oracle(const std::filesystem::path& config_path, std::ostream& log) {
    RunConfig cfg;
    try {
        cfg = load_run_config(config_path);
    } catch (const std::exception& e) {
        log << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    if (cfg.evaluator_kind != EvaluatorKind::Deterministic) {
        log << "oracle refusal: the oracle needs a deterministic evaluator; this config uses a "
               "noisy surrogate\n";
        return kExitOracleRefusal;
    }
    try {
        const Evaluator evaluator = make_run_evaluator(cfg);
        const ParetoArchive front = brute_force_front(cfg.space, evaluator, cfg.m);
        const auto norm = NormalizationSpec::from_objectives(front.spec());
        const std::vector<double> origin(cfg.m, 0.0);
        nlohmann::json metrics{
            {"front_size", front.size()},
            {"hypervolume", hypervolume(front, origin, norm)},
            {"dominated_area",
             cfg.m == 2 ? dominated_area_2d(front, norm) : hypervolume(front, origin, norm)},
            {"space_fingerprint", cfg.space_fingerprint},
            {"cardinality", cfg.space.cardinality()},
        };
        const std::filesystem::path out(cfg.out_dir);
        write_json_atomic(out / "oracle_front.json", archive_to_json(front));
        write_json_atomic(out / "oracle_metrics.json", metrics);
        log << "oracle: front size " << front.size() << " over " << cfg.space.cardinality()
            << " encodings, dominated area " << metrics["dominated_area"].get<double>() << "\n";
        return kExitOk;
    } catch (const CapExceeded& e) {
        log << "oracle refusal: " << e.what() << "\n";
        return kExitOracleRefusal;
    } catch (const std::exception& e) {
        log << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}

int cmd_compare(const std::vector<std::filesystem::path>& run_dirs,
                const std::filesystem::path& out_dir, std::ostream& log) {
    if (run_dirs.empty()) {
        log << "error: compare needs at least one run directory\n";
        return kExitConfig;
    }
    struct RunMetrics {
        std::string algorithm;
        nlohmann::json j;
    };
    std::vector<RunMetrics> runs;
    nlohmann::json reference_norm;
    std::string reference_space;
    for (const auto& dir : run_dirs) {
        const auto path = dir / "metrics.json";
        std::ifstream f(path);
        if (!f.good()) {
            log << "error: cannot open " << path.string() << "\n";
            return kExitConfig;
        }
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(f);
        } catch (const nlohmann::json::parse_error& e) {
            log << "error: " << path.string() << ": " << e.what() << "\n";
            return kExitConfig;
        }
        const std::string space_fp = j.value("space_fingerprint", "");
        const nlohmann::json norm = j.value("normalization", nlohmann::json::object());
        if (runs.empty()) {
            reference_space = space_fp;
            reference_norm = norm;
        } else if (space_fp != reference_space || norm != reference_norm) {
            log << "refusal: " << dir.string()
                << " was produced on a different space or normalization; runs are incomparable\n";
            return kExitConfig;
        }
        runs.push_back({j.value("algorithm", "unknown"), std::move(j)});
    }

    std::map<std::string, std::vector<const nlohmann::json*>> by_algo;
    for (const auto& r : runs) by_algo[r.algorithm].push_back(&r.j);

    nlohmann::json table = nlohmann::json::array();
    std::string csv = "algorithm,runs,dominated_area_mean,dominated_area_sd,"
                      "hypervolume_mean,hypervolume_sd,front_size_mean\n";
    for (const auto& [algo, metrics] : by_algo) {
        std::vector<double> areas, volumes, fronts;
        for (const auto* j : metrics) {
            areas.push_back(j->at("dominated_area").get<double>());
            volumes.push_back(j->at("hypervolume").get<double>());
            fronts.push_back(j->at("front_size").get<double>());
        }
        const auto [area_mean, area_sd] = mean_sd(areas);
        const auto [hv_mean, hv_sd] = mean_sd(volumes);
        const auto [front_mean, front_sd] = mean_sd(fronts);

        // Bin-wise mean of the per-run histograms, per axis.
        nlohmann::json hists = nlohmann::json::object();
        if (metrics.front()->contains("histograms")) {
            for (const auto& [axis, first_hist] : metrics.front()->at("histograms").items()) {
                std::vector<double> mean_bins(first_hist.size(), 0.0);
                for (const auto* j : metrics) {
                    const auto& h = j->at("histograms").at(axis);
                    for (std::size_t b = 0; b < mean_bins.size() && b < h.size(); ++b)
                        mean_bins[b] += h[b].get<double>();
                }
                for (auto& v : mean_bins) v /= static_cast<double>(metrics.size());
                hists[axis] = mean_bins;
            }
        }
        table.push_back({{"algorithm", algo},
                         {"runs", metrics.size()},
                         {"dominated_area", {{"mean", area_mean}, {"sd", area_sd}}},
                         {"hypervolume", {{"mean", hv_mean}, {"sd", hv_sd}}},
                         {"front_size_mean", front_mean},
                         {"histograms", hists}});
        csv += algo + "," + std::to_string(metrics.size()) + "," + format_double(area_mean) + "," +
               format_double(area_sd) + "," + format_double(hv_mean) + "," + format_double(hv_sd) +
               "," + format_double(front_mean) + "\n";
    }
    nlohmann::json out{{"normalization", reference_norm},
                       {"space_fingerprint", reference_space},
                       {"methods", table}};
    write_json_atomic(out_dir / "comparison.json", out);
    write_file_atomic(out_dir / "comparison.csv", csv);
    log << "compared " << runs.size() << " runs across " << by_algo.size() << " methods\n";
    return kExitOk;
}

} // namespace mopg
