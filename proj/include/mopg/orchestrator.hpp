#ifndef MOPG_ORCHESTRATOR_HPP
#define MOPG_ORCHESTRATOR_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mopg/config.hpp"

namespace mopg {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitRuntime = 3;
inline constexpr int kExitOracleRefusal = 4;

// Runs one (algorithm, seed) pair from a resolved config.
RunRecord execute_run(const RunConfig& cfg, std::uint64_t seed);

// Executes every configured seed (optionally overridden), writing
// out/<algo>/<seed>/{samples.csv,front.json,metrics.json} and a final
// summary.json with dominated-area mean/SD across seeds. Seeds fan out to a
// worker pool (MOPG_WORKERS env var caps it); one seed failing does not stop
// the others but flips the exit status to runtime failure.
int cmd_run(const std::filesystem::path& config_path,
            const std::vector<std::uint64_t>& seed_overrides,
            const std::optional<std::string>& out_override, std::ostream& log);

// Computes the exact front by full enumeration and writes oracle_front.json
// and oracle_metrics.json next to the run outputs. Refuses spaces over the
// enumeration cap and configs with a noisy evaluator.
int cmd_oracle(const std::filesystem::path& config_path, std::ostream& log);

// Aggregates per-run metrics.json files into a comparison table
// (comparison.csv + comparison.json in out_dir): dominated area and
// hypervolume mean/SD per algorithm plus averaged histograms for plotting.
// Runs over different spaces or normalizations are refused.
int cmd_compare(const std::vector<std::filesystem::path>& run_dirs,
                const std::filesystem::path& out_dir, std::ostream& log);

// Mean and sample standard deviation (0 for a single value); summary.json
// and compare use exactly this.
std::pair<double, double> mean_sd(const std::vector<double>& values);

} // namespace mopg

#endif
