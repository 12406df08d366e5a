#ifndef MOPG_ALGORITHMS_HPP
#define MOPG_ALGORITHMS_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mopg/objectives.hpp"
#include "mopg/policy.hpp"
#include "mopg/rewards.hpp"
#include "mopg/rng.hpp"
#include "mopg/schedule.hpp"
#include "mopg/search_space.hpp"

namespace mopg {

// Target-annealing search over m-1 constrained objectives. The warm-up phase
// parks the target at the low end with a wide desirability band to learn an
// initial policy; the annealing phase sweeps the target across its range
// (linearly for one constrained axis, along a locality-preserving grid
// traversal for two) with a narrow band, recording every annealing sample.
struct AdfConfig {
    long n_warm = 1500;
    long n_anneal = 6000; // ignored for m >= 3, where the grid size is the budget
    std::vector<std::pair<double, double>> tau_bounds; // one (min,max) per constrained axis
    std::vector<double> delta_warm;   // per axis; empty -> (hi-lo)/2
    std::vector<double> delta_anneal; // per axis; empty -> (hi-lo)/10
    std::vector<int> grid_sizes;      // m >= 3 only
    TemperatureSchedule schedule{5.0, 10.0, 50};
    int batch_size = 1;
    bool include_warmup = false; // record warm-up samples and let them join the front

    std::size_t m() const { return tau_bounds.size() + 1; }
    std::vector<double> warm_widths() const;
    std::vector<double> anneal_widths() const;
};

// Dominance-credit search: every sample is rewarded against the live archive
// (before it is offered), then folded into it.
struct AdcConfig {
    long n_steps = 6000;
    std::size_t m = 2;
    AdcSpec spec; // epsilon defaults are filled per objective axis if empty
    TemperatureSchedule schedule{1.0, 25.0, 1200};
    int batch_size = 1;
};

struct MdfConfig {
    std::vector<int> targets_per_axis; // {10} for one constrained axis, {4,4} for two
    long steps_per_target = 6000;
    double temperature = 5.0;
    std::vector<double> delta; // per axis; empty -> (hi-lo)/10

    std::size_t m() const { return targets_per_axis.size() + 1; }
};

struct SampleRow {
    long step = 0; // global step index within the run
    Encoding encoding;
    ObjectiveVector objectives;
    double reward = 0.0;
    double temperature = 0.0;
    std::vector<double> targets; // ADF / M-DF only
};

// Full seeded trace of one run. final_front always equals the Pareto front of
// the recorded samples' objective points.
struct RunRecord {
    std::string algorithm;
    std::uint64_t seed = 0;
    std::string config_fingerprint;
    ObjectiveSpec objective_spec;
    std::vector<std::string> target_names; // per recorded target column
    std::vector<SampleRow> samples;
    ParetoArchive final_front;

    explicit RunRecord(ObjectiveSpec spec)
        : objective_spec(spec), final_front(std::move(spec)) {}
};

RunRecord run_adf(const SequenceSpace& space, const Evaluator& evaluator,
                  const PolicyParams& policy_init, const AdfConfig& cfg, RngStream& rng);

RunRecord run_adc(const SequenceSpace& space, const Evaluator& evaluator,
                  const PolicyParams& policy_init, const AdcConfig& cfg, RngStream& rng);

RunRecord run_random(const SequenceSpace& space, const Evaluator& evaluator, std::size_t m,
                     long n_steps, RngStream& rng);

// Independent fixed-target desirability runs, one fresh policy per target,
// no warm-up, fixed temperature; records are concatenated and the combined
// front is extracted from the union of all samples.
RunRecord run_mdf(const SequenceSpace& space, const Evaluator& evaluator,
                  const PolicyParams& policy_init, const MdfConfig& cfg, RngStream& rng);

// Exact Pareto front over the whole space; the ground-truth oracle. Refuses
// noisy evaluators and spaces over the enumeration cap.
ParetoArchive brute_force_front(const SequenceSpace& space, const Evaluator& evaluator,
                                std::size_t m, std::uint64_t cap = kDefaultEnumerationCap);

// Per-axis density radii defaults: 0.02 quality, 0.1 params (M), 0.02 flops (B).
std::vector<double> default_adc_epsilon(std::size_t m);

} // namespace mopg

#endif
