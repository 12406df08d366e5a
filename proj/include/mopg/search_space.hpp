#ifndef MOPG_SEARCH_SPACE_HPP
#define MOPG_SEARCH_SPACE_HPP

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mopg/errors.hpp"
#include "mopg/objectives.hpp"
#include "mopg/rng.hpp"

namespace mopg {

inline constexpr std::uint64_t kDefaultEnumerationCap = 1ull << 20;

// Fixed-length categorical decision space with additive cost models.
// cost_table is in millions of parameters, flop_table in billions of FLOPs,
// merit_table is the dimensionless quality signal feeding the evaluator.
// Immutable after construction; safe to share across threads.
struct SequenceSpace {
    std::size_t L = 0;
    std::vector<int> arities;                     // K_t per position
    std::vector<std::vector<double>> cost_table;  // w[t][k] >= 0
    std::vector<std::vector<double>> flop_table;  // >= 0
    std::vector<std::vector<double>> merit_table; // u[t][k]

    // Generator parameters; tables rebuild deterministically from these.
    std::uint64_t seed = 0;
    double correlation_strength = 0.0;
    std::pair<double, double> params_range{0.1, 2.0};
    std::pair<double, double> flops_range{0.02, 0.31};
    double default_sigma = 0.0; // suggested surrogate noise for this benchmark

    void validate() const;
    void check_encoding(const Encoding& e) const;

    // Number of encodings, saturating at 2^64-1.
    std::uint64_t cardinality() const;
};

// Sum of per-position table entries; pure and deterministic.
double cost(const SequenceSpace& space, const Encoding& e);
double flops(const SequenceSpace& space, const Encoding& e);
double merit_sum(const SequenceSpace& space, const Encoding& e);

// Yields every encoding exactly once, lexicographically. Refuses spaces whose
// cardinality exceeds `cap` (the brute-force oracle has to stay in reach).
void enumerate(const SequenceSpace& space, const std::function<void(const Encoding&)>& visit,
               std::uint64_t cap = kDefaultEnumerationCap);
std::vector<Encoding> enumerate_all(const SequenceSpace& space,
                                    std::uint64_t cap = kDefaultEnumerationCap);

enum class EvaluatorKind { Deterministic, NoisySurrogate };

// Quality model standing in for an expensive trained-accuracy measurement.
// Deterministic: logistic((sum of merits - mu) / s), a pure function of the
// encoding. NoisySurrogate: the same plus Gaussian noise drawn from the
// caller's RNG stream per evaluation, clamped to [0, 1].
struct Evaluator {
    EvaluatorKind kind = EvaluatorKind::Deterministic;
    double sigma = 0.0; // noise stddev, NoisySurrogate only
    double mu = 0.0;    // logistic midpoint (sum-of-merit units)
    double s = 1.0;     // logistic scale > 0
};

double quality(const Evaluator& eval, const SequenceSpace& space, const Encoding& e, RngStream& rng);

// Logistic calibration from 10^4 seeded samples of the merit sum:
// mu = sample mean, s = sample standard deviation (floored away from zero),
// so deterministic quality spreads across (0, 1).
Evaluator make_evaluator(const SequenceSpace& space, EvaluatorKind kind, double sigma = 0.0);

// Chooses sigma so that noisy quality's Pearson correlation with the
// deterministic quality lands near `target_correlation` (estimated over
// seeded samples; clamping makes the closed form approximate).
double calibrate_sigma(const SequenceSpace& space, double target_correlation);

// Seeded synthetic benchmark. Cost and FLOP tables are drawn uniformly and
// rescaled so encoding totals span exactly params_range and flops_range;
// merit is cost plus Normal(0, correlation_strength^2) noise, so pricier
// choices are usually but not always better and the quality/cost front is
// non-trivial. Identical seeds reproduce identical tables.
SequenceSpace make_benchmark(std::uint64_t seed, std::size_t L, const std::vector<int>& arities,
                             double correlation_strength,
                             std::pair<double, double> params_range = {0.1, 2.0},
                             std::pair<double, double> flops_range = {0.02, 0.31});

// Objective spec for (quality, params[, flops]) using the space's ranges.
ObjectiveSpec benchmark_objectives(const SequenceSpace& space, std::size_t m);

// Evaluates quality + cost (+ flops when m == 3) into one objective vector.
ObjectiveVector evaluate_objectives(const SequenceSpace& space, const Evaluator& eval,
                                    const Encoding& e, std::size_t m, RngStream& rng);

// Space definition file: {"seed","L","arities","ranges","correlation_strength","sigma"}.
// Tables are rebuilt from the seed, so benchmark files stay small and shareable.
nlohmann::json space_to_json(const SequenceSpace& space);
SequenceSpace space_from_json(const nlohmann::json& j);

} // namespace mopg

#endif
