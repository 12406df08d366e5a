#include "mopg/search_space.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace mopg {

namespace {

constexpr std::uint64_t kCalibrationSalt = 0xca11b8a7e5eedull;
constexpr std::size_t kCalibrationSamples = 10000;
constexpr std::size_t kCorrelationSamples = 500;

void check_table(const std::vector<std::vector<double>>& table, const std::vector<int>& arities,
                 const char* name, bool non_negative) {
    require(table.size() == arities.size(), std::string("SequenceSpace: ") + name + " row count mismatch");
    for (std::size_t t = 0; t < table.size(); ++t) {
        require(table[t].size() == static_cast<std::size_t>(arities[t]),
                std::string("SequenceSpace: ") + name + " arity mismatch at position " + std::to_string(t));
        if (non_negative)
            for (double v : table[t])
                require(v >= 0.0, std::string("SequenceSpace: ") + name + " entries must be non-negative");
    }
}

double table_sum(const std::vector<std::vector<double>>& table, const Encoding& e) {
    double total = 0.0;
    for (std::size_t t = 0; t < e.size(); ++t) total += table[t][static_cast<std::size_t>(e[t])];
    return total;
}

double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

Encoding random_encoding(const SequenceSpace& space, RngStream& rng) {
    Encoding e(space.L);
    for (std::size_t t = 0; t < space.L; ++t) e[t] = rng.uniform_int(space.arities[t]);
    return e;
}

// Draws a per-position table uniformly in [0,1) and rescales it affinely so
// that min/max encoding totals hit the requested range endpoints exactly.
std::vector<std::vector<double>> scaled_cost_table(std::size_t L, const std::vector<int>& arities,
                                                   std::pair<double, double> range, RngStream& rng) {
    std::vector<std::vector<double>> raw(L);
    for (std::size_t t = 0; t < L; ++t) {
        raw[t].resize(static_cast<std::size_t>(arities[t]));
        for (auto& v : raw[t]) v = rng.uniform();
    }
    double spread_total = 0.0;
    std::vector<double> mins(L);
    for (std::size_t t = 0; t < L; ++t) {
        auto [lo_it, hi_it] = std::minmax_element(raw[t].begin(), raw[t].end());
        mins[t] = *lo_it;
        spread_total += *hi_it - *lo_it;
    }
    // Degenerate spread cannot happen with continuous draws; guard anyway.
    if (spread_total <= 0.0) spread_total = 1.0;
    const double scale = (range.second - range.first) / spread_total;
    const double floor_per_position = range.first / static_cast<double>(L);
    for (std::size_t t = 0; t < L; ++t)
        for (auto& v : raw[t]) v = floor_per_position + scale * (v - mins[t]);
    return raw;
}

} // namespace

void SequenceSpace::validate() const {
    require(L >= 1, "SequenceSpace: need at least one position");
    require(arities.size() == L, "SequenceSpace: arity list length mismatch");
    for (int k : arities) require(k >= 1, "SequenceSpace: each arity must be >= 1");
    check_table(cost_table, arities, "cost_table", true);
    check_table(flop_table, arities, "flop_table", true);
    check_table(merit_table, arities, "merit_table", false);
}

void SequenceSpace::check_encoding(const Encoding& e) const {
    require(e.size() == L, "Encoding: length mismatch with space");
    for (std::size_t t = 0; t < L; ++t)
        require(e[t] >= 0 && e[t] < arities[t],
                "Encoding: decision out of range at position " + std::to_string(t));
}

std::uint64_t SequenceSpace::cardinality() const {
    std::uint64_t n = 1;
    for (int k : arities) {
        std::uint64_t kk = static_cast<std::uint64_t>(k);
        if (n > UINT64_MAX / kk) return UINT64_MAX;
        n *= kk;
    }
    return n;
}

double cost(const SequenceSpace& space, const Encoding& e) {
    space.check_encoding(e);
    return table_sum(space.cost_table, e);
}

double flops(const SequenceSpace& space, const Encoding& e) {
    space.check_encoding(e);
    return table_sum(space.flop_table, e);
}

double merit_sum(const SequenceSpace& space, const Encoding& e) {
    space.check_encoding(e);
    return table_sum(space.merit_table, e);
}

void enumerate(const SequenceSpace& space, const std::function<void(const Encoding&)>& visit,
               std::uint64_t cap) {
    require(space.L >= 1, "enumerate: space must have at least one position");
    const std::uint64_t n = space.cardinality();
    if (n > cap)
        throw CapExceeded("enumerate: space holds " + std::to_string(n) +
                              " encodings, over the cap of " + std::to_string(cap),
                          n);
    Encoding e(space.L, 0);
    while (true) {
        visit(e);
        // Odometer increment, last position fastest (lexicographic order).
        std::size_t t = space.L;
        while (t > 0) {
            --t;
            if (++e[t] < space.arities[t]) break;
            e[t] = 0;
            if (t == 0) return;
        }
    }
}

std::vector<Encoding> enumerate_all(const SequenceSpace& space, std::uint64_t cap) {
    std::vector<Encoding> out;
    out.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(space.cardinality(), cap)));
    enumerate(space, [&](const Encoding& e) { out.push_back(e); }, cap);
    return out;
}

double quality(const Evaluator& eval, const SequenceSpace& space, const Encoding& e, RngStream& rng) {
    double q = logistic((merit_sum(space, e) - eval.mu) / eval.s);
    if (eval.kind == EvaluatorKind::NoisySurrogate && eval.sigma > 0.0)
        q = std::clamp(q + rng.normal(0.0, eval.sigma), 0.0, 1.0);
    return q;
}

Evaluator make_evaluator(const SequenceSpace& space, EvaluatorKind kind, double sigma) {
    require(sigma >= 0.0, "make_evaluator: sigma must be non-negative");
    RngStream rng = make_stream(space.seed, kCalibrationSalt);
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t i = 0; i < kCalibrationSamples; ++i) {
        double u = merit_sum(space, random_encoding(space, rng));
        sum += u;
        sum_sq += u * u;
    }
    const double n = static_cast<double>(kCalibrationSamples);
    const double mean = sum / n;
    const double var = std::max(sum_sq / n - mean * mean, 0.0);
    Evaluator eval;
    eval.kind = kind;
    eval.sigma = kind == EvaluatorKind::NoisySurrogate ? sigma : 0.0;
    eval.mu = mean;
    eval.s = std::max(std::sqrt(var), 1e-9);
    return eval;
}

double calibrate_sigma(const SequenceSpace& space, double target_correlation) {
    require(target_correlation > 0.0 && target_correlation < 1.0,
            "calibrate_sigma: target correlation must lie in (0, 1)");
    Evaluator det = make_evaluator(space, EvaluatorKind::Deterministic);
    RngStream rng = make_stream(space.seed, kCalibrationSalt + 1);
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t i = 0; i < kCorrelationSamples; ++i) {
        Encoding e = random_encoding(space, rng);
        double q = quality(det, space, e, rng);
        sum += q;
        sum_sq += q * q;
    }
    const double n = static_cast<double>(kCorrelationSamples);
    const double mean = sum / n;
    const double var = std::max(sum_sq / n - mean * mean, 1e-12);
    // corr(q, q + noise) = sd_q / sqrt(sd_q^2 + sigma^2), ignoring clamping.
    const double r2 = target_correlation * target_correlation;
    return std::sqrt(var * (1.0 / r2 - 1.0));
}

SequenceSpace make_benchmark(std::uint64_t seed, std::size_t L, const std::vector<int>& arities,
                             double correlation_strength, std::pair<double, double> params_range,
                             std::pair<double, double> flops_range) {
    require(correlation_strength >= 0.0, "make_benchmark: correlation_strength must be >= 0");
    SequenceSpace space;
    space.L = L;
    space.arities = arities;
    space.seed = seed;
    space.correlation_strength = correlation_strength;
    space.params_range = params_range;
    space.flops_range = flops_range;

    RngStream rng = make_stream(seed);
    space.cost_table = scaled_cost_table(L, arities, params_range, rng);
    space.flop_table = scaled_cost_table(L, arities, flops_range, rng);
    space.merit_table = space.cost_table;
    for (auto& row : space.merit_table)
        for (auto& u : row) u += rng.normal(0.0, correlation_strength);
    space.validate();
    return space;
}

ObjectiveSpec benchmark_objectives(const SequenceSpace& space, std::size_t m) {
    require(m == 2 || m == 3, "benchmark_objectives: m must be 2 or 3");
    ObjectiveSpec spec;
    spec.orientations = {Orientation::Maximize, Orientation::Minimize};
    spec.names = {"quality", "params"};
    spec.ranges = {{0.0, 1.0}, space.params_range};
    if (m == 3) {
        spec.orientations.push_back(Orientation::Minimize);
        spec.names.push_back("flops");
        spec.ranges.push_back(space.flops_range);
    }
    spec.validate();
    return spec;
}

ObjectiveVector evaluate_objectives(const SequenceSpace& space, const Evaluator& eval,
                                    const Encoding& e, std::size_t m, RngStream& rng) {
    require(m == 2 || m == 3, "evaluate_objectives: m must be 2 or 3");
    ObjectiveVector v{quality(eval, space, e, rng), cost(space, e)};
    if (m == 3) v.push_back(flops(space, e));
    return v;
}

nlohmann::json space_to_json(const SequenceSpace& space) {
    return nlohmann::json{
        {"seed", space.seed},
        {"L", space.L},
        {"arities", space.arities},
        {"ranges", {{"params", {space.params_range.first, space.params_range.second}},
                    {"flops", {space.flops_range.first, space.flops_range.second}}}},
        {"correlation_strength", space.correlation_strength},
        {"sigma", space.default_sigma},
    };
}

SequenceSpace space_from_json(const nlohmann::json& j) {
    const auto seed = j.at("seed").get<std::uint64_t>();
    const auto L = j.at("L").get<std::size_t>();
    const auto arities = j.at("arities").get<std::vector<int>>();
    const auto corr = j.at("correlation_strength").get<double>();
    std::pair<double, double> params_range{0.1, 2.0};
    std::pair<double, double> flops_range{0.02, 0.31};
    if (j.contains("ranges")) {
        const auto& r = j.at("ranges");
        if (r.contains("params")) params_range = {r["params"][0].get<double>(), r["params"][1].get<double>()};
        if (r.contains("flops")) flops_range = {r["flops"][0].get<double>(), r["flops"][1].get<double>()};
    }
    SequenceSpace space = make_benchmark(seed, L, arities, corr, params_range, flops_range);
    if (j.contains("sigma")) space.default_sigma = j.at("sigma").get<double>();
    return space;
}

} // namespace mopg
