#include "mopg/algorithms.hpp"

#include <algorithm>
#include <cmath>

namespace mopg {

namespace {

std::vector<double> widths_or_default(const std::vector<double>& given,
                                      const std::vector<std::pair<double, double>>& bounds,
                                      double divisor) {
    if (!given.empty()) {
        require(given.size() == bounds.size(), "AdfConfig: width list length mismatch");
        for (double d : given) require(d > 0.0, "AdfConfig: widths must be > 0");
        return given;
    }
    std::vector<double> w;
    w.reserve(bounds.size());
    for (const auto& [lo, hi] : bounds) w.push_back((hi - lo) / divisor);
    return w;
}

void check_tau_bounds(const SequenceSpace& space,
                      const std::vector<std::pair<double, double>>& bounds) {
    require(bounds.size() == 1 || bounds.size() == 2,
            "tau bounds must cover one (params) or two (params, flops) constrained axes");
    const std::pair<double, double> axis_ranges[2] = {space.params_range, space.flops_range};
    constexpr double slack = 1e-9;
    for (std::size_t i = 0; i < bounds.size(); ++i) {
        require(bounds[i].first < bounds[i].second, "tau bounds need min < max");
        require(bounds[i].first >= axis_ranges[i].first - slack &&
                    bounds[i].second <= axis_ranges[i].second + slack,
                "tau bounds fall outside the space's objective range for axis " + std::to_string(i + 1));
    }
}

std::vector<std::string> target_column_names(const ObjectiveSpec& spec) {
    std::vector<std::string> names;
    for (std::size_t i = 1; i < spec.m(); ++i) names.push_back("target_" + spec.names[i]);
    return names;
}

std::vector<DesirabilitySpec> desirability_specs(const std::vector<double>& taus,
                                                 const std::vector<double>& widths) {
    std::vector<DesirabilitySpec> specs(taus.size());
    for (std::size_t i = 0; i < taus.size(); ++i) specs[i] = {taus[i], widths[i]};
    return specs;
}

std::vector<double> constrained_values(const ObjectiveVector& objectives) {
    return {objectives.begin() + 1, objectives.end()};
}

} // namespace

std::vector<double> AdfConfig::warm_widths() const {
    return widths_or_default(delta_warm, tau_bounds, 2.0);
}

std::vector<double> AdfConfig::anneal_widths() const {
    return widths_or_default(delta_anneal, tau_bounds, 10.0);
}

std::vector<double> default_adc_epsilon(std::size_t m) {
    std::vector<double> eps{0.02, 0.1, 0.02};
    eps.resize(m);
    return eps;
}

RunRecord run_adf(const SequenceSpace& space, const Evaluator& evaluator,
                  const PolicyParams& policy_init, const AdfConfig& cfg, RngStream& rng) {
    const std::size_t m = cfg.m();
    check_tau_bounds(space, cfg.tau_bounds);
    require(cfg.n_warm >= 0, "AdfConfig: n_warm must be >= 0");
    require(cfg.batch_size >= 1, "AdfConfig: batch_size must be >= 1");
    cfg.schedule.validate();

    const std::vector<double> warm_w = cfg.warm_widths();
    const std::vector<double> anneal_w = cfg.anneal_widths();

    // Warm-up targets sit at the low end of every constrained axis.
    std::vector<double> warm_tau;
    for (const auto& [lo, hi] : cfg.tau_bounds) warm_tau.push_back(lo);

    // Annealing target sequence: linear sweep for one constrained axis,
    // zig-zag grid traversal for two.
    std::vector<std::vector<double>> anneal_targets;
    if (m == 2) {
        require(cfg.n_anneal >= 1, "AdfConfig: n_anneal must be >= 1");
        anneal_targets.reserve(static_cast<std::size_t>(cfg.n_anneal));
        for (long step = 1; step <= cfg.n_anneal; ++step)
            anneal_targets.push_back(
                {target_at(cfg.tau_bounds[0].first, cfg.tau_bounds[0].second, cfg.n_anneal, step)});
    } else {
        require(cfg.grid_sizes.size() == m - 1, "AdfConfig: grid_sizes must cover every constrained axis");
        const TargetGrid grid = TargetGrid::regular(cfg.tau_bounds, cfg.grid_sizes);
        anneal_targets.reserve(grid.size());
        for (std::size_t k = 0; k < grid.size(); ++k) anneal_targets.push_back(grid.target_at(k));
    }

    RunRecord record(benchmark_objectives(space, m));
    record.algorithm = "adf";
    record.target_names = target_column_names(record.objective_spec);

    PolicyParams policy = policy_init;
    long global_step = 0;

    auto one_step = [&](const std::vector<double>& tau, const std::vector<double>& widths,
                        bool record_sample) {
        const double temperature = temperature_at(cfg.schedule, global_step);
        const auto specs = desirability_specs(tau, widths);
        std::vector<Encoding> encodings;
        std::vector<double> rewards;
        for (int b = 0; b < cfg.batch_size; ++b) {
            PolicySample s = sample(policy, temperature, rng);
            ObjectiveVector objs = evaluate_objectives(space, evaluator, s.encoding, m, rng);
            const double reward = adf_reward(objs[0], constrained_values(objs), specs);
            if (record_sample)
                record.samples.push_back({global_step, s.encoding, objs, reward, temperature, tau});
            encodings.push_back(std::move(s.encoding));
            rewards.push_back(reward);
        }
        reinforce_update_batch(policy, encodings, rewards, temperature);
        ++global_step;
    };

    for (long step = 0; step < cfg.n_warm; ++step) one_step(warm_tau, warm_w, cfg.include_warmup);
    for (const auto& tau : anneal_targets) one_step(tau, anneal_w, true);

    for (const auto& row : record.samples) record.final_front.insert(row.encoding, row.objectives);
    return record;
}

RunRecord run_adc(const SequenceSpace& space, const Evaluator& evaluator,
                  const PolicyParams& policy_init, const AdcConfig& cfg, RngStream& rng) {
    require(cfg.n_steps >= 1, "AdcConfig: n_steps must be >= 1");
    require(cfg.batch_size >= 1, "AdcConfig: batch_size must be >= 1");
    cfg.schedule.validate();
    const std::size_t m = cfg.m;
    AdcSpec spec = cfg.spec;
    if (spec.epsilon.empty()) spec.epsilon = default_adc_epsilon(m);
    require(spec.epsilon.size() == m, "AdcConfig: epsilon must have one radius per objective");
    spec.validate();

    RunRecord record(benchmark_objectives(space, m));
    record.algorithm = "adc";

    PolicyParams policy = policy_init;
    for (long step = 0; step < cfg.n_steps; ++step) {
        const double temperature = temperature_at(cfg.schedule, step);
        std::vector<Encoding> encodings;
        std::vector<double> rewards;
        for (int b = 0; b < cfg.batch_size; ++b) {
            PolicySample s = sample(policy, temperature, rng);
            ObjectiveVector objs = evaluate_objectives(space, evaluator, s.encoding, m, rng);
            // Credit is assigned against the archive before this candidate joins it.
            const double reward = adc_reward(objs, record.final_front, spec);
            record.final_front.insert(s.encoding, objs);
            record.samples.push_back({step, s.encoding, objs, reward, temperature, {}});
            encodings.push_back(std::move(s.encoding));
            rewards.push_back(reward);
        }
        reinforce_update_batch(policy, encodings, rewards, temperature);
    }
    return record;
}

RunRecord run_random(const SequenceSpace& space, const Evaluator& evaluator, std::size_t m,
                     long n_steps, RngStream& rng) {
    require(n_steps >= 1, "run_random: n_steps must be >= 1");
    RunRecord record(benchmark_objectives(space, m));
    record.algorithm = "rs";
    for (long step = 0; step < n_steps; ++step) {
        Encoding e(space.L);
        for (std::size_t t = 0; t < space.L; ++t) e[t] = rng.uniform_int(space.arities[t]);
        ObjectiveVector objs = evaluate_objectives(space, evaluator, e, m, rng);
        record.samples.push_back({step, std::move(e), std::move(objs), 0.0, 0.0, {}});
    }
    for (const auto& row : record.samples) record.final_front.insert(row.encoding, row.objectives);
    return record;
}

RunRecord run_mdf(const SequenceSpace& space, const Evaluator& evaluator,
                  const PolicyParams& policy_init, const MdfConfig& cfg, RngStream& rng) {
    const std::size_t m = cfg.m();
    require(cfg.steps_per_target >= 1, "MdfConfig: steps_per_target must be >= 1");
    require(cfg.temperature > 0.0, "MdfConfig: temperature must be > 0");
    for (int n : cfg.targets_per_axis) require(n >= 1, "MdfConfig: need >= 1 target per axis");

    std::vector<std::pair<double, double>> bounds{space.params_range};
    if (m == 3) bounds.push_back(space.flops_range);
    check_tau_bounds(space, bounds);
    const std::vector<double> widths = widths_or_default(cfg.delta, bounds, 10.0);
    const TargetGrid grid = TargetGrid::regular(bounds, cfg.targets_per_axis);

    RunRecord record(benchmark_objectives(space, m));
    record.algorithm = "mdf";
    record.target_names = target_column_names(record.objective_spec);

    long global_step = 0;
    for (std::size_t target_idx = 0; target_idx < grid.size(); ++target_idx) {
        const std::vector<double> tau = grid.target_at(target_idx);
        const auto specs = desirability_specs(tau, widths);
        PolicyParams policy = policy_init; // independent per target, never shared
        for (long step = 0; step < cfg.steps_per_target; ++step) {
            PolicySample s = sample(policy, cfg.temperature, rng);
            ObjectiveVector objs = evaluate_objectives(space, evaluator, s.encoding, m, rng);
            const double reward = adf_reward(objs[0], constrained_values(objs), specs);
            reinforce_update(policy, s.encoding, reward, cfg.temperature);
            record.samples.push_back(
                {global_step, std::move(s.encoding), std::move(objs), reward, cfg.temperature, tau});
            ++global_step;
        }
    }
    for (const auto& row : record.samples) record.final_front.insert(row.encoding, row.objectives);
    return record;
}

ParetoArchive brute_force_front(const SequenceSpace& space, const Evaluator& evaluator,
                                std::size_t m, std::uint64_t cap) {
    require(evaluator.kind == EvaluatorKind::Deterministic,
            "brute_force_front: the oracle needs a deterministic evaluator");
    ParetoArchive archive(benchmark_objectives(space, m));
    RngStream unused = make_stream(0);
    enumerate(
        space,
        [&](const Encoding& e) {
            archive.insert(e, evaluate_objectives(space, evaluator, e, m, unused));
        },
        cap);
    return archive;
}

} // namespace mopg
