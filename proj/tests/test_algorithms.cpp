#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "mopg/algorithms.hpp"
#include "mopg/metrics.hpp"

using namespace mopg;

namespace {

SequenceSpace tiny_benchmark(std::uint64_t seed = 5) {
    return make_benchmark(seed, 4, {3, 3, 3, 3}, 0.1);
}

bool same_record(const RunRecord& a, const RunRecord& b) {
    if (a.samples.size() != b.samples.size()) return false;
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        const auto& x = a.samples[i];
        const auto& y = b.samples[i];
        if (x.step != y.step || x.encoding != y.encoding || x.objectives != y.objectives ||
            x.reward != y.reward || x.temperature != y.temperature || x.targets != y.targets)
            return false;
    }
    if (a.final_front.size() != b.final_front.size()) return false;
    for (std::size_t i = 0; i < a.final_front.size(); ++i) {
        if (a.final_front.entries()[i].encoding != b.final_front.entries()[i].encoding) return false;
        if (a.final_front.entries()[i].objectives != b.final_front.entries()[i].objectives)
            return false;
    }
    return true;
}

} // namespace

TEST_CASE("adf with a single annealing step samples at tau_max and records one row") {
    const auto space = tiny_benchmark();
    const auto eval = make_evaluator(space, EvaluatorKind::Deterministic);
    AdfConfig cfg;
    cfg.n_warm = 0;
    cfg.n_anneal = 1;
    cfg.tau_bounds = {space.params_range};
    RngStream rng = make_stream(1);
    const auto record = run_adf(space, eval, make_policy(space, 0.001), cfg, rng);
    REQUIRE(record.samples.size() == 1);
    CHECK(record.samples[0].targets == std::vector<double>{space.params_range.second});
    CHECK(record.final_front.size() == 1);
    CHECK(record.algorithm == "adf");
}

TEST_CASE("adf reruns are sample-for-sample identical") {
    const auto space = tiny_benchmark();
    const auto eval = make_evaluator(space, EvaluatorKind::Deterministic);
    AdfConfig cfg;
    cfg.n_warm = 50;
    cfg.n_anneal = 150;
    cfg.tau_bounds = {space.params_range};
    RngStream r1 = make_stream(9), r2 = make_stream(9);
    const auto a = run_adf(space, eval, make_policy(space, 0.001), cfg, r1);
    const auto b = run_adf(space, eval, make_policy(space, 0.001), cfg, r2);
    CHECK(same_record(a, b));
}

TEST_CASE("runs with a noisy surrogate still reproduce exactly from the seed") {
    const auto space = tiny_benchmark();
    const auto eval = make_evaluator(space, EvaluatorKind::NoisySurrogate, 0.05);
    AdfConfig cfg;
    cfg.n_warm = 30;
    cfg.n_anneal = 120;
    cfg.tau_bounds = {space.params_range};
    RngStream r1 = make_stream(14), r2 = make_stream(14);
    const auto a = run_adf(space, eval, make_policy(space, 0.001), cfg, r1);
    const auto b = run_adf(space, eval, make_policy(space, 0.001), cfg, r2);
    CHECK(same_record(a, b));

    // Different seeds observe different noise.
    RngStream r3 = make_stream(15);
    const auto c = run_adf(space, eval, make_policy(space, 0.001), cfg, r3);
    CHECK_FALSE(same_record(a, c));
}

TEST_CASE("adf records only annealing samples unless the warm-up flag is set") {
    const auto space = tiny_benchmark();
    const auto eval = make_evaluator(space, EvaluatorKind::Deterministic);
    AdfConfig cfg;
    cfg.n_warm = 40;
    cfg.n_anneal = 60;
    cfg.tau_bounds = {space.params_range};

    RngStream r1 = make_stream(3);
    const auto without = run_adf(space, eval, make_policy(space, 0.001), cfg, r1);
    CHECK(without.samples.size() == 60);
    CHECK(without.samples.front().step == 40); // global step counter spans both phases

    cfg.include_warmup = true;
    RngStream r2 = make_stream(3);
    const auto with = run_adf(space, eval, make_policy(space, 0.001), cfg, r2);
    CHECK(with.samples.size() == 100);
    CHECK(with.samples.front().step == 0);
}

TEST_CASE("adf annealing targets sweep linearly and temperatures follow the schedule") {
    const auto space = tiny_benchmark();
    const auto eval = make_evaluator(space, EvaluatorKind::Deterministic);
    AdfConfig cfg;
    cfg.n_warm = 10;
    cfg.n_anneal = 100;
    cfg.tau_bounds = {space.params_range};
    cfg.schedule = {5.0, 10.0, 50};
    RngStream rng = make_stream(21);
    const auto record = run_adf(space, eval, make_policy(space, 0.001), cfg, rng);
    REQUIRE(record.samples.size() == 100);
    for (std::size_t i = 0; i < record.samples.size(); ++i) {
        const auto& row = record.samples[i];
        const long anneal_step = static_cast<long>(i) + 1;
        CHECK(row.targets[0] ==
              doctest::Approx(target_at(space.params_range.first, space.params_range.second, 100,
                                        anneal_step)));
        CHECK(row.temperature == doctest::Approx(temperature_at(cfg.schedule, row.step)));
    }
    // Final front is exactly the Pareto filter of the recorded samples.
    std::vector<ArchiveEntry> pts;
    for (const auto& r : record.samples) pts.push_back({r.encoding, r.objectives});
    const auto refiltered = extract_pareto_front(pts, record.objective_spec);
    CHECK(record.final_front.size() == refiltered.size());
}

TEST_CASE("adf for three objectives follows the zig-zag target grid") {
    const auto space = tiny_benchmark();
    const auto eval = make_evaluator(space, EvaluatorKind::Deterministic);
    AdfConfig cfg;
    cfg.n_warm = 5;
    cfg.tau_bounds = {space.params_range, space.flops_range};
    cfg.grid_sizes = {6, 5};
    RngStream rng = make_stream(33);
    const auto record = run_adf(space, eval, make_policy(space, 0.001), cfg, rng);
    REQUIRE(record.samples.size() == 30); // grid size is the annealing budget
    CHECK(record.objective_spec.m() == 3);
    CHECK(record.samples[0].objectives.size() == 3);
    REQUIRE(record.target_names.size() == 2);
    std::set<std::vector<double>> distinct;
    for (const auto& row : record.samples) distinct.insert(row.targets);
    CHECK(distinct.size() == 30); // each grid point visited exactly once
}

TEST_CASE("mini-batched adf evaluates and records batch_size samples per update") {
    const auto space = tiny_benchmark();
    const auto eval = make_evaluator(space, EvaluatorKind::Deterministic);
    AdfConfig cfg;
    cfg.n_warm = 10;
    cfg.n_anneal = 50;
    cfg.tau_bounds = {space.params_range};
    cfg.batch_size = 2;
    RngStream rng = make_stream(4);
    const auto record = run_adf(space, eval, make_policy(space, 0.001), cfg, rng);
    REQUIRE(record.samples.size() == 100); // two recorded samples per annealing step
    CHECK(record.samples[0].step == record.samples[1].step);
    CHECK(record.samples[0].targets == record.samples[1].targets);
}

TEST_CASE("adf refuses tau bounds outside the space's objective ranges") {
    const auto space = tiny_benchmark();
    const auto eval = make_evaluator(space, EvaluatorKind::Deterministic);
    AdfConfig cfg;
    cfg.tau_bounds = {{0.0, 5.0}};
    RngStream rng = make_stream(0);
    CHECK_THROWS_AS(run_adf(space, eval, make_policy(space, 0.001), cfg, rng), ContractViolation);
}

TEST_CASE("adc first step rewards zero against the empty front and archives the sample") {
    const auto space = tiny_benchmark();
    const auto eval = make_evaluator(space, EvaluatorKind::Deterministic);
    AdcConfig cfg;
    cfg.n_steps = 1;
    RngStream rng = make_stream(17);
    const auto record = run_adc(space, eval, make_policy(space, 0.002), cfg, rng);
    REQUIRE(record.samples.size() == 1);
    CHECK(record.samples[0].reward == 0.0);
    CHECK(record.final_front.size() == 1);
    CHECK(record.final_front.entries()[0].encoding == record.samples[0].encoding);
}

TEST_CASE("adc reruns are identical and the archive matches the refiltered prefix") {
    const auto space = tiny_benchmark();
    const auto eval = make_evaluator(space, EvaluatorKind::Deterministic);
    AdcConfig cfg;
    cfg.n_steps = 1000;
    RngStream r1 = make_stream(55), r2 = make_stream(55);
    const auto a = run_adc(space, eval, make_policy(space, 0.002), cfg, r1);
    const auto b = run_adc(space, eval, make_policy(space, 0.002), cfg, r2);
    CHECK(same_record(a, b));

    // Archive-vs-refilter equality at sample prefixes 10, 100, 1000.
    for (std::size_t prefix : {10u, 100u, 1000u}) {
        std::vector<ArchiveEntry> pts;
        for (std::size_t i = 0; i < prefix; ++i)
            pts.push_back({a.samples[i].encoding, a.samples[i].objectives});
        const auto refiltered = extract_pareto_front(pts, a.objective_spec);

        // Replay the incremental archive to the same prefix.
        ParetoArchive replay(a.objective_spec);
        for (std::size_t i = 0; i < prefix; ++i)
            replay.insert(a.samples[i].encoding, a.samples[i].objectives);
        REQUIRE(replay.size() == refiltered.size());
        for (std::size_t i = 0; i < replay.size(); ++i) {
            CHECK(replay.entries()[i].encoding == refiltered.entries()[i].encoding);
            CHECK(replay.entries()[i].objectives == refiltered.entries()[i].objectives);
        }
    }
    // And the final front is the full-prefix refilter.
    std::vector<ArchiveEntry> pts;
    for (const auto& r : a.samples) pts.push_back({r.encoding, r.objectives});
    const auto full = extract_pareto_front(pts, a.objective_spec);
    REQUIRE(a.final_front.size() == full.size());
    for (std::size_t i = 0; i < full.size(); ++i)
        CHECK(a.final_front.entries()[i].encoding == full.entries()[i].encoding);
}

TEST_CASE("adc rewards are negative exactly when the prior archive dominates the sample") {
    const auto space = tiny_benchmark();
    const auto eval = make_evaluator(space, EvaluatorKind::Deterministic);
    AdcConfig cfg;
    cfg.n_steps = 400;
    RngStream rng = make_stream(91);
    const auto record = run_adc(space, eval, make_policy(space, 0.002), cfg, rng);

    ParetoArchive replay(record.objective_spec);
    for (const auto& row : record.samples) {
        const auto s = replay.stats(row.objectives, default_adc_epsilon(2));
        if (s.n_dominators > 0)
            CHECK(row.reward < 0.0);
        else
            CHECK(row.reward >= 0.0);
        replay.insert(row.encoding, row.objectives);
    }
}

TEST_CASE("random search matches budget, covers choices uniformly, reruns identically") {
    const auto space = tiny_benchmark();
    const auto eval = make_evaluator(space, EvaluatorKind::Deterministic);

    RngStream one = make_stream(2);
    const auto single = run_random(space, eval, 2, 1, one);
    CHECK(single.samples.size() == 1);
    CHECK(single.final_front.size() == 1);

    RngStream r1 = make_stream(3), r2 = make_stream(3);
    const auto a = run_random(space, eval, 2, 10000, r1);
    const auto b = run_random(space, eval, 2, 10000, r2);
    CHECK(same_record(a, b));

    // Per-choice frequency within 3 sigma of uniform (fixed seed, checked once).
    for (std::size_t t = 0; t < space.L; ++t) {
        std::vector<int> counts(static_cast<std::size_t>(space.arities[t]), 0);
        for (const auto& row : a.samples) counts[static_cast<std::size_t>(row.encoding[t])] += 1;
        const double p = 1.0 / space.arities[t];
        const double sigma = std::sqrt(10000.0 * p * (1.0 - p));
        for (int c : counts) CHECK(std::abs(c - 10000.0 * p) <= 3.0 * sigma);
    }
}

TEST_CASE("mdf runs one independent policy per target and unions the records") {
    const auto space = tiny_benchmark();
    const auto eval = make_evaluator(space, EvaluatorKind::Deterministic);
    MdfConfig cfg;
    cfg.targets_per_axis = {10};
    cfg.steps_per_target = 40;
    RngStream rng = make_stream(8);
    const auto record = run_mdf(space, eval, make_policy(space, 0.001), cfg, rng);
    REQUIRE(record.samples.size() == 400);

    // Ten fixed targets, evenly spaced with both endpoints included.
    std::set<double> targets;
    for (const auto& row : record.samples) targets.insert(row.targets[0]);
    REQUIRE(targets.size() == 10);
    CHECK(*targets.begin() == doctest::Approx(space.params_range.first));
    CHECK(*targets.rbegin() == doctest::Approx(space.params_range.second));
    std::vector<double> sorted(targets.begin(), targets.end());
    const double gap = sorted[1] - sorted[0];
    for (std::size_t i = 1; i < sorted.size(); ++i)
        CHECK(sorted[i] - sorted[i - 1] == doctest::Approx(gap));

    // Fixed temperature throughout.
    for (const auto& row : record.samples) CHECK(row.temperature == 5.0);

    // Combined front is never dominated by any per-target front point.
    std::map<double, std::vector<ArchiveEntry>> per_target;
    for (const auto& row : record.samples)
        per_target[row.targets[0]].push_back({row.encoding, row.objectives});
    for (const auto& [tau, pts] : per_target) {
        const auto sub_front = extract_pareto_front(pts, record.objective_spec);
        for (const auto& combined : record.final_front.entries())
            for (const auto& sub : sub_front.entries())
                CHECK_FALSE(dominates(sub.objectives, combined.objectives, record.objective_spec));
    }
}

TEST_CASE("mdf with one target degenerates to a fixed-target run at tau_min") {
    const auto space = tiny_benchmark();
    const auto eval = make_evaluator(space, EvaluatorKind::Deterministic);
    MdfConfig cfg;
    cfg.targets_per_axis = {1};
    cfg.steps_per_target = 25;
    RngStream rng = make_stream(10);
    const auto record = run_mdf(space, eval, make_policy(space, 0.001), cfg, rng);
    REQUIRE(record.samples.size() == 25);
    for (const auto& row : record.samples)
        CHECK(row.targets[0] == doctest::Approx(space.params_range.first));
}

TEST_CASE("brute force front on a 3-point space matches the hand-computed front") {
    SequenceSpace s;
    s.L = 1;
    s.arities = {3};
    s.cost_table = {{0.5, 0.2, 0.9}};
    s.flop_table = {{0.0, 0.0, 0.0}};
    s.merit_table = {{1.0, 0.1, 3.0}};
    s.params_range = {0.1, 2.0};
    s.validate();
    Evaluator eval; // mu = 0, s = 1: quality is the logistic of merit, monotone in it
    const auto front = brute_force_front(s, eval, 2);
    // Encoding 0: cost 0.5, merit 1.0. Encoding 1: cost 0.2, merit 0.1.
    // Encoding 2: cost 0.9, merit 3.0. No point beats another on both axes,
    // so all three are Pareto-optimal.
    CHECK(front.size() == 3);
}

TEST_CASE("brute force refuses noisy evaluators and over-cap spaces") {
    const auto space = tiny_benchmark();
    Evaluator noisy = make_evaluator(space, EvaluatorKind::NoisySurrogate, 0.05);
    CHECK_THROWS_AS(brute_force_front(space, noisy, 2), ContractViolation);

    const auto big = make_benchmark(1, 12, std::vector<int>(12, 4), 0.1);
    const auto det = make_evaluator(big, EvaluatorKind::Deterministic);
    CHECK_THROWS_AS(brute_force_front(big, det, 2), CapExceeded);
}

TEST_CASE("stock benchmark oracle and adf regression values") {
    // Frozen after the calibration pass on the shipped seed-0 space: the
    // exact front from full enumeration, and the area an adam-driven ADF run
    // at seed 0 reaches. These only move if sampling or arithmetic changes.
    const auto space = make_benchmark(0, 8, std::vector<int>(8, 4), 0.3);
    const auto eval = make_evaluator(space, EvaluatorKind::Deterministic);
    const auto oracle = brute_force_front(space, eval, 2);
    CHECK(oracle.size() == 28);

    const auto norm = NormalizationSpec::from_objectives(oracle.spec());
    CHECK(dominated_area_2d(oracle, norm) == doctest::Approx(0.901235253754323).epsilon(1e-9));

    AdfConfig cfg;
    cfg.tau_bounds = {space.params_range};
    RngStream rng = make_stream(0);
    const auto record = run_adf(space, eval, make_policy(space, 0.05, UpdateRule::Adam), cfg, rng);
    CHECK(dominated_area_2d(record.final_front, norm) ==
          doctest::Approx(0.9012300011641703).epsilon(1e-6));

    // No algorithm front dominates more area than the enumerated front.
    const double oracle_area = dominated_area_2d(oracle, norm);
    CHECK(dominated_area_2d(record.final_front, norm) <= oracle_area + 1e-12);
    RngStream rs_rng = make_stream(0);
    const auto rs = run_random(space, eval, 2, 2000, rs_rng);
    CHECK(dominated_area_2d(rs.final_front, norm) <= oracle_area + 1e-12);
}

TEST_CASE("no run reports a front point it never evaluated") {
    const auto space = tiny_benchmark();
    const auto eval = make_evaluator(space, EvaluatorKind::Deterministic);
    AdcConfig cfg;
    cfg.n_steps = 300;
    RngStream rng = make_stream(77);
    const auto record = run_adc(space, eval, make_policy(space, 0.002), cfg, rng);
    std::set<Encoding> sampled;
    for (const auto& row : record.samples) sampled.insert(row.encoding);
    for (const auto& e : record.final_front.entries())
        CHECK(sampled.count(e.encoding) == 1);
}
