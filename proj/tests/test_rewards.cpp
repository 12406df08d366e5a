#include <doctest.h>

#include <cmath>

#include "mopg/rewards.hpp"
#include "mopg/rng.hpp"

using namespace mopg;

namespace {

ObjectiveSpec max_min_spec() {
    return {{Orientation::Maximize, Orientation::Minimize},
            {"quality", "params"},
            {{0.0, 1.0}, {0.1, 2.0}}};
}

} // namespace

TEST_CASE("desirability peaks at the target and hits zero at the feet") {
    const DesirabilitySpec d{1.05, 0.95};
    CHECK(desirability(1.05, d) == 1.0);
    CHECK(desirability(1.05 + 0.95, d) == 0.0);
    CHECK(desirability(1.05 - 0.95, d) == 0.0);
    CHECK(desirability(1.525, d) == doctest::Approx(0.5)); // halfway down the slope
    CHECK(desirability(3.0, d) == 0.0);                    // outside the band
}

TEST_CASE("desirability is symmetric about the target") {
    const DesirabilitySpec d{0.7, 0.3};
    RngStream rng = make_stream(2);
    for (int i = 0; i < 200; ++i) {
        const double x = rng.uniform(0.0, 1.0);
        CHECK(desirability(d.tau + x, d) == doctest::Approx(desirability(d.tau - x, d)));
    }
}

TEST_CASE("desirability rejects non-positive widths") {
    CHECK_THROWS_AS(desirability(0.5, DesirabilitySpec{0.5, 0.0}), ContractViolation);
    CHECK_THROWS_AS(desirability(0.5, DesirabilitySpec{0.5, -1.0}), ContractViolation);
}

TEST_CASE("adf_reward multiplies quality by per-objective desirabilities") {
    // On-target objective passes quality through unchanged.
    CHECK(adf_reward(0.73, {1.05}, {{1.05, 0.95}}) == doctest::Approx(0.73));
    // Any objective outside its band annihilates the reward.
    CHECK(adf_reward(0.99, {1.05 + 1.0}, {{1.05, 0.95}}) == 0.0);
    CHECK(adf_reward(0.99, {1.05, 0.31}, {{1.05, 0.95}, {0.1, 0.05}}) == 0.0);
    // Two objectives at half width: 0.8 * 0.5 * 0.5.
    CHECK(adf_reward(0.8, {1.05 + 0.475, 0.2 + 0.01}, {{1.05, 0.95}, {0.2, 0.02}}) ==
          doctest::Approx(0.2));
}

TEST_CASE("adf_reward is monotone in quality for fixed objectives") {
    RngStream rng = make_stream(3);
    const std::vector<DesirabilitySpec> specs{{1.0, 0.5}};
    for (int i = 0; i < 100; ++i) {
        const double obj = rng.uniform(0.4, 1.6);
        const double q1 = rng.uniform();
        const double q2 = rng.uniform();
        const double r1 = adf_reward(std::min(q1, q2), {obj}, specs);
        const double r2 = adf_reward(std::max(q1, q2), {obj}, specs);
        CHECK(r2 >= r1);
    }
}

TEST_CASE("adf_reward checks the objective/spec pairing") {
    CHECK_THROWS_AS(adf_reward(0.5, {1.0, 2.0}, {{1.0, 0.5}}), ContractViolation);
}

TEST_CASE("adf_reward stays in the unit interval for unit-interval quality") {
    RngStream rng = make_stream(6);
    for (int i = 0; i < 500; ++i) {
        const double q = rng.uniform();
        const std::vector<double> objs{rng.uniform(0.0, 3.0), rng.uniform(0.0, 0.5)};
        const std::vector<DesirabilitySpec> specs{{rng.uniform(0.5, 2.0), rng.uniform(0.1, 1.0)},
                                                  {rng.uniform(0.1, 0.4), rng.uniform(0.01, 0.1)}};
        const double r = adf_reward(q, objs, specs);
        CHECK(r >= 0.0);
        CHECK(r <= 1.0);
    }
}

TEST_CASE("adc_reward closed forms") {
    const auto spec = max_min_spec();
    const AdcSpec adc{{0.1, 0.1}, 10.0};

    SUBCASE("empty archive gives zero") {
        ParetoArchive archive(spec);
        CHECK(adc_reward({0.5, 1.0}, archive, adc) == 0.0);
    }

    SUBCASE("candidate dominating 2 of 4 entries: tanh(0.6)") {
        // Staircase front: quality and cost both rise, so entries are
        // mutually incomparable and all four survive insertion.
        ParetoArchive archive(spec);
        archive.insert({0}, {0.50, 0.30});
        archive.insert({1}, {0.60, 0.60});
        archive.insert({2}, {0.90, 1.20});
        archive.insert({3}, {0.95, 1.50});
        const ObjectiveVector candidate{0.65, 0.25}; // beats the first two only
        REQUIRE(archive.size() == 4);
        const auto s = archive.stats(candidate, adc.epsilon);
        REQUIRE(s.n_dominators == 0);
        REQUIRE(s.n_dominated == 2);
        CHECK(adc_reward(candidate, archive, adc) ==
              doctest::Approx(0.5370495669980353).epsilon(1e-12));
        CHECK(adc_reward(candidate, archive, adc) == doctest::Approx(std::tanh(0.6)));
    }

    SUBCASE("candidate dominated by 3 entries with density 1: -tanh(0.4)") {
        ParetoArchive archive(spec);
        archive.insert({0}, {0.90, 0.10});
        archive.insert({1}, {0.92, 0.15});
        archive.insert({2}, {0.95, 0.20});
        // Dominated by all three; only (0.95, 0.20) sits within the 0.1 box.
        const ObjectiveVector candidate{0.85, 0.28};
        REQUIRE(archive.size() == 3);
        const auto s = archive.stats(candidate, adc.epsilon);
        REQUIRE(s.n_dominators == 3);
        REQUIRE(s.density == 1);
        CHECK(adc_reward(candidate, archive, adc) ==
              doctest::Approx(-0.3799489622552249).epsilon(1e-12));
        CHECK(adc_reward(candidate, archive, adc) == doctest::Approx(-std::tanh(0.4)));
    }
}

TEST_CASE("adc_reward sign tracks dominance status exactly") {
    const auto spec = max_min_spec();
    const AdcSpec adc{{0.05, 0.1}, 10.0};
    RngStream rng = make_stream(8);
    ParetoArchive archive(spec);
    for (int i = 0; i < 60; ++i)
        archive.insert({i}, {rng.uniform(), rng.uniform(0.1, 2.0)});
    for (int trial = 0; trial < 300; ++trial) {
        const ObjectiveVector candidate{rng.uniform(), rng.uniform(0.1, 2.0)};
        const auto s = archive.stats(candidate, adc.epsilon);
        const double r = adc_reward(candidate, archive, adc);
        if (s.n_dominators > 0)
            CHECK(r < 0.0);
        else
            CHECK(r >= 0.0);
    }
}

TEST_CASE("non-dominated reward grows with front size") {
    const auto spec = max_min_spec();
    const AdcSpec adc{{0.0, 0.0}, 10.0};
    // Mutually incomparable entries along a staircase; the candidate is cheaper
    // than all of them but worse on quality, so it stays incomparable throughout.
    ParetoArchive archive(spec);
    const ObjectiveVector candidate{0.05, 0.15};
    double prev = -1.0;
    for (int n = 1; n <= 40; ++n) {
        archive.insert({n}, {0.1 + 0.02 * n, 0.2 + 0.04 * n});
        const double r = adc_reward(candidate, archive, adc);
        CHECK(r >= prev);
        prev = r;
    }
}

TEST_CASE("adc spec validation") {
    CHECK_THROWS_AS((AdcSpec{{0.1}, 0.0}).validate(), ContractViolation);
    CHECK_THROWS_AS((AdcSpec{{-0.1}, 10.0}).validate(), ContractViolation);
}
