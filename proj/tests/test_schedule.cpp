#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "mopg/schedule.hpp"

using namespace mopg;

TEST_CASE("temperature_at reproduces the cosine warm-restart formula") {
    const TemperatureSchedule s{5.0, 10.0, 50};
    CHECK(temperature_at(s, 0) == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(temperature_at(s, 25) == doctest::Approx(7.5).epsilon(1e-12));
    CHECK(temperature_at(s, 50) == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(temperature_at(s, 51) == doctest::Approx(10.0).epsilon(1e-12)); // warm restart
}

TEST_CASE("temperature stays within bounds and is (nu+1)-periodic") {
    const TemperatureSchedule s{1.0, 25.0, 1200};
    for (long step = 0; step < 3 * (s.period + 1); step += 7) {
        const double t = temperature_at(s, step);
        CHECK(t >= s.t_min);
        CHECK(t <= s.t_max);
        CHECK(temperature_at(s, step) == temperature_at(s, step + s.period + 1));
    }
}

TEST_CASE("temperature_at matches a direct transcription of the formula") {
    const TemperatureSchedule s{5.0, 10.0, 50};
    for (long step : {0L, 10L, 25L, 50L, 51L, 357L}) {
        const double expected =
            s.t_min + (s.t_max - s.t_min) / 2.0 *
                          (1.0 + std::cos(std::numbers::pi *
                                          static_cast<double>(step % (s.period + 1)) /
                                          static_cast<double>(s.period)));
        CHECK(temperature_at(s, step) == doctest::Approx(expected).epsilon(1e-15));
    }
}

TEST_CASE("schedule validation rejects bad parameters") {
    CHECK_THROWS_AS(temperature_at({0.0, 10.0, 50}, 0), ContractViolation);
    CHECK_THROWS_AS(temperature_at({10.0, 5.0, 50}, 0), ContractViolation);
    CHECK_THROWS_AS(temperature_at({5.0, 10.0, 0}, 0), ContractViolation);
    CHECK_THROWS_AS(temperature_at({5.0, 10.0, 50}, -1), ContractViolation);
}

TEST_CASE("target_at anneals linearly and hits tau_max exactly") {
    CHECK(target_at(0.1, 2.0, 6000, 6000) == 2.0);
    CHECK(target_at(0.1, 2.0, 6000, 3000) == doctest::Approx(1.05));
    CHECK(target_at(0.1, 2.0, 1, 1) == 2.0);

    double prev = 0.0;
    for (long step = 1; step <= 100; ++step) {
        const double t = target_at(0.1, 2.0, 100, step);
        CHECK(t > prev); // strictly increasing
        prev = t;
    }
}

TEST_CASE("target_at rejects out-of-range steps") {
    CHECK_THROWS_AS(target_at(0.1, 2.0, 100, 0), ContractViolation);
    CHECK_THROWS_AS(target_at(0.1, 2.0, 100, 101), ContractViolation);
    CHECK_THROWS_AS(target_at(2.0, 0.1, 100, 1), ContractViolation);
}

TEST_CASE("zigzag_traversal hand-checked tiny grids") {
    CHECK(zigzag_traversal(1, 1) == std::vector<std::pair<int, int>>{{0, 0}});
    CHECK(zigzag_traversal(2, 2) ==
          std::vector<std::pair<int, int>>{{0, 0}, {1, 0}, {0, 1}, {1, 1}});
}

TEST_CASE("zigzag_traversal is a permutation with unit locality, all grids to 20x20") {
    for (int rows = 1; rows <= 20; ++rows) {
        for (int cols = 1; cols <= 20; ++cols) {
            const auto order = zigzag_traversal(rows, cols);
            REQUIRE(order.size() == static_cast<std::size_t>(rows) * cols);
            std::set<std::pair<int, int>> seen(order.begin(), order.end());
            CHECK(seen.size() == order.size());
            for (std::size_t k = 1; k < order.size(); ++k) {
                const int di = std::abs(order[k].first - order[k - 1].first);
                const int dj = std::abs(order[k].second - order[k - 1].second);
                CHECK(std::max(di, dj) <= 1);
            }
        }
    }
}

TEST_CASE("the 110x109 grid holds exactly 11990 points") {
    const auto order = zigzag_traversal(110, 109);
    CHECK(order.size() == 11990);
    std::set<std::pair<int, int>> seen(order.begin(), order.end());
    CHECK(seen.size() == 11990);
    for (std::size_t k = 1; k < order.size(); ++k) {
        const int di = std::abs(order[k].first - order[k - 1].first);
        const int dj = std::abs(order[k].second - order[k - 1].second);
        CHECK(std::max(di, dj) <= 1);
    }
}

TEST_CASE("regular target grids space values evenly with endpoints included") {
    const auto grid = TargetGrid::regular({{0.1, 2.0}}, {10});
    REQUIRE(grid.size() == 10);
    CHECK(grid.axis_values()[0].front() == doctest::Approx(0.1));
    CHECK(grid.axis_values()[0].back() == doctest::Approx(2.0));
    const double gap = grid.axis_values()[0][1] - grid.axis_values()[0][0];
    for (std::size_t i = 1; i < 10; ++i)
        CHECK(grid.axis_values()[0][i] - grid.axis_values()[0][i - 1] == doctest::Approx(gap));
}

TEST_CASE("2-D target grid traversal follows the zig-zag with real target values") {
    const auto grid = TargetGrid::regular({{0.1, 2.0}, {0.02, 0.31}}, {4, 3});
    REQUIRE(grid.size() == 12);
    std::set<std::vector<int>> seen;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        seen.insert(grid.index_at(k));
        const auto tau = grid.target_at(k);
        REQUIRE(tau.size() == 2);
        CHECK(tau[0] >= 0.1);
        CHECK(tau[0] <= 2.0);
        CHECK(tau[1] >= 0.02);
        CHECK(tau[1] <= 0.31);
    }
    CHECK(seen.size() == 12);
}

TEST_CASE("3-D nested traversal keeps unit locality at every seam") {
    const auto grid = TargetGrid::regular({{0.0, 1.0}, {0.0, 1.0}, {0.0, 1.0}}, {3, 4, 5});
    REQUIRE(grid.size() == 60);
    std::set<std::vector<int>> seen;
    for (std::size_t k = 0; k < grid.size(); ++k) seen.insert(grid.index_at(k));
    CHECK(seen.size() == 60);
    for (std::size_t k = 1; k < grid.size(); ++k) {
        int linf = 0;
        for (std::size_t d = 0; d < 3; ++d)
            linf = std::max(linf, std::abs(grid.index_at(k)[d] - grid.index_at(k - 1)[d]));
        CHECK(linf <= 1);
    }
}
