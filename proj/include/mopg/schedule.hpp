#ifndef MOPG_SCHEDULE_HPP
#define MOPG_SCHEDULE_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "mopg/errors.hpp"

namespace mopg {

// Cosine temperature decay with warm restarts: decays from t_max to t_min
// over a period of nu steps, then jumps back to t_max and repeats. The value
// is exactly (nu+1)-periodic; step mod (nu+1) == 0 sits at t_max.
struct TemperatureSchedule {
    double t_min = 1.0;
    double t_max = 1.0;
    long period = 1; // nu >= 1

    void validate() const {
        require(t_min > 0.0 && t_min <= t_max, "TemperatureSchedule: need 0 < t_min <= t_max");
        require(period >= 1, "TemperatureSchedule: period must be >= 1");
    }
};

double temperature_at(const TemperatureSchedule& s, long step);

// Linear target annealing: step in 1..n_anneal maps onto
// (tau_min, tau_max], with target_at(.., n_anneal) == tau_max exactly.
double target_at(double tau_min, double tau_max, long n_anneal, long step);

// Visits every cell of a rows x cols grid exactly once, by anti-diagonal
// strips with alternating direction; consecutive cells always stay within
// Chebyshev index distance 1 so a policy can track the moving target.
std::vector<std::pair<int, int>> zigzag_traversal(int rows, int cols);

// Target grid for annealing several objectives at once: per-dimension target
// values plus a locality-preserving traversal over all grid points. Two
// dimensions use the zig-zag; higher dimensions nest it boustrophedon-style
// (outer index advances one step, inner block replays reversed).
class TargetGrid {
public:
    explicit TargetGrid(std::vector<std::vector<double>> axis_values);

    std::size_t size() const { return traversal_.size(); }
    std::size_t dims() const { return axis_values_.size(); }

    // Grid indices and target values of the k-th traversal point.
    const std::vector<int>& index_at(std::size_t k) const { return traversal_[k]; }
    std::vector<double> target_at(std::size_t k) const;

    const std::vector<std::vector<double>>& axis_values() const { return axis_values_; }

    // Evenly spaced values over each [lo, hi], endpoints included.
    static TargetGrid regular(const std::vector<std::pair<double, double>>& bounds,
                              const std::vector<int>& sizes);

private:
    std::vector<std::vector<double>> axis_values_;
    std::vector<std::vector<int>> traversal_;
};

} // namespace mopg

#endif
