#include "mopg/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace mopg {

double temperature_at(const TemperatureSchedule& s, long step) {
    s.validate();
    require(step >= 0, "temperature_at: step must be >= 0");
    const long phase = step % (s.period + 1);
    const double x = std::numbers::pi * static_cast<double>(phase) / static_cast<double>(s.period);
    return s.t_min + (s.t_max - s.t_min) / 2.0 * (1.0 + std::cos(x));
}

double target_at(double tau_min, double tau_max, long n_anneal, long step) {
    require(tau_min < tau_max, "target_at: need tau_min < tau_max");
    require(n_anneal >= 1, "target_at: n_anneal must be >= 1");
    require(step >= 1 && step <= n_anneal,
            "target_at: step " + std::to_string(step) + " outside 1.." + std::to_string(n_anneal));
    if (step == n_anneal) return tau_max;
    return tau_min + (tau_max - tau_min) / static_cast<double>(n_anneal) * static_cast<double>(step);
}

std::vector<std::pair<int, int>> zigzag_traversal(int rows, int cols) {
    require(rows >= 1 && cols >= 1, "zigzag_traversal: grid must be at least 1x1");
    std::vector<std::pair<int, int>> order;
    order.reserve(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols));
    for (int d = 0; d <= rows + cols - 2; ++d) {
        const int i_lo = std::max(0, d - cols + 1);
        const int i_hi = std::min(rows - 1, d);
        if (d % 2 == 0) {
            for (int i = i_lo; i <= i_hi; ++i) order.emplace_back(i, d - i);
        } else {
            for (int i = i_hi; i >= i_lo; --i) order.emplace_back(i, d - i);
        }
    }
    return order;
}

namespace {

// Boustrophedon nesting: each outer index advances one step, and the inner
// block is replayed in reverse so the seam stays within distance 1.
std::vector<std::vector<int>> nested_traversal(const std::vector<int>& sizes) {
    const std::size_t d = sizes.size();
    if (d == 1) {
        std::vector<std::vector<int>> path;
        path.reserve(static_cast<std::size_t>(sizes[0]));
        for (int i = 0; i < sizes[0]; ++i) path.push_back({i});
        return path;
    }
    if (d == 2) {
        std::vector<std::vector<int>> path;
        for (auto [i, j] : zigzag_traversal(sizes[0], sizes[1])) path.push_back({i, j});
        return path;
    }
    auto inner = nested_traversal({sizes.begin() + 1, sizes.end()});
    std::vector<std::vector<int>> path;
    path.reserve(static_cast<std::size_t>(sizes[0]) * inner.size());
    for (int a = 0; a < sizes[0]; ++a) {
        const bool reversed = a % 2 == 1;
        for (std::size_t k = 0; k < inner.size(); ++k) {
            const auto& cell = inner[reversed ? inner.size() - 1 - k : k];
            std::vector<int> idx;
            idx.reserve(d);
            idx.push_back(a);
            idx.insert(idx.end(), cell.begin(), cell.end());
            path.push_back(std::move(idx));
        }
    }
    return path;
}

} // namespace

TargetGrid::TargetGrid(std::vector<std::vector<double>> axis_values)
    : axis_values_(std::move(axis_values)) {
    require(!axis_values_.empty(), "TargetGrid: need at least one dimension");
    std::vector<int> sizes;
    for (const auto& axis : axis_values_) {
        require(!axis.empty(), "TargetGrid: each dimension needs at least one value");
        require(std::is_sorted(axis.begin(), axis.end()), "TargetGrid: axis values must ascend");
        sizes.push_back(static_cast<int>(axis.size()));
    }
    traversal_ = nested_traversal(sizes);
}

std::vector<double> TargetGrid::target_at(std::size_t k) const {
    const auto& idx = traversal_.at(k);
    std::vector<double> t(dims());
    for (std::size_t i = 0; i < dims(); ++i) t[i] = axis_values_[i][static_cast<std::size_t>(idx[i])];
    return t;
}

TargetGrid TargetGrid::regular(const std::vector<std::pair<double, double>>& bounds,
                               const std::vector<int>& sizes) {
    require(bounds.size() == sizes.size(), "TargetGrid::regular: bounds/sizes length mismatch");
    std::vector<std::vector<double>> axes(bounds.size());
    for (std::size_t i = 0; i < bounds.size(); ++i) {
        require(sizes[i] >= 1, "TargetGrid::regular: each dimension needs >= 1 point");
        require(bounds[i].first < bounds[i].second, "TargetGrid::regular: need lo < hi");
        const int n = sizes[i];
        axes[i].resize(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k)
            axes[i][static_cast<std::size_t>(k)] =
                n == 1 ? bounds[i].first
                       : bounds[i].first + (bounds[i].second - bounds[i].first) *
                                               static_cast<double>(k) / static_cast<double>(n - 1);
    }
    return TargetGrid(std::move(axes));
}

} // namespace mopg
