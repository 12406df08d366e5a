#include "mopg/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace mopg {

void NormalizationSpec::validate() const {
    require(m() >= 2, "NormalizationSpec: need m >= 2 axes");
    require(ranges.size() == m(), "NormalizationSpec: orientation/range count mismatch");
    for (const auto& [lo, hi] : ranges) require(lo < hi, "NormalizationSpec: each range needs lo < hi");
}

double NormalizationSpec::normalize(double value, std::size_t axis) const {
    const auto& [lo, hi] = ranges[axis];
    const double u = (value - lo) / (hi - lo);
    const double oriented = orientations[axis] == Orientation::Maximize ? u : 1.0 - u;
    return std::clamp(oriented, 0.0, 1.0);
}

std::vector<double> NormalizationSpec::normalize_point(const ObjectiveVector& v) const {
    require(v.size() == m(), "NormalizationSpec: point dimension mismatch");
    std::vector<double> out(m());
    for (std::size_t i = 0; i < m(); ++i) out[i] = normalize(v[i], i);
    return out;
}

NormalizationSpec NormalizationSpec::from_objectives(const ObjectiveSpec& spec) {
    NormalizationSpec norm{spec.orientations, spec.ranges};
    norm.validate();
    return norm;
}

namespace {

// Union area of corner-anchored rectangles [ref_x, x] x [ref_y, y] for
// normalized maximize-points, by descending-x staircase sweep.
double staircase_area(std::vector<std::pair<double, double>> pts, double ref_x, double ref_y) {
    double area = 0.0;
    std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
        return a.first != b.first ? a.first > b.first : a.second > b.second;
    });
    double best_y = ref_y;
    for (const auto& [x, y] : pts) {
        if (x <= ref_x) continue;
        if (y > best_y) {
            area += (x - ref_x) * (y - best_y);
            best_y = y;
        }
    }
    return area;
}

} // namespace

double dominated_area_2d(const ParetoArchive& front, const NormalizationSpec& norm) {
    norm.validate();
    require(norm.m() == 2, "dominated_area_2d: defined for exactly two objectives");
    if (front.empty()) return 0.0;
    std::vector<std::pair<double, double>> pts;
    pts.reserve(front.size());
    for (const auto& e : front.entries()) {
        const auto p = norm.normalize_point(e.objectives);
        pts.emplace_back(p[0], p[1]);
    }
    return staircase_area(std::move(pts), 0.0, 0.0);
}

double hypervolume(const ParetoArchive& front, const std::vector<double>& reference,
                   const NormalizationSpec& norm) {
    norm.validate();
    require(norm.m() == 2 || norm.m() == 3, "hypervolume: implemented for m in {2, 3}");
    require(reference.size() == norm.m(), "hypervolume: reference dimension mismatch");
    if (front.empty()) return 0.0;

    std::vector<std::vector<double>> pts;
    pts.reserve(front.size());
    for (const auto& e : front.entries()) {
        auto p = norm.normalize_point(e.objectives);
        for (std::size_t i = 0; i < p.size(); ++i)
            require(p[i] >= reference[i],
                    "hypervolume: reference must be weakly dominated by every front point");
        pts.push_back(std::move(p));
    }

    if (norm.m() == 2) {
        std::vector<std::pair<double, double>> flat;
        flat.reserve(pts.size());
        for (const auto& p : pts) flat.emplace_back(p[0], p[1]);
        return staircase_area(std::move(flat), reference[0], reference[1]);
    }

    // Slice sweep: between consecutive z-levels, the cross-section is the 2-D
    // dominated area of all points at or above the upper level.
    std::sort(pts.begin(), pts.end(),
              [](const auto& a, const auto& b) { return a[2] > b[2]; });
    double volume = 0.0;
    std::vector<std::pair<double, double>> active;
    std::size_t i = 0;
    while (i < pts.size()) {
        const double z = pts[i][2];
        while (i < pts.size() && pts[i][2] == z) {
            active.emplace_back(pts[i][0], pts[i][1]);
            ++i;
        }
        const double z_next = i < pts.size() ? pts[i][2] : reference[2];
        volume += staircase_area(active, reference[0], reference[1]) * (z - z_next);
    }
    return volume;
}

std::vector<std::size_t> sample_histogram(const RunRecord& record, std::size_t axis, int bins) {
    require(bins >= 1, "sample_histogram: need at least one bin");
    require(axis < record.objective_spec.m(), "sample_histogram: axis out of range");
    const auto& [lo, hi] = record.objective_spec.ranges[axis];
    std::vector<std::size_t> counts(static_cast<std::size_t>(bins), 0);
    for (const auto& row : record.samples) {
        const double u = (row.objectives[axis] - lo) / (hi - lo);
        int b = static_cast<int>(std::floor(u * bins));
        b = std::clamp(b, 0, bins - 1);
        counts[static_cast<std::size_t>(b)] += 1;
    }
    return counts;
}

nlohmann::json run_metrics_json(const RunRecord& record, int histogram_bins) {
    const auto norm = NormalizationSpec::from_objectives(record.objective_spec);
    const std::size_t m = record.objective_spec.m();
    const std::vector<double> origin(m, 0.0);

    nlohmann::json j;
    j["algorithm"] = record.algorithm;
    j["seed"] = record.seed;
    j["config_fingerprint"] = record.config_fingerprint;
    j["front_size"] = record.final_front.size();
    j["sample_count"] = record.samples.size();
    j["hypervolume"] = hypervolume(record.final_front, origin, norm);
    j["dominated_area"] =
        m == 2 ? dominated_area_2d(record.final_front, norm) : j["hypervolume"].get<double>();
    // Every axis is normalized into [0,1] with the reference at the origin
    // corner; recorded so runs only compare when their conventions agree.
    j["normalization"] = {{"reference", origin},
                          {"ranges", record.objective_spec.ranges},
                          {"orientations", objective_spec_to_json(record.objective_spec)["orientations"]}};
    auto& hist = j["histograms"] = nlohmann::json::object();
    for (std::size_t axis = 0; axis < m; ++axis)
        hist[record.objective_spec.names[axis]] = sample_histogram(record, axis, histogram_bins);
    return j;
}

} // namespace mopg
