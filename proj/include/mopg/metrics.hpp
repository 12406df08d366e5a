#ifndef MOPG_METRICS_HPP
#define MOPG_METRICS_HPP

#include <cstddef>
#include <vector>

#include <json.hpp>

#include "mopg/algorithms.hpp"
#include "mopg/objectives.hpp"

namespace mopg {

// Maps every objective axis onto maximize-in-[0,1]: maximize axes scale up
// from lo, minimize axes flip so that cheaper is larger. Values outside the
// range clamp to the unit interval.
struct NormalizationSpec {
    std::vector<Orientation> orientations;
    std::vector<std::pair<double, double>> ranges; // (lo, hi), lo < hi

    std::size_t m() const { return orientations.size(); }
    void validate() const;
    double normalize(double value, std::size_t axis) const;
    std::vector<double> normalize_point(const ObjectiveVector& v) const;

    static NormalizationSpec from_objectives(const ObjectiveSpec& spec);
};

// Lebesgue measure, within the unit square, of the region dominated-or-equaled
// by the front after normalization. Exact sorted rectangle sweep. An empty
// front measures 0.
double dominated_area_2d(const ParetoArchive& front, const NormalizationSpec& norm);

// Hypervolume against a reference corner in normalized space. m == 2 reduces
// exactly to dominated_area_2d when the reference is the origin; m == 3 runs
// a slice sweep over the sorted third axis. The reference must be weakly
// dominated by every front point after normalization.
double hypervolume(const ParetoArchive& front, const std::vector<double>& reference,
                   const NormalizationSpec& norm);

// Equal-width histogram of one objective axis over its normalization range,
// in native units; out-of-range samples clamp into the edge bins.
std::vector<std::size_t> sample_histogram(const RunRecord& record, std::size_t axis, int bins);

// metrics.json payload for one run:
// {"dominated_area", "hypervolume", "front_size", "histograms", ...}.
nlohmann::json run_metrics_json(const RunRecord& record, int histogram_bins = 10);

} // namespace mopg

#endif
