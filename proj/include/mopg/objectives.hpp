#ifndef MOPG_OBJECTIVES_HPP
#define MOPG_OBJECTIVES_HPP

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mopg/errors.hpp"

namespace mopg {

enum class Orientation { Maximize, Minimize };

using Encoding = std::vector<int>;
using ObjectiveVector = std::vector<double>;

// Describes the m >= 2 objective axes: direction, label, and the native-unit
// range used for normalization.
struct ObjectiveSpec {
    std::vector<Orientation> orientations;
    std::vector<std::string> names;
    std::vector<std::pair<double, double>> ranges; // (lo, hi), lo < hi

    std::size_t m() const { return orientations.size(); }
    void validate() const;
};

// Pareto dominance: a at least as good as b on every axis, strictly better on
// at least one. Irreflexive and asymmetric.
bool dominates(const ObjectiveVector& a, const ObjectiveVector& b, const ObjectiveSpec& spec);

struct ArchiveEntry {
    Encoding encoding;
    ObjectiveVector objectives;
};

enum class InsertResult { Dominated, Inserted };

struct InsertOutcome {
    InsertResult result;
    std::vector<ArchiveEntry> removed; // entries displaced by the candidate
};

struct ArchiveStats {
    std::size_t n_dominators = 0; // archive entries dominating the candidate
    std::size_t n_dominated = 0;  // archive entries the candidate dominates
    std::size_t density = 0;      // entries within the per-axis epsilon box
};

// Live mutually non-dominated set, unique by encoding. Flat storage with
// linear scans; fronts here stay small enough that no spatial index pays off.
//
// Single-writer: one run mutates its archive; concurrent reads are fine
// between mutations and values copy safely across threads.
class ParetoArchive {
public:
    explicit ParetoArchive(ObjectiveSpec spec) : spec_(std::move(spec)) { spec_.validate(); }

    // Offers a candidate. A candidate dominated by any entry leaves the
    // archive unchanged; otherwise it is inserted and every entry it
    // dominates is removed. A re-offered encoding goes through the same
    // dominance path; if the candidate survives, the stored entry for that
    // encoding is replaced (and reported in `removed`).
    InsertOutcome insert(const Encoding& encoding, const ObjectiveVector& objectives);

    // Dominance counts and epsilon-box density for a candidate, against the
    // archive as it currently stands. Coincident points count toward density;
    // dominance stays strict.
    ArchiveStats stats(const ObjectiveVector& candidate, const std::vector<double>& epsilon) const;

    const std::vector<ArchiveEntry>& entries() const { return entries_; }
    const ObjectiveSpec& spec() const { return spec_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

private:
    ObjectiveSpec spec_;
    std::vector<ArchiveEntry> entries_;
};

// Pareto front of a point set: offers every point, in order, to an empty
// archive. For inputs with unique encodings this equals the all-pairs
// non-dominance filter; points re-offering an encoding follow the archive's
// replacement rule, so the result matches incremental archive state exactly.
// An empty input yields an empty archive.
ParetoArchive extract_pareto_front(const std::vector<ArchiveEntry>& points, const ObjectiveSpec& spec);

// JSON form: {"spec": {...}, "entries": [{"encoding": [...], "objectives": [...]}]}
nlohmann::json objective_spec_to_json(const ObjectiveSpec& spec);
ObjectiveSpec objective_spec_from_json(const nlohmann::json& j);
nlohmann::json archive_to_json(const ParetoArchive& archive);
ParetoArchive archive_from_json(const nlohmann::json& j);

} // namespace mopg

#endif
