#include "mopg/objectives.hpp"

#include <algorithm>
#include <cmath>

namespace mopg {

void ObjectiveSpec::validate() const {
    require(orientations.size() >= 2, "ObjectiveSpec: need m >= 2 objectives");
    require(names.size() == orientations.size() && ranges.size() == orientations.size(),
            "ObjectiveSpec: orientations/names/ranges lengths disagree");
    for (const auto& [lo, hi] : ranges)
        require(lo < hi, "ObjectiveSpec: each range needs lo < hi");
}

namespace {

void check_dims(const ObjectiveVector& v, const ObjectiveSpec& spec, const char* who) {
    require(v.size() == spec.m(), std::string(who) + ": objective vector dimension mismatch");
    for (double x : v)
        require(std::isfinite(x), std::string(who) + ": objective values must be finite");
}

// Signed comparison on one axis: positive when a is strictly better than b.
inline double edge(double a, double b, Orientation o) {
    return o == Orientation::Maximize ? a - b : b - a;
}

} // namespace

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b, const ObjectiveSpec& spec) {
    check_dims(a, spec, "dominates");
    check_dims(b, spec, "dominates");
    bool strictly_better = false;
    for (std::size_t i = 0; i < spec.m(); ++i) {
        double d = edge(a[i], b[i], spec.orientations[i]);
        if (d < 0.0) return false;
        if (d > 0.0) strictly_better = true;
    }
    return strictly_better;
}

InsertOutcome ParetoArchive::insert(const Encoding& encoding, const ObjectiveVector& objectives) {
    check_dims(objectives, spec_, "ParetoArchive::insert");

    for (const auto& entry : entries_) {
        if (dominates(entry.objectives, objectives, spec_))
            return {InsertResult::Dominated, {}};
    }

    InsertOutcome outcome{InsertResult::Inserted, {}};
    auto displaced = [&](const ArchiveEntry& entry) {
        return dominates(objectives, entry.objectives, spec_) || entry.encoding == encoding;
    };
    auto it = std::stable_partition(entries_.begin(), entries_.end(),
                                    [&](const ArchiveEntry& e) { return !displaced(e); });
    outcome.removed.assign(it, entries_.end());
    entries_.erase(it, entries_.end());
    entries_.push_back({encoding, objectives});
    return outcome;
}

ArchiveStats ParetoArchive::stats(const ObjectiveVector& candidate,
                                  const std::vector<double>& epsilon) const {
    check_dims(candidate, spec_, "ParetoArchive::stats");
    require(epsilon.size() == spec_.m(), "ParetoArchive::stats: epsilon dimension mismatch");
    for (double e : epsilon)
        require(e >= 0.0, "ParetoArchive::stats: epsilon radii must be non-negative");

    ArchiveStats s;
    for (const auto& entry : entries_) {
        if (dominates(entry.objectives, candidate, spec_)) ++s.n_dominators;
        if (dominates(candidate, entry.objectives, spec_)) ++s.n_dominated;
        bool in_box = true;
        for (std::size_t i = 0; i < spec_.m() && in_box; ++i)
            in_box = std::abs(entry.objectives[i] - candidate[i]) <= epsilon[i];
        if (in_box) ++s.density;
    }
    return s;
}

ParetoArchive extract_pareto_front(const std::vector<ArchiveEntry>& points,
                                   const ObjectiveSpec& spec) {
    ParetoArchive archive(spec);
    for (const auto& p : points) archive.insert(p.encoding, p.objectives);
    return archive;
}

nlohmann::json objective_spec_to_json(const ObjectiveSpec& spec) {
    nlohmann::json j;
    j["m"] = spec.m();
    auto& orient = j["orientations"] = nlohmann::json::array();
    for (Orientation o : spec.orientations)
        orient.push_back(o == Orientation::Maximize ? "max" : "min");
    j["names"] = spec.names;
    auto& ranges = j["ranges"] = nlohmann::json::array();
    for (const auto& [lo, hi] : spec.ranges) ranges.push_back({lo, hi});
    return j;
}

ObjectiveSpec objective_spec_from_json(const nlohmann::json& j) {
    ObjectiveSpec spec;
    for (const auto& o : j.at("orientations")) {
        std::string s = o.get<std::string>();
        require(s == "max" || s == "min", "objective spec: orientation must be max or min");
        spec.orientations.push_back(s == "max" ? Orientation::Maximize : Orientation::Minimize);
    }
    spec.names = j.at("names").get<std::vector<std::string>>();
    for (const auto& r : j.at("ranges"))
        spec.ranges.emplace_back(r.at(0).get<double>(), r.at(1).get<double>());
    spec.validate();
    return spec;
}

nlohmann::json archive_to_json(const ParetoArchive& archive) {
    nlohmann::json j;
    j["spec"] = objective_spec_to_json(archive.spec());
    auto& entries = j["entries"] = nlohmann::json::array();
    for (const auto& e : archive.entries())
        entries.push_back({{"encoding", e.encoding}, {"objectives", e.objectives}});
    return j;
}

ParetoArchive archive_from_json(const nlohmann::json& j) {
    ParetoArchive archive(objective_spec_from_json(j.at("spec")));
    for (const auto& e : j.at("entries"))
        archive.insert(e.at("encoding").get<Encoding>(), e.at("objectives").get<ObjectiveVector>());
    return archive;
}

} // namespace mopg
