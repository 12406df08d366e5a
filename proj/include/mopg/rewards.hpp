#ifndef MOPG_REWARDS_HPP
#define MOPG_REWARDS_HPP

#include <cmath>
#include <vector>

#include "mopg/errors.hpp"
#include "mopg/objectives.hpp"

namespace mopg {

// "Target is best" triangular desirability: 1 at the target, falling off
// linearly to 0 at tau +/- delta.
struct DesirabilitySpec {
    double tau = 0.0;
    double delta = 1.0; // > 0

    void validate() const { require(delta > 0.0, "DesirabilitySpec: delta must be > 0"); }
};

inline double desirability(double value, const DesirabilitySpec& d) {
    d.validate();
    const double gap = std::abs(d.tau - value);
    return gap <= d.delta ? 1.0 - gap / d.delta : 0.0;
}

// Multiplicative target reward: quality times the product of one desirability
// factor per constrained objective. Any objective outside its band zeroes the
// whole reward.
inline double adf_reward(double quality, const std::vector<double>& constrained_objs,
                         const std::vector<DesirabilitySpec>& specs) {
    require(constrained_objs.size() == specs.size(),
            "adf_reward: constrained objective / desirability spec count mismatch");
    double r = quality;
    for (std::size_t i = 0; i < specs.size(); ++i) r *= desirability(constrained_objs[i], specs[i]);
    return r;
}

// Dominance-credit parameters: per-axis density radii and the tanh scale C.
struct AdcSpec {
    std::vector<double> epsilon;
    double c = 10.0;

    void validate() const {
        require(c > 0.0, "AdcSpec: scaling constant must be > 0");
        for (double e : epsilon) require(e >= 0.0, "AdcSpec: epsilon radii must be >= 0");
    }
};

// Dominance-based credit against the archive as it stands BEFORE this
// candidate is offered. Dominated candidates are penalized by how crowded
// and how dominated they are; everything else is rewarded by front size plus
// how much of the front it displaces. Sign tracks dominance status exactly.
inline double adc_reward(const ObjectiveVector& candidate, const ParetoArchive& archive,
                         const AdcSpec& spec) {
    spec.validate();
    const ArchiveStats s = archive.stats(candidate, spec.epsilon);
    if (s.n_dominators > 0)
        return -std::tanh((static_cast<double>(s.n_dominators) + static_cast<double>(s.density)) / spec.c);
    return std::tanh((static_cast<double>(archive.size()) + static_cast<double>(s.n_dominated)) / spec.c);
}

} // namespace mopg

#endif
