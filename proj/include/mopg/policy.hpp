#ifndef MOPG_POLICY_HPP
#define MOPG_POLICY_HPP

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "mopg/errors.hpp"
#include "mopg/rng.hpp"
#include "mopg/search_space.hpp"

namespace mopg {

enum class UpdateRule { GradientAscent, Adam };

using LogitTable = std::vector<std::vector<double>>;

// Factored categorical policy over decision sequences. Each position holds an
// independent logit row; sampling is Boltzmann over c * tanh(z / T). The tanh
// squashing keeps logits from running away and the temperature divides before
// it, so T -> infinity provably flattens the distribution to uniform.
//
// One run owns and mutates one instance; independent runs can execute in
// parallel, each with its own policy and RNG stream.
struct PolicyParams {
    LogitTable logits;          // z[t][k]
    double baseline = 0.0;      // EMA of observed rewards
    double baseline_decay = 0.95;
    double learning_rate = 0.001;
    double tanh_constant = 1.5;
    UpdateRule update_rule = UpdateRule::GradientAscent;
    long step_count = 0;

    // Adam state, used only when update_rule == Adam.
    LogitTable adam_m;
    LogitTable adam_v;

    void validate() const;
};

// Zero-initialized policy shaped for the space (uniform before any update).
PolicyParams make_policy(const SequenceSpace& space, double learning_rate,
                         UpdateRule rule = UpdateRule::GradientAscent);

// Softmax over c * tanh(z[t][k] / T). Entries are all positive and sum to 1.
std::vector<double> action_distribution(const PolicyParams& p, std::size_t position, double temperature);

struct PolicySample {
    Encoding encoding;
    double log_prob = 0.0;
};

// Samples every position independently at temperature T.
PolicySample sample(const PolicyParams& p, double temperature, RngStream& rng);

// Exact gradient of log pi(e) with respect to every logit:
//   d log pi / d z[t][j] = (1[j == e_t] - pi_t(j)) * c * (1 - tanh^2(z[t][j]/T)) / T.
LogitTable grad_log_prob(const PolicyParams& p, const Encoding& e, double temperature);

// REINFORCE with baseline, one sampled encoding per call. The advantage uses
// the pre-update baseline; the baseline EMA absorbs the reward afterwards.
void reinforce_update(PolicyParams& p, const Encoding& e, double reward, double temperature);

// Batched variant: one update from the mean of per-sample advantage gradients,
// then one baseline step on the mean reward.
void reinforce_update_batch(PolicyParams& p, const std::vector<Encoding>& encodings,
                            const std::vector<double>& rewards, double temperature);

// Snapshot for run resumption: logits, baseline, step counter.
nlohmann::json policy_to_json(const PolicyParams& p);
PolicyParams policy_from_json(const nlohmann::json& j);

} // namespace mopg

#endif
