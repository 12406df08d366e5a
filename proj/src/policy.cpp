#include "mopg/policy.hpp"

#include <algorithm>
#include <cmath>

namespace mopg {

namespace {

constexpr double kAdamBeta1 = 0.9;
constexpr double kAdamBeta2 = 0.999;
constexpr double kAdamEps = 1e-8;

LogitTable zeros_like(const LogitTable& shape) {
    LogitTable t(shape.size());
    for (std::size_t i = 0; i < shape.size(); ++i) t[i].assign(shape[i].size(), 0.0);
    return t;
}

} // namespace

void PolicyParams::validate() const {
    require(!logits.empty(), "PolicyParams: empty logit table");
    require(std::isfinite(baseline), "PolicyParams: baseline must be finite");
    require(baseline_decay > 0.0 && baseline_decay < 1.0, "PolicyParams: baseline_decay in (0,1)");
    require(learning_rate > 0.0, "PolicyParams: learning_rate must be > 0");
    require(tanh_constant > 0.0, "PolicyParams: tanh_constant must be > 0");
}

PolicyParams make_policy(const SequenceSpace& space, double learning_rate, UpdateRule rule) {
    PolicyParams p;
    p.logits.resize(space.L);
    for (std::size_t t = 0; t < space.L; ++t)
        p.logits[t].assign(static_cast<std::size_t>(space.arities[t]), 0.0);
    p.learning_rate = learning_rate;
    p.update_rule = rule;
    if (rule == UpdateRule::Adam) {
        p.adam_m = zeros_like(p.logits);
        p.adam_v = zeros_like(p.logits);
    }
    p.validate();
    return p;
}

std::vector<double> action_distribution(const PolicyParams& p, std::size_t position,
                                        double temperature) {
    require(temperature > 0.0, "action_distribution: temperature must be > 0");
    require(position < p.logits.size(), "action_distribution: position out of range");
    const auto& row = p.logits[position];
    std::vector<double> zeta(row.size());
    for (std::size_t k = 0; k < row.size(); ++k)
        zeta[k] = p.tanh_constant * std::tanh(row[k] / temperature);
    const double zmax = *std::max_element(zeta.begin(), zeta.end());
    double total = 0.0;
    for (auto& z : zeta) {
        z = std::exp(z - zmax);
        total += z;
    }
    for (auto& z : zeta) z /= total;
    return zeta;
}

PolicySample sample(const PolicyParams& p, double temperature, RngStream& rng) {
    PolicySample out;
    out.encoding.resize(p.logits.size());
    for (std::size_t t = 0; t < p.logits.size(); ++t) {
        const auto probs = action_distribution(p, t, temperature);
        const double u = rng.uniform();
        double cum = 0.0;
        std::size_t choice = probs.size() - 1;
        for (std::size_t k = 0; k < probs.size(); ++k) {
            cum += probs[k];
            if (u < cum) {
                choice = k;
                break;
            }
        }
        out.encoding[t] = static_cast<int>(choice);
        out.log_prob += std::log(probs[choice]);
    }
    return out;
}

LogitTable grad_log_prob(const PolicyParams& p, const Encoding& e, double temperature) {
    require(temperature > 0.0, "grad_log_prob: temperature must be > 0");
    require(e.size() == p.logits.size(), "grad_log_prob: encoding length mismatch");
    LogitTable grad = zeros_like(p.logits);
    for (std::size_t t = 0; t < p.logits.size(); ++t) {
        const auto probs = action_distribution(p, t, temperature);
        const auto chosen = static_cast<std::size_t>(e[t]);
        require(chosen < probs.size(), "grad_log_prob: decision out of range");
        for (std::size_t j = 0; j < probs.size(); ++j) {
            const double th = std::tanh(p.logits[t][j] / temperature);
            const double dzeta = p.tanh_constant * (1.0 - th * th) / temperature;
            const double indicator = j == chosen ? 1.0 : 0.0;
            grad[t][j] = (indicator - probs[j]) * dzeta;
        }
    }
    return grad;
}

namespace {

void apply_gradient(PolicyParams& p, const LogitTable& grad) {
    p.step_count += 1;
    if (p.update_rule == UpdateRule::GradientAscent) {
        for (std::size_t t = 0; t < p.logits.size(); ++t)
            for (std::size_t k = 0; k < p.logits[t].size(); ++k)
                p.logits[t][k] += p.learning_rate * grad[t][k];
        return;
    }
    if (p.adam_m.empty()) p.adam_m = zeros_like(p.logits);
    if (p.adam_v.empty()) p.adam_v = zeros_like(p.logits);
    const double bc1 = 1.0 - std::pow(kAdamBeta1, static_cast<double>(p.step_count));
    const double bc2 = 1.0 - std::pow(kAdamBeta2, static_cast<double>(p.step_count));
    for (std::size_t t = 0; t < p.logits.size(); ++t) {
        for (std::size_t k = 0; k < p.logits[t].size(); ++k) {
            const double g = grad[t][k];
            double& m = p.adam_m[t][k];
            double& v = p.adam_v[t][k];
            m = kAdamBeta1 * m + (1.0 - kAdamBeta1) * g;
            v = kAdamBeta2 * v + (1.0 - kAdamBeta2) * g * g;
            p.logits[t][k] += p.learning_rate * (m / bc1) / (std::sqrt(v / bc2) + kAdamEps);
        }
    }
}

} // namespace

void reinforce_update(PolicyParams& p, const Encoding& e, double reward, double temperature) {
    require(std::isfinite(reward), "reinforce_update: reward must be finite");
    const double advantage = reward - p.baseline;
    LogitTable grad = grad_log_prob(p, e, temperature);
    for (auto& row : grad)
        for (auto& g : row) g *= advantage;
    apply_gradient(p, grad);
    p.baseline = p.baseline_decay * p.baseline + (1.0 - p.baseline_decay) * reward;
}

void reinforce_update_batch(PolicyParams& p, const std::vector<Encoding>& encodings,
                            const std::vector<double>& rewards, double temperature) {
    require(!encodings.empty() && encodings.size() == rewards.size(),
            "reinforce_update_batch: need matching non-empty encodings and rewards");
    if (encodings.size() == 1) {
        reinforce_update(p, encodings[0], rewards[0], temperature);
        return;
    }
    LogitTable total = zeros_like(p.logits);
    double reward_sum = 0.0;
    for (std::size_t b = 0; b < encodings.size(); ++b) {
        require(std::isfinite(rewards[b]), "reinforce_update_batch: rewards must be finite");
        const double advantage = rewards[b] - p.baseline;
        const LogitTable grad = grad_log_prob(p, encodings[b], temperature);
        for (std::size_t t = 0; t < total.size(); ++t)
            for (std::size_t k = 0; k < total[t].size(); ++k) total[t][k] += advantage * grad[t][k];
        reward_sum += rewards[b];
    }
    const double inv = 1.0 / static_cast<double>(encodings.size());
    for (auto& row : total)
        for (auto& g : row) g *= inv;
    apply_gradient(p, total);
    p.baseline = p.baseline_decay * p.baseline + (1.0 - p.baseline_decay) * reward_sum * inv;
}

nlohmann::json policy_to_json(const PolicyParams& p) {
    nlohmann::json j{
        {"logits", p.logits},
        {"baseline", p.baseline},
        {"baseline_decay", p.baseline_decay},
        {"learning_rate", p.learning_rate},
        {"tanh_constant", p.tanh_constant},
        {"update_rule", p.update_rule == UpdateRule::Adam ? "adam" : "ascent"},
        {"step_count", p.step_count},
    };
    if (p.update_rule == UpdateRule::Adam) {
        j["adam_m"] = p.adam_m;
        j["adam_v"] = p.adam_v;
    }
    return j;
}

PolicyParams policy_from_json(const nlohmann::json& j) {
    PolicyParams p;
    p.logits = j.at("logits").get<LogitTable>();
    p.baseline = j.at("baseline").get<double>();
    p.baseline_decay = j.value("baseline_decay", 0.95);
    p.learning_rate = j.value("learning_rate", 0.001);
    p.tanh_constant = j.value("tanh_constant", 1.5);
    p.update_rule = j.value("update_rule", "ascent") == std::string("adam") ? UpdateRule::Adam
                                                                            : UpdateRule::GradientAscent;
    p.step_count = j.value("step_count", 0L);
    if (j.contains("adam_m")) p.adam_m = j.at("adam_m").get<LogitTable>();
    if (j.contains("adam_v")) p.adam_v = j.at("adam_v").get<LogitTable>();
    p.validate();
    return p;
}

} // namespace mopg
