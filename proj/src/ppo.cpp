#include "ardns/ppo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ardns::ppo {

AdvantageEstimate gae(const Trajectory& trajectory, double gamma, double lambda) {
  const std::size_t n = trajectory.size();
  AdvantageEstimate est;
  est.advantages.assign(n, 0.0);
  est.returns.assign(n, 0.0);
  double next_value = 0.0;
  double next_adv = 0.0;
  for (std::size_t i = n; i-- > 0;) {
    const Step& st = trajectory[i];
    const double live = st.done ? 0.0 : 1.0;
    const double delta = st.reward + gamma * next_value * live - st.value;
    const double adv = delta + gamma * lambda * live * next_adv;
    est.advantages[i] = adv;
    est.returns[i] = adv + st.value;
    next_value = st.value;
    next_adv = adv;
  }
  return est;
}

double clipped_objective(double ratio, double advantage, double clip) {
  const double clipped = std::clamp(ratio, 1.0 - clip, 1.0 + clip);
  return std::min(ratio * advantage, clipped * advantage);
}

namespace {

double log_softmax_at(std::span<const double> logits, std::size_t k) {
  const double top = *std::max_element(logits.begin(), logits.end());
  double sum = 0.0;
  for (double z : logits) sum += std::exp(z - top);
  return logits[k] - top - std::log(sum);
}

}  // namespace

double surrogate(std::span<const double> new_logits, std::span<const double> old_logits,
                 std::size_t action, double advantage, double clip) {
  const double ratio =
      std::exp(log_softmax_at(new_logits, action) - log_softmax_at(old_logits, action));
  return clipped_objective(ratio, advantage, clip);
}

std::vector<double> surrogate_logit_gradient(std::span<const double> new_logits,
                                             double old_log_prob, std::size_t action,
                                             double advantage, double clip) {
  std::vector<double> grad(new_logits.size(), 0.0);
  const double ratio = std::exp(log_softmax_at(new_logits, action) - old_log_prob);
  // The clipped branch is constant in the parameters; only the unclipped
  // branch carries gradient when min() selects it.
  const bool unclipped = advantage >= 0.0 ? ratio <= 1.0 + clip : ratio >= 1.0 - clip;
  if (!unclipped) return grad;
  const std::vector<double> p = nn::softmax(new_logits);
  for (std::size_t k = 0; k < grad.size(); ++k) {
    grad[k] = advantage * ratio * ((k == action ? 1.0 : 0.0) - p[k]);
  }
  return grad;
}

std::size_t sample_categorical(std::span<const double> probs, Rng& rng) {
  const double u = rng.uniform();
  double acc = 0.0;
  std::size_t last_nonzero = 0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    acc += probs[k];
    if (probs[k] > 0.0) last_nonzero = k;
    if (u < acc) return k;
  }
  return last_nonzero;
}

void ppo_update(nn::Mlp& policy, nn::Mlp& value, std::span<const Trajectory> trajectories,
                const PpoConfig& cfg) {
  std::vector<Step> samples;
  std::vector<double> advantages;
  std::vector<double> returns;
  for (const Trajectory& traj : trajectories) {
    const AdvantageEstimate est = gae(traj, cfg.gamma, cfg.lambda);
    samples.insert(samples.end(), traj.begin(), traj.end());
    advantages.insert(advantages.end(), est.advantages.begin(), est.advantages.end());
    returns.insert(returns.end(), est.returns.begin(), est.returns.end());
  }
  if (samples.empty()) throw std::invalid_argument("ppo_update: no steps to learn from");
  const auto n = static_cast<double>(samples.size());

  if (cfg.normalize_advantages) {
    double mean = 0.0;
    for (double a : advantages) mean += a;
    mean /= n;
    double var = 0.0;
    for (double a : advantages) var += (a - mean) * (a - mean);
    const double sd = std::sqrt(var / n);
    for (double& a : advantages) a = sd > 1e-8 ? (a - mean) / sd : a - mean;
  }

  std::vector<double> upstream;
  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::vector<double> policy_grad(policy.parameters().size(), 0.0);
    std::vector<double> value_grad(value.parameters().size(), 0.0);
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const Step& st = samples[i];
      const std::vector<double> logits = policy.forward(st.state);
      upstream = surrogate_logit_gradient(logits, st.log_prob, st.action, advantages[i],
                                          cfg.clip);
      // Ascent on the surrogate is descent on its negation.
      for (double& g : upstream) g = -g / n;
      const std::vector<double> gp = policy.gradient(st.state, upstream);
      for (std::size_t k = 0; k < gp.size(); ++k) policy_grad[k] += gp[k];

      const double v = value.forward(st.state)[0];
      const double dv = 2.0 * (v - returns[i]) / n;
      const std::vector<double> gv = value.gradient(st.state, std::span<const double>(&dv, 1));
      for (std::size_t k = 0; k < gv.size(); ++k) value_grad[k] += gv[k];
    }
    policy.sgd_step(policy_grad, cfg.learning_rate);
    value.sgd_step(value_grad, cfg.learning_rate);
  }
}

std::vector<EpisodeRecord> train(const TrainOptions& options, const PpoConfig& cfg) {
  env::GridWorld world(options.grid);
  Rng rng(learner_seed(options.seed, "ppo"));
  nn::Mlp policy =
      nn::Mlp::random(2, cfg.hidden, env::kNumActions, nn::Activation::kTanh, rng);
  nn::Mlp value = nn::Mlp::random(2, cfg.hidden, 1, nn::Activation::kTanh, rng);
  const int size = world.size();
  std::vector<Trajectory> pending;

  return run_protocol(options, world, [&](std::size_t) {
    EpisodeRecord rec;
    Trajectory traj;
    env::Cell s = world.reset();
    while (rec.steps < world.max_steps()) {
      const Features x = env::scaled_coordinates(s, size);
      const std::vector<double> probs = nn::softmax(policy.forward(x));
      const std::size_t a = sample_categorical(probs, rng);
      const env::StepOutcome out = world.step(s, static_cast<int>(a));
      traj.push_back({x, a, out.reward, out.done, std::log(probs[a]), value.forward(x)[0]});
      rec.total_reward += out.reward;
      ++rec.steps;
      s = out.next_state;
      if (out.done) {
        rec.success = true;
        break;
      }
    }
    pending.push_back(std::move(traj));
    if (pending.size() >= cfg.episodes_per_update) {
      ppo_update(policy, value, pending, cfg);
      pending.clear();
    }
    return rec;
  });
}

}  // namespace ardns::ppo
