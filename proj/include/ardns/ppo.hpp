#pragma once

// PPO baseline: separate softmax policy and value networks, GAE advantages,
// clipped surrogate objective, full-batch SGD for a fixed number of epochs.

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "ardns/episode.hpp"
#include "ardns/mlp.hpp"
#include "ardns/rng.hpp"

namespace ardns::ppo {

using Features = std::array<double, 2>;

struct Step {
  Features state{};
  std::size_t action = 0;
  double reward = 0.0;
  bool done = false;
  double log_prob = 0.0;
  double value = 0.0;
};

using Trajectory = std::vector<Step>;

struct AdvantageEstimate {
  std::vector<double> advantages;
  std::vector<double> returns;
};

// Generalized advantage estimation with a zero bootstrap past the last step:
//   delta_t = r_t + gamma * V_{t+1} * (1 - done_t) - V_t
//   A_t     = delta_t + gamma * lambda * (1 - done_t) * A_{t+1}
//   R_t     = A_t + V_t
AdvantageEstimate gae(const Trajectory& trajectory, double gamma, double lambda);

// min(ratio * A, clip(ratio, 1 - eps, 1 + eps) * A).
double clipped_objective(double ratio, double advantage, double clip);

// Surrogate for one sample, given the new and old policy logits.
double surrogate(std::span<const double> new_logits, std::span<const double> old_logits,
                 std::size_t action, double advantage, double clip);

// Gradient of surrogate() with respect to the new logits.
std::vector<double> surrogate_logit_gradient(std::span<const double> new_logits,
                                             double old_log_prob, std::size_t action,
                                             double advantage, double clip);

struct PpoConfig {
  std::size_t hidden = 32;
  double learning_rate = 0.0003;
  double gamma = 0.99;
  double lambda = 0.95;
  double clip = 0.2;
  std::size_t epochs = 4;
  // Normalization is skipped when the advantages have (near) zero spread;
  // they are then only centered.
  bool normalize_advantages = true;
  std::size_t episodes_per_update = 1;
};

// Inverse-CDF draw from a probability vector (one uniform).
std::size_t sample_categorical(std::span<const double> probs, Rng& rng);

// Runs cfg.epochs full-batch steps: gradient ascent on the mean clipped
// surrogate for `policy`, descent on the mean squared return error for
// `value`. Throws std::invalid_argument when no trajectory has steps.
void ppo_update(nn::Mlp& policy, nn::Mlp& value, std::span<const Trajectory> trajectories,
                const PpoConfig& cfg);

std::vector<EpisodeRecord> train(const TrainOptions& options, const PpoConfig& cfg = {});

}  // namespace ardns::ppo
