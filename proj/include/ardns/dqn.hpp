#pragma once

// Deep Q-network baseline: replay buffer, target network, epsilon-greedy
// with a linear anneal, plain SGD on the squared TD error.

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "ardns/episode.hpp"
#include "ardns/mlp.hpp"
#include "ardns/rng.hpp"

namespace ardns::dqn {

using Features = std::array<double, 2>;

struct Transition {
  Features state{};
  std::size_t action = 0;
  double reward = 0.0;
  Features next_state{};
  bool done = false;
};

// FIFO ring buffer; once full, each push evicts the oldest entry.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity = 1000);

  void push(const Transition& t);
  // i = 0 is the oldest entry.
  const Transition& at(std::size_t i) const;
  std::size_t size() const { return size_; }
  std::size_t capacity() const { return storage_.size(); }

  // Uniform sample with replacement.
  std::vector<Transition> sample(std::size_t batch, Rng& rng) const;

 private:
  std::vector<Transition> storage_;
  std::size_t head_ = 0;  // next write slot
  std::size_t size_ = 0;
};

struct DqnConfig {
  std::size_t hidden = 32;
  double learning_rate = 0.001;
  double gamma = 0.9;
  std::size_t batch_size = 32;
  std::size_t buffer_capacity = 1000;
  std::size_t target_sync_interval = 100;
  double epsilon_start = 1.0;
  double epsilon_end = 0.05;
  // Fraction of all episodes over which epsilon is annealed linearly.
  double anneal_fraction = 0.5;
};

// r + gamma * max_next_q, or r alone for terminal samples.
double td_target(double reward, double gamma, double max_next_q, bool done);

double annealed_epsilon(std::size_t episode, std::size_t total_episodes, const DqnConfig& cfg);

// One uniform draw for the epsilon test, one more when exploring. Greedy
// ties go to the lowest index.
std::size_t dqn_act(const nn::Mlp& net, const Features& state, double epsilon, Rng& rng);

// One SGD step on mean((Q(s, a) - target)^2) over the batch, with targets
// from `target_net`. Returns the pre-update loss. Throws
// std::invalid_argument on an empty batch.
double dqn_update(nn::Mlp& net, const nn::Mlp& target_net, std::span<const Transition> batch,
                  double lr, double gamma);

// Online network plus target network, synced every target_sync_interval
// updates.
class DqnLearner {
 public:
  DqnLearner(const DqnConfig& cfg, Rng& rng);

  double update(std::span<const Transition> batch);

  const nn::Mlp& online() const { return online_; }
  const nn::Mlp& target() const { return target_; }
  std::size_t updates() const { return updates_; }

 private:
  DqnConfig cfg_;
  nn::Mlp online_;
  nn::Mlp target_;
  std::size_t updates_ = 0;
};

std::vector<EpisodeRecord> train(const TrainOptions& options, const DqnConfig& cfg = {});

}  // namespace ardns::dqn
