#pragma once

// Quantum-circuit action selection on top of the dual memory, with a
// staged hyperparameter schedule, count-based curiosity and a
// variance-modulated weight update.

#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "ardns/environment.hpp"
#include "ardns/episode.hpp"
#include "ardns/linalg.hpp"
#include "ardns/memory.hpp"
#include "ardns/quantum.hpp"
#include "ardns/rng.hpp"

namespace ardns::agent {

using memory::CombinedMemory;
using memory::StateVec;

// One row per qubit angle.
using ActionWeights = Mat<quantum::kNumQubits, memory::kCombinedDim>;

struct StageParams {
  double learning_rate = 0.7;
  double epsilon_floor = 0.2;
  double short_decay = 0.85;
  double long_decay = 0.95;
  double curiosity_factor = 0.75;
  double exploration_boost = 1.0;
  double variance_sensitivity = 0.1;
  double state_change_penalty = 0.01;
  double weight_clip = 5.0;
  std::uint32_t shots = 16;

  bool operator==(const StageParams&) const = default;
};

inline constexpr double kEpsilonDecay = 0.995;
inline constexpr std::size_t kRewardWindow = 100;

// Stage boundaries (inclusive upper bounds): 100, 200, 300, then open.
StageParams stage_for_episode(std::size_t episode);

// Parameters used when the stage schedule is switched off.
StageParams default_stage_params();

struct RewardStats {
  double mean = 0.0;
  double variance = 0.0;
};

// Population mean and variance over the last kRewardWindow entries;
// (0, 0) for an empty series.
RewardStats reward_stats(std::span<const double> rewards);

struct CuriosityInputs {
  std::uint64_t visits = 0;
  int dist_to_goal = 0;
  double curiosity_factor = 0.75;
  double boost = 1.0;
};

// boost * c * 1/(1 + visits) * 10/(1 + dist).
double curiosity_bonus(const CuriosityInputs& in);

// ||current - previous||^2, or 0 without a previous state.
double state_change(const StateVec& current, const std::optional<StateVec>& previous);

// theta_i = <row i of weights, m>.
quantum::RotationAngles compute_angles(const ActionWeights& weights, const CombinedMemory& m);

// Always consumes one uniform draw for the epsilon test, plus one more for
// the random action when exploring. Greedy ties go to the lowest index.
std::size_t select_action(const quantum::Probabilities& probs, double epsilon, Rng& rng);

// eta * (r + b) / max(0.5, 1 + beta * var) * exp(-gamma * dS).
double update_gain(const StageParams& params, double reward, double bonus, double variance,
                   double state_change);

// Adds gain * m to both rows, then clips every entry to +-weight_clip.
ActionWeights weight_update(const ActionWeights& weights, const StageParams& params,
                            double reward, double bonus, double variance, double state_change,
                            const CombinedMemory& m);

// max(floor, 0.995 * epsilon).
double decay_epsilon(double epsilon, double floor);

// Fixed-capacity window of the most recent episode returns.
class RewardWindow {
 public:
  explicit RewardWindow(std::size_t capacity = kRewardWindow) : capacity_(capacity) {}

  void push(double value);
  std::vector<double> values() const { return {values_.begin(), values_.end()}; }
  std::size_t size() const { return values_.size(); }
  std::size_t capacity() const { return capacity_; }

 private:
  std::size_t capacity_;
  std::deque<double> values_;
};

struct AgentConfig {
  // Feed the attention-gated memory into the angles and updates instead of
  // the plain concatenation.
  bool use_attention_memory = false;
  bool stage_schedule = true;
};

struct AgentState {
  ActionWeights action_weights{};
  double epsilon = 1.0;
  std::map<env::Cell, std::uint64_t> visit_counts;
  RewardWindow reward_window;
  std::optional<StateVec> prev_state;
  std::size_t episode_index = 0;
};

// Per-step trace, exposed for diagnostics and tests.
struct StepTrace {
  env::Cell state;
  std::size_t action = 0;
  double reward = 0.0;
  double bonus = 0.0;
  double gain = 0.0;
  quantum::RotationAngles angles;
};

class ArdnsAgent {
 public:
  // Draws the memory weights, then the action weights, uniformly from
  // [-0.1, 0.1] out of the learner stream.
  ArdnsAgent(const AgentConfig& config, std::uint64_t seed);

  // Runs one episode from the world's start cell until the goal or the step
  // cap, then records the return, decays epsilon and advances the episode
  // counter. `trace`, if given, receives one entry per step.
  EpisodeRecord run_episode(const env::GridWorld& world,
                            std::vector<StepTrace>* trace = nullptr);

  StageParams params_for(std::size_t episode) const;

  const AgentState& state() const { return state_; }
  const memory::DualMemory& dual_memory() const { return memory_; }
  const memory::MemoryWeights& memory_weights() const { return memory_weights_; }
  const AgentConfig& config() const { return config_; }

 private:
  AgentConfig config_;
  Rng rng_;
  memory::MemoryWeights memory_weights_;
  memory::DualMemory memory_;
  AgentState state_;
};

inline StateVec to_state_vec(env::Cell c) {
  return {static_cast<double>(c.x), static_cast<double>(c.y)};
}

std::vector<EpisodeRecord> train(const TrainOptions& options, const AgentConfig& config = {});

}  // namespace ardns::agent
