#include "ardns/agent.hpp"

#include <algorithm>
#include <cmath>

namespace ardns::agent {

StageParams stage_for_episode(std::size_t episode) {
  StageParams p;
  if (episode <= 100) {
    p.learning_rate = 1.4;
    p.epsilon_floor = 0.9;
    p.short_decay = 0.7;
    p.long_decay = 0.8;
    p.curiosity_factor = 2.0;
    p.exploration_boost = 2.0;
  } else if (episode <= 200) {
    p.learning_rate = 1.05;
    p.epsilon_floor = 0.6;
    p.short_decay = 0.8;
    p.long_decay = 0.9;
    p.curiosity_factor = 1.5;
    p.exploration_boost = 1.5;
  } else if (episode <= 300) {
    p.learning_rate = 0.84;
    p.epsilon_floor = 0.3;
    p.short_decay = 0.85;
    p.long_decay = 0.95;
    p.curiosity_factor = 1.0;
    p.exploration_boost = 1.0;
  } else {
    p.learning_rate = 0.7;
    p.epsilon_floor = 0.2;
    p.short_decay = 0.9;
    p.long_decay = 0.98;
    p.curiosity_factor = 1.0;
    p.exploration_boost = 0.5;
  }
  return p;
}

StageParams default_stage_params() { return StageParams{}; }

RewardStats reward_stats(std::span<const double> rewards) {
  if (rewards.size() > kRewardWindow) rewards = rewards.last(kRewardWindow);
  if (rewards.empty()) return {};
  const auto n = static_cast<double>(rewards.size());
  double mean = 0.0;
  for (double r : rewards) mean += r;
  mean /= n;
  double var = 0.0;
  for (double r : rewards) var += (r - mean) * (r - mean);
  return {mean, var / n};
}

double curiosity_bonus(const CuriosityInputs& in) {
  const double novelty = 1.0 / (1.0 + static_cast<double>(in.visits));
  return in.boost * in.curiosity_factor * novelty * 10.0 /
         (1.0 + static_cast<double>(in.dist_to_goal));
}

double state_change(const StateVec& current, const std::optional<StateVec>& previous) {
  if (!previous) return 0.0;
  StateVec d{};
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = current[i] - (*previous)[i];
  return squared_norm(d);
}

quantum::RotationAngles compute_angles(const ActionWeights& weights, const CombinedMemory& m) {
  return {dot(weights[0], m), dot(weights[1], m)};
}

std::size_t select_action(const quantum::Probabilities& probs, double epsilon, Rng& rng) {
  if (rng.uniform() < epsilon) return rng.below(quantum::kNumOutcomes);
  std::size_t best = 0;
  for (std::size_t k = 1; k < probs.size(); ++k) {
    if (probs[k] > probs[best]) best = k;
  }
  return best;
}

double update_gain(const StageParams& params, double reward, double bonus, double variance,
                   double state_change) {
  const double damping = std::max(0.5, 1.0 + params.variance_sensitivity * variance);
  return params.learning_rate * (reward + bonus) / damping *
         std::exp(-params.state_change_penalty * state_change);
}

ActionWeights weight_update(const ActionWeights& weights, const StageParams& params,
                            double reward, double bonus, double variance, double state_change,
                            const CombinedMemory& m) {
  const double gain = update_gain(params, reward, bonus, variance, state_change);
  ActionWeights out = weights;
  for (auto& row : out) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      row[j] = std::clamp(row[j] + gain * m[j], -params.weight_clip, params.weight_clip);
    }
  }
  return out;
}

double decay_epsilon(double epsilon, double floor) {
  return std::max(floor, epsilon * kEpsilonDecay);
}

void RewardWindow::push(double value) {
  values_.push_back(value);
  while (values_.size() > capacity_) values_.pop_front();
}

ArdnsAgent::ArdnsAgent(const AgentConfig& config, std::uint64_t seed)
    : config_(config), rng_(seed) {
  memory_weights_ = memory::MemoryWeights::random(rng_);
  for (auto& row : state_.action_weights) {
    for (auto& w : row) w = rng_.uniform(-0.1, 0.1);
  }
}

StageParams ArdnsAgent::params_for(std::size_t episode) const {
  return config_.stage_schedule ? stage_for_episode(episode) : default_stage_params();
}

EpisodeRecord ArdnsAgent::run_episode(const env::GridWorld& world,
                                      std::vector<StepTrace>* trace) {
  const StageParams params = params_for(state_.episode_index);
  const std::vector<double> window = state_.reward_window.values();
  const RewardStats stats = reward_stats(window);

  EpisodeRecord record;
  record.episode = state_.episode_index;
  env::Cell s = world.reset();
  state_.prev_state.reset();

  while (record.steps < world.max_steps()) {
    const StateVec sv = to_state_vec(s);
    memory_ = memory::update_short(memory_, memory_weights_, sv, params.short_decay);
    memory_ = memory::update_long(memory_, memory_weights_, sv, params.long_decay);
    const CombinedMemory m = config_.use_attention_memory
                                 ? memory::attention(memory_, memory_weights_).gated
                                 : memory::combine(memory_);
    const double ds = state_change(sv, state_.prev_state);

    const quantum::RotationAngles angles = compute_angles(state_.action_weights, m);
    const quantum::ShotCounts counts =
        quantum::sample_shots(quantum::prepare_circuit(angles), params.shots, rng_);
    const std::size_t action =
        select_action(quantum::action_probabilities(counts), state_.epsilon, rng_);

    const env::StepOutcome out = world.step(s, static_cast<int>(action));

    std::uint64_t& visits = state_.visit_counts[s];
    const double bonus = curiosity_bonus({visits, env::manhattan_dist(s, world.goal()),
                                          params.curiosity_factor, params.exploration_boost});
    ++visits;

    state_.action_weights = weight_update(state_.action_weights, params, out.reward, bonus,
                                          stats.variance, ds, m);
    if (trace) {
      trace->push_back({s, action, out.reward, bonus,
                        update_gain(params, out.reward, bonus, stats.variance, ds), angles});
    }

    record.total_reward += out.reward;
    ++record.steps;
    state_.prev_state = sv;
    s = out.next_state;
    if (out.done) {
      record.success = true;
      break;
    }
  }

  state_.reward_window.push(record.total_reward);
  state_.epsilon = decay_epsilon(state_.epsilon, params.epsilon_floor);
  ++state_.episode_index;
  return record;
}

std::vector<EpisodeRecord> train(const TrainOptions& options, const AgentConfig& config) {
  env::GridWorld world(options.grid);
  ArdnsAgent agent(config, learner_seed(options.seed, "ardns"));
  return run_protocol(options, world,
                      [&](std::size_t) { return agent.run_episode(world); });
}

}  // namespace ardns::agent
