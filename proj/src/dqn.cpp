#include "ardns/dqn.hpp"

#include <algorithm>
#include <stdexcept>

namespace ardns::dqn {

ReplayBuffer::ReplayBuffer(std::size_t capacity) : storage_(capacity) {
  if (capacity == 0) throw std::invalid_argument("replay buffer capacity must be positive");
}

void ReplayBuffer::push(const Transition& t) {
  storage_[head_] = t;
  head_ = (head_ + 1) % storage_.size();
  size_ = std::min(size_ + 1, storage_.size());
}

const Transition& ReplayBuffer::at(std::size_t i) const {
  if (i >= size_) throw std::out_of_range("replay buffer index out of range");
  const std::size_t oldest = (head_ + storage_.size() - size_) % storage_.size();
  return storage_[(oldest + i) % storage_.size()];
}

std::vector<Transition> ReplayBuffer::sample(std::size_t batch, Rng& rng) const {
  if (size_ == 0) throw std::logic_error("cannot sample from an empty replay buffer");
  std::vector<Transition> out;
  out.reserve(batch);
  for (std::size_t i = 0; i < batch; ++i) out.push_back(at(rng.below(size_)));
  return out;
}

double td_target(double reward, double gamma, double max_next_q, bool done) {
  return done ? reward : reward + gamma * max_next_q;
}

double annealed_epsilon(std::size_t episode, std::size_t total_episodes, const DqnConfig& cfg) {
  const double horizon = cfg.anneal_fraction * static_cast<double>(total_episodes);
  if (horizon <= 0.0) return cfg.epsilon_end;
  const double t = static_cast<double>(episode) / horizon;
  if (t >= 1.0) return cfg.epsilon_end;
  return cfg.epsilon_start + t * (cfg.epsilon_end - cfg.epsilon_start);
}

std::size_t dqn_act(const nn::Mlp& net, const Features& state, double epsilon, Rng& rng) {
  if (rng.uniform() < epsilon) return rng.below(net.outputs());
  return nn::argmax(net.forward(state));
}

double dqn_update(nn::Mlp& net, const nn::Mlp& target_net, std::span<const Transition> batch,
                  double lr, double gamma) {
  if (batch.empty()) throw std::invalid_argument("dqn_update: empty batch");
  const auto n = static_cast<double>(batch.size());
  std::vector<double> grad(net.parameters().size(), 0.0);
  std::vector<double> upstream(net.outputs(), 0.0);
  double loss = 0.0;
  for (const Transition& t : batch) {
    const std::vector<double> next_q = target_net.forward(t.next_state);
    const double target =
        td_target(t.reward, gamma, *std::max_element(next_q.begin(), next_q.end()), t.done);
    const double q = net.forward(t.state)[t.action];
    const double err = q - target;
    loss += err * err / n;
    std::fill(upstream.begin(), upstream.end(), 0.0);
    upstream[t.action] = 2.0 * err / n;
    const std::vector<double> g = net.gradient(t.state, upstream);
    for (std::size_t i = 0; i < grad.size(); ++i) grad[i] += g[i];
  }
  net.sgd_step(grad, lr);
  return loss;
}

DqnLearner::DqnLearner(const DqnConfig& cfg, Rng& rng)
    : cfg_(cfg),
      online_(nn::Mlp::random(2, cfg.hidden, env::kNumActions, nn::Activation::kRelu, rng)),
      target_(online_) {}

double DqnLearner::update(std::span<const Transition> batch) {
  const double loss = dqn_update(online_, target_, batch, cfg_.learning_rate, cfg_.gamma);
  ++updates_;
  if (cfg_.target_sync_interval > 0 && updates_ % cfg_.target_sync_interval == 0) {
    target_ = online_;
  }
  return loss;
}

std::vector<EpisodeRecord> train(const TrainOptions& options, const DqnConfig& cfg) {
  env::GridWorld world(options.grid);
  Rng rng(learner_seed(options.seed, "dqn"));
  DqnLearner learner(cfg, rng);
  ReplayBuffer buffer(cfg.buffer_capacity);
  const int size = world.size();

  return run_protocol(options, world, [&](std::size_t episode) {
    const double epsilon = annealed_epsilon(episode, options.episodes, cfg);
    EpisodeRecord rec;
    env::Cell s = world.reset();
    while (rec.steps < world.max_steps()) {
      const Features x = env::scaled_coordinates(s, size);
      const std::size_t a = dqn_act(learner.online(), x, epsilon, rng);
      const env::StepOutcome out = world.step(s, static_cast<int>(a));
      buffer.push({x, a, out.reward, env::scaled_coordinates(out.next_state, size), out.done});
      if (buffer.size() >= cfg.batch_size) {
        const std::vector<Transition> batch = buffer.sample(cfg.batch_size, rng);
        learner.update(batch);
      }
      rec.total_reward += out.reward;
      ++rec.steps;
      s = out.next_state;
      if (out.done) {
        rec.success = true;
        break;
      }
    }
    return rec;
  });
}

}  // namespace ardns::dqn
