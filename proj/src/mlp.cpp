#include "ardns/mlp.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace ardns::nn {

Mlp::Mlp(std::size_t inputs, std::size_t hidden, std::size_t outputs, Activation activation)
    : inputs_(inputs),
      hidden_(hidden),
      outputs_(outputs),
      activation_(activation),
      params_(hidden * inputs + hidden + outputs * hidden + outputs, 0.0) {}

Mlp Mlp::random(std::size_t inputs, std::size_t hidden, std::size_t outputs,
                Activation activation, Rng& rng) {
  Mlp net(inputs, hidden, outputs, activation);
  const double bound1 = 1.0 / std::sqrt(static_cast<double>(inputs));
  const double bound2 = 1.0 / std::sqrt(static_cast<double>(hidden));
  auto p = net.parameters();
  const std::size_t layer1_end = net.w2_offset();
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double bound = i < layer1_end ? bound1 : bound2;
    p[i] = rng.uniform(-bound, bound);
  }
  return net;
}

void Mlp::hidden_layer(std::span<const double> x, std::vector<double>& pre,
                       std::vector<double>& post) const {
  if (x.size() != inputs_) throw std::invalid_argument("Mlp: input size mismatch");
  pre.assign(hidden_, 0.0);
  post.assign(hidden_, 0.0);
  for (std::size_t h = 0; h < hidden_; ++h) {
    double z = params_[w1_size() + h];
    for (std::size_t i = 0; i < inputs_; ++i) z += params_[h * inputs_ + i] * x[i];
    pre[h] = z;
    post[h] = activation_ == Activation::kRelu ? std::max(0.0, z) : std::tanh(z);
  }
}

std::vector<double> Mlp::forward(std::span<const double> x) const {
  std::vector<double> pre, post;
  hidden_layer(x, pre, post);
  std::vector<double> out(outputs_);
  const std::size_t w2 = w2_offset();
  const std::size_t b2 = w2 + outputs_ * hidden_;
  for (std::size_t o = 0; o < outputs_; ++o) {
    double y = params_[b2 + o];
    for (std::size_t h = 0; h < hidden_; ++h) y += params_[w2 + o * hidden_ + h] * post[h];
    out[o] = y;
  }
  return out;
}

std::vector<double> Mlp::gradient(std::span<const double> x,
                                  std::span<const double> upstream) const {
  if (upstream.size() != outputs_) throw std::invalid_argument("Mlp: upstream size mismatch");
  std::vector<double> pre, post;
  hidden_layer(x, pre, post);

  std::vector<double> grad(params_.size(), 0.0);
  const std::size_t w2 = w2_offset();
  const std::size_t b2 = w2 + outputs_ * hidden_;

  std::vector<double> d_hidden(hidden_, 0.0);
  for (std::size_t o = 0; o < outputs_; ++o) {
    const double g = upstream[o];
    grad[b2 + o] = g;
    for (std::size_t h = 0; h < hidden_; ++h) {
      grad[w2 + o * hidden_ + h] = g * post[h];
      d_hidden[h] += g * params_[w2 + o * hidden_ + h];
    }
  }
  for (std::size_t h = 0; h < hidden_; ++h) {
    const double act_grad = activation_ == Activation::kRelu
                                ? (pre[h] > 0.0 ? 1.0 : 0.0)
                                : 1.0 - post[h] * post[h];
    const double d_pre = d_hidden[h] * act_grad;
    grad[w1_size() + h] = d_pre;
    for (std::size_t i = 0; i < inputs_; ++i) grad[h * inputs_ + i] = d_pre * x[i];
  }
  return grad;
}

void Mlp::sgd_step(std::span<const double> grad, double lr) {
  assert(grad.size() == params_.size());
  for (std::size_t i = 0; i < params_.size(); ++i) params_[i] -= lr * grad[i];
}

std::vector<double> softmax(std::span<const double> logits) {
  std::vector<double> p(logits.begin(), logits.end());
  if (p.empty()) return p;
  const double top = *std::max_element(p.begin(), p.end());
  double sum = 0.0;
  for (double& v : p) {
    v = std::exp(v - top);
    sum += v;
  }
  for (double& v : p) v /= sum;
  return p;
}

std::size_t argmax(std::span<const double> values) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) best = i;
  }
  return best;
}

}  // namespace ardns::nn
