#pragma once

// Two-layer perceptron (input -> hidden -> output) with hand-written
// backpropagation, shared by the DQN and PPO baselines.
//
// Parameters live in one flat vector laid out as [w1 | b1 | w2 | b2], with
// w1 (hidden x input) and w2 (output x hidden) row-major. Gradients use the
// same layout, so optimizers and finite-difference checks can treat both as
// plain vectors.

#include <cstddef>
#include <span>
#include <vector>

#include "ardns/rng.hpp"

namespace ardns::nn {

enum class Activation { kRelu, kTanh };

class Mlp {
 public:
  Mlp() = default;
  // Zero-initialized network.
  Mlp(std::size_t inputs, std::size_t hidden, std::size_t outputs, Activation activation);

  // Each layer uniform in +-1/sqrt(fan_in), biases included.
  static Mlp random(std::size_t inputs, std::size_t hidden, std::size_t outputs,
                    Activation activation, Rng& rng);

  std::vector<double> forward(std::span<const double> x) const;

  // Gradient of <upstream, forward(x)> with respect to every parameter.
  // The ReLU derivative at 0 is taken as 0.
  std::vector<double> gradient(std::span<const double> x,
                               std::span<const double> upstream) const;

  // params -= lr * grad
  void sgd_step(std::span<const double> grad, double lr);

  std::size_t inputs() const { return inputs_; }
  std::size_t hidden() const { return hidden_; }
  std::size_t outputs() const { return outputs_; }
  Activation activation() const { return activation_; }

  std::span<double> parameters() { return params_; }
  std::span<const double> parameters() const { return params_; }

  double& w1(std::size_t h, std::size_t i) { return params_[h * inputs_ + i]; }
  double& b1(std::size_t h) { return params_[w1_size() + h]; }
  double& w2(std::size_t o, std::size_t h) { return params_[w2_offset() + o * hidden_ + h]; }
  double& b2(std::size_t o) { return params_[w2_offset() + outputs_ * hidden_ + o]; }

 private:
  std::size_t w1_size() const { return hidden_ * inputs_; }
  std::size_t w2_offset() const { return w1_size() + hidden_; }
  // Hidden activations for x (post-nonlinearity) and pre-activations.
  void hidden_layer(std::span<const double> x, std::vector<double>& pre,
                    std::vector<double>& post) const;

  std::size_t inputs_ = 0;
  std::size_t hidden_ = 0;
  std::size_t outputs_ = 0;
  Activation activation_ = Activation::kRelu;
  std::vector<double> params_;
};

// Numerically stable softmax.
std::vector<double> softmax(std::span<const double> logits);

// Index of the largest entry; ties resolve to the lowest index.
std::size_t argmax(std::span<const double> values);

}  // namespace ardns::nn
