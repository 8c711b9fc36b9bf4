#include "ardns/quantum.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ardns::quantum {

double TwoQubitState::norm_squared() const {
  double s = 0.0;
  for (const auto& a : amplitudes) s += std::norm(a);
  return s;
}

TwoQubitState ry_apply(double theta, std::size_t qubit, const TwoQubitState& state) {
  if (!std::isfinite(theta)) {
    throw std::invalid_argument("ry_apply: rotation angle must be finite");
  }
  if (qubit >= kNumQubits) {
    throw std::invalid_argument("ry_apply: qubit index " + std::to_string(qubit) +
                                " out of range");
  }
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  const std::size_t mask = std::size_t{1} << qubit;

  TwoQubitState out = state;
  for (std::size_t i = 0; i < kNumOutcomes; ++i) {
    if (i & mask) continue;
    const Amplitude a0 = state.amplitudes[i];
    const Amplitude a1 = state.amplitudes[i | mask];
    out.amplitudes[i] = c * a0 - s * a1;
    out.amplitudes[i | mask] = s * a0 + c * a1;
  }
  return out;
}

TwoQubitState prepare_circuit(const RotationAngles& angles) {
  TwoQubitState state;
  state = ry_apply(angles.theta0, 0, state);
  return ry_apply(angles.theta1, 1, state);
}

Probabilities outcome_probabilities(const TwoQubitState& state) {
  Probabilities p{};
  for (std::size_t k = 0; k < kNumOutcomes; ++k) p[k] = std::norm(state.amplitudes[k]);
  return p;
}

ShotCounts sample_shots(const TwoQubitState& state, std::uint32_t shots, Rng& rng) {
  if (shots == 0) {
    throw std::invalid_argument("sample_shots: shots must be at least 1");
  }
  const Probabilities p = outcome_probabilities(state);
  Probabilities cdf{};
  double acc = 0.0;
  std::size_t last_nonzero = 0;
  for (std::size_t k = 0; k < kNumOutcomes; ++k) {
    acc += p[k];
    cdf[k] = acc;
    if (p[k] > 0.0) last_nonzero = k;
  }

  ShotCounts result;
  result.shots = shots;
  for (std::uint32_t shot = 0; shot < shots; ++shot) {
    const double u = rng.uniform();
    // Rounding can leave cdf[3] a hair under 1; such draws go to the last
    // outcome with non-zero mass.
    std::size_t k = last_nonzero;
    for (std::size_t j = 0; j < kNumOutcomes; ++j) {
      if (u < cdf[j]) {
        k = j;
        break;
      }
    }
    ++result.counts[k];
  }
  return result;
}

Probabilities action_probabilities(const ShotCounts& counts) {
  Probabilities p{};
  const auto shots = static_cast<double>(counts.shots);
  for (std::size_t k = 0; k < kNumOutcomes; ++k) {
    p[k] = static_cast<double>(counts.counts[k]) / shots;
  }
  return p;
}

}  // namespace ardns::quantum
