#pragma once

// Exact statevector simulation of the two-qubit action-selection circuit:
// |00> -> RY(theta0) on qubit 0, RY(theta1) on qubit 1 -> measure.
//
// Basis index convention: k = 2*b1 + b0, where b_i is qubit i's bit. The
// four outcomes map to actions up, down, left, right in index order.

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>

#include "ardns/rng.hpp"

namespace ardns::quantum {

inline constexpr std::size_t kNumQubits = 2;
inline constexpr std::size_t kNumOutcomes = 4;

using Amplitude = std::complex<double>;
using Probabilities = std::array<double, kNumOutcomes>;

struct TwoQubitState {
  // Starts in |00>.
  std::array<Amplitude, kNumOutcomes> amplitudes{Amplitude{1.0, 0.0}};

  double norm_squared() const;
};

struct RotationAngles {
  double theta0 = 0.0;
  double theta1 = 0.0;
};

struct ShotCounts {
  std::array<std::uint32_t, kNumOutcomes> counts{};
  std::uint32_t shots = 0;
};

// Applies RY(theta) to one qubit. Throws std::invalid_argument on a
// non-finite angle or a qubit index outside {0, 1}.
TwoQubitState ry_apply(double theta, std::size_t qubit, const TwoQubitState& state);

TwoQubitState prepare_circuit(const RotationAngles& angles);

// |amplitude_k|^2 for every basis state.
Probabilities outcome_probabilities(const TwoQubitState& state);

// Multinomial sampling by inverse CDF, exactly one uniform draw per shot.
// Throws std::invalid_argument when shots == 0.
ShotCounts sample_shots(const TwoQubitState& state, std::uint32_t shots, Rng& rng);

// counts(k) / shots.
Probabilities action_probabilities(const ShotCounts& counts);

}  // namespace ardns::quantum
