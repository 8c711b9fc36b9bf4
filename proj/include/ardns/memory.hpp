#pragma once

// Dual short/long-term memory with exponential updates and a gating
// attention read-out.

#include <cstddef>

#include "ardns/linalg.hpp"
#include "ardns/rng.hpp"

namespace ardns::memory {

inline constexpr std::size_t kStateDim = 2;
inline constexpr std::size_t kShortDim = 8;
inline constexpr std::size_t kLongDim = 16;
inline constexpr std::size_t kCombinedDim = kShortDim + kLongDim;

using StateVec = Vec<kStateDim>;
using ShortVec = Vec<kShortDim>;
using LongVec = Vec<kLongDim>;
using CombinedMemory = Vec<kCombinedDim>;

struct DualMemory {
  ShortVec short_term{};
  LongVec long_term{};
};

// Random projections and attention matrices. Frozen after initialization.
struct MemoryWeights {
  Mat<kShortDim, kStateDim> short_proj{};
  Mat<kLongDim, kStateDim> long_proj{};
  Mat<kShortDim, kShortDim> short_attention{};
  Mat<kLongDim, kLongDim> long_attention{};

  // Uniform in [-scale, scale], drawn row-major in the order short_proj,
  // long_proj, short_attention, long_attention.
  static MemoryWeights random(Rng& rng, double scale = 0.1);
};

struct Attention {
  ShortVec short_gate{};
  LongVec long_gate{};
  CombinedMemory gated{};
};

// m_short <- alpha * m_short + (1 - alpha) * (W_s s). Throws
// std::invalid_argument when alpha is outside [0, 1].
DualMemory update_short(const DualMemory& mem, const MemoryWeights& weights,
                        const StateVec& state, double alpha);

// Same rule on the long-term vector with W_l.
DualMemory update_long(const DualMemory& mem, const MemoryWeights& weights,
                       const StateVec& state, double alpha);

// [m_short ; m_long].
CombinedMemory combine(const DualMemory& mem);

// short_gate = tanh(W_att,s m_short), long_gate = W_att,l m_long (linear),
// gated = [short_gate * m_short ; long_gate * m_long] elementwise.
Attention attention(const DualMemory& mem, const MemoryWeights& weights);

}  // namespace ardns::memory
