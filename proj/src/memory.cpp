#include "ardns/memory.hpp"

#include <cmath>
#include <stdexcept>

namespace ardns::memory {
namespace {

template <std::size_t Rows, std::size_t Cols>
void fill_uniform(Mat<Rows, Cols>& m, Rng& rng, double scale) {
  for (auto& row : m) {
    for (auto& x : row) x = rng.uniform(-scale, scale);
  }
}

void check_decay(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("memory decay must lie in [0, 1]");
  }
}

template <std::size_t N, std::size_t Cols>
Vec<N> blend(const Vec<N>& current, const Mat<N, Cols>& proj, const Vec<Cols>& state,
             double alpha) {
  const Vec<N> drive = matvec(proj, state);
  Vec<N> out{};
  for (std::size_t i = 0; i < N; ++i) out[i] = alpha * current[i] + (1.0 - alpha) * drive[i];
  return out;
}

}  // namespace

MemoryWeights MemoryWeights::random(Rng& rng, double scale) {
  MemoryWeights w;
  fill_uniform(w.short_proj, rng, scale);
  fill_uniform(w.long_proj, rng, scale);
  fill_uniform(w.short_attention, rng, scale);
  fill_uniform(w.long_attention, rng, scale);
  return w;
}

DualMemory update_short(const DualMemory& mem, const MemoryWeights& weights,
                        const StateVec& state, double alpha) {
  check_decay(alpha);
  DualMemory out = mem;
  out.short_term = blend(mem.short_term, weights.short_proj, state, alpha);
  return out;
}

DualMemory update_long(const DualMemory& mem, const MemoryWeights& weights,
                       const StateVec& state, double alpha) {
  check_decay(alpha);
  DualMemory out = mem;
  out.long_term = blend(mem.long_term, weights.long_proj, state, alpha);
  return out;
}

CombinedMemory combine(const DualMemory& mem) {
  CombinedMemory m{};
  for (std::size_t i = 0; i < kShortDim; ++i) m[i] = mem.short_term[i];
  for (std::size_t i = 0; i < kLongDim; ++i) m[kShortDim + i] = mem.long_term[i];
  return m;
}

Attention attention(const DualMemory& mem, const MemoryWeights& weights) {
  Attention a;
  a.short_gate = matvec(weights.short_attention, mem.short_term);
  for (auto& g : a.short_gate) g = std::tanh(g);
  a.long_gate = matvec(weights.long_attention, mem.long_term);
  for (std::size_t i = 0; i < kShortDim; ++i) a.gated[i] = a.short_gate[i] * mem.short_term[i];
  for (std::size_t i = 0; i < kLongDim; ++i) {
    a.gated[kShortDim + i] = a.long_gate[i] * mem.long_term[i];
  }
  return a;
}

}  // namespace ardns::memory
