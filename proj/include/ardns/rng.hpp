#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>

namespace ardns {

// Seeded random source shared by every stochastic component.
//
// Draws are defined bit-for-bit on top of std::mt19937_64 (whose output
// sequence the standard fixes) instead of the std distributions, whose
// algorithms are implementation-defined. That keeps traces identical across
// standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n). n must be positive.
  std::size_t below(std::size_t n) {
    auto k = static_cast<std::size_t>(uniform() * static_cast<double>(n));
    return k < n ? k : n - 1;
  }

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

// 64-bit FNV-1a; used to tag per-algorithm seed streams.
constexpr std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : text) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Environment stream: depends on the run seed only, so every algorithm sees
// the same obstacle layouts for the same seed.
constexpr std::uint64_t environment_seed(std::uint64_t seed) { return seed; }

// Learner stream: seed XOR a hash of the algorithm tag.
constexpr std::uint64_t learner_seed(std::uint64_t seed, std::string_view algo) {
  return seed ^ fnv1a(algo);
}

}  // namespace ardns
