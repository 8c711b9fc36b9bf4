#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "ardns/environment.hpp"

namespace ardns {

struct EpisodeRecord {
  std::size_t episode = 0;
  double total_reward = 0.0;
  // Failed episodes record the step cap.
  int steps = 0;
  bool success = false;

  bool operator==(const EpisodeRecord&) const = default;
};

inline constexpr std::size_t kObstacleRefreshInterval = 100;

// Called after every obstacle (re)placement with the episode index it
// precedes and the updated world.
using RefreshHook = std::function<void(std::size_t episode, const env::GridWorld&)>;

// Protocol shared by all three trainers.
struct TrainOptions {
  std::size_t episodes = 20000;
  std::uint64_t seed = 42;
  env::GridConfig grid{};
  RefreshHook on_refresh;
};

// Runs `body(episode)` for every episode, refreshing obstacles from the
// environment stream at multiples of kObstacleRefreshInterval.
template <typename Body>
std::vector<EpisodeRecord> run_protocol(const TrainOptions& options, env::GridWorld& world,
                                        Body&& body) {
  Rng env_rng(environment_seed(options.seed));
  std::vector<EpisodeRecord> records;
  records.reserve(options.episodes);
  for (std::size_t e = 0; e < options.episodes; ++e) {
    if (e % kObstacleRefreshInterval == 0) {
      world.place_obstacles(env_rng);
      if (options.on_refresh) options.on_refresh(e, world);
    }
    EpisodeRecord rec = body(e);
    rec.episode = e;
    records.push_back(rec);
  }
  return records;
}

}  // namespace ardns
