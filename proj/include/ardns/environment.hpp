#pragma once

// Obstacle grid-world. x is the column, y the row; up is y + 1.

#include <array>
#include <compare>
#include <cstddef>
#include <optional>
#include <set>

#include "ardns/rng.hpp"

namespace ardns::env {

struct Cell {
  int x = 0;
  int y = 0;
  auto operator<=>(const Cell&) const = default;
};

enum class Action : int { kUp = 0, kDown = 1, kLeft = 2, kRight = 3 };
inline constexpr int kNumActions = 4;

struct GridConfig {
  int size = 10;
  Cell start{0, 0};
  // Defaults to the corner opposite the origin, (size - 1, size - 1).
  std::optional<Cell> goal;
  double obstacle_rate = 0.05;
  int max_steps = 400;
};

struct StepOutcome {
  Cell next_state;
  double reward = 0.0;
  bool done = false;
  bool hit_obstacle = false;
  bool reached_goal = false;
};

inline constexpr double kGoalReward = 10.0;
inline constexpr double kObstacleReward = -3.0;
inline constexpr double kStepCost = -0.001;
inline constexpr double kProgressWeight = 0.1;
inline constexpr double kDistanceWeight = 0.01;

int manhattan_dist(Cell a, Cell b);

// (x, y) scaled to [0, 1] by the grid extent; network input for the
// baselines.
std::array<double, 2> scaled_coordinates(Cell c, int size);

class GridWorld {
 public:
  // Throws std::invalid_argument on an invalid layout (start == goal,
  // cells out of bounds, obstacle rate outside [0, 1], max_steps < 1).
  explicit GridWorld(const GridConfig& config = {});

  // Resamples round(rate * size^2) distinct obstacle cells uniformly from
  // every cell except start and goal. Throws std::invalid_argument when the
  // rate asks for more cells than are available.
  void place_obstacles(Rng& rng);

  // Replaces the obstacle set directly (tests, fixtures). Same validity
  // rules as place_obstacles, minus the count.
  void set_obstacles(std::set<Cell> obstacles);

  // One move from s. The goal branch precedes the obstacle branch; an
  // obstacle collision leaves the agent at s; off-grid moves stay at s and
  // are scored by the shaped branch. Throws std::invalid_argument for an
  // action index outside [0, 4).
  StepOutcome step(Cell s, int action) const;

  Cell reset() const { return start_; }

  bool in_bounds(Cell c) const;
  bool is_obstacle(Cell c) const { return obstacles_.count(c) != 0; }

  int size() const { return size_; }
  Cell start() const { return start_; }
  Cell goal() const { return goal_; }
  int max_steps() const { return max_steps_; }
  double obstacle_rate() const { return obstacle_rate_; }
  const std::set<Cell>& obstacles() const { return obstacles_; }
  std::size_t obstacle_count() const;

 private:
  int size_;
  Cell start_;
  Cell goal_;
  double obstacle_rate_;
  int max_steps_;
  std::set<Cell> obstacles_;
};

}  // namespace ardns::env
