#include "ardns/environment.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ardns::env {

int manhattan_dist(Cell a, Cell b) { return std::abs(a.x - b.x) + std::abs(a.y - b.y); }

std::array<double, 2> scaled_coordinates(Cell c, int size) {
  const auto extent = static_cast<double>(size - 1);
  return {c.x / extent, c.y / extent};
}

GridWorld::GridWorld(const GridConfig& config)
    : size_(config.size),
      start_(config.start),
      goal_(config.goal.value_or(Cell{config.size - 1, config.size - 1})),
      obstacle_rate_(config.obstacle_rate),
      max_steps_(config.max_steps) {
  if (size_ < 2) throw std::invalid_argument("grid size must be at least 2");
  if (!in_bounds(start_) || !in_bounds(goal_)) {
    throw std::invalid_argument("start and goal must lie inside the grid");
  }
  if (start_ == goal_) throw std::invalid_argument("start and goal must differ");
  if (!(obstacle_rate_ >= 0.0 && obstacle_rate_ <= 1.0)) {
    throw std::invalid_argument("obstacle rate must lie in [0, 1]");
  }
  if (max_steps_ < 1) throw std::invalid_argument("max_steps must be at least 1");
}

bool GridWorld::in_bounds(Cell c) const {
  return c.x >= 0 && c.y >= 0 && c.x < size_ && c.y < size_;
}

std::size_t GridWorld::obstacle_count() const {
  return static_cast<std::size_t>(
      std::lround(obstacle_rate_ * static_cast<double>(size_) * static_cast<double>(size_)));
}

void GridWorld::place_obstacles(Rng& rng) {
  std::vector<Cell> candidates;
  candidates.reserve(static_cast<std::size_t>(size_) * static_cast<std::size_t>(size_));
  for (int y = 0; y < size_; ++y) {
    for (int x = 0; x < size_; ++x) {
      const Cell c{x, y};
      if (c != start_ && c != goal_) candidates.push_back(c);
    }
  }
  const std::size_t count = obstacle_count();
  if (count > candidates.size()) {
    throw std::invalid_argument("obstacle rate leaves no room for start and goal (" +
                                std::to_string(count) + " obstacles, " +
                                std::to_string(candidates.size()) + " free cells)");
  }
  // Partial Fisher-Yates: the first `count` slots become the sample.
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + rng.below(candidates.size() - i);
    std::swap(candidates[i], candidates[j]);
  }
  obstacles_ = std::set<Cell>(candidates.begin(), candidates.begin() + static_cast<long>(count));
}

void GridWorld::set_obstacles(std::set<Cell> obstacles) {
  for (const Cell& c : obstacles) {
    if (!in_bounds(c)) throw std::invalid_argument("obstacle outside the grid");
    if (c == start_ || c == goal_) {
      throw std::invalid_argument("obstacles may not cover start or goal");
    }
  }
  obstacles_ = std::move(obstacles);
}

StepOutcome GridWorld::step(Cell s, int action) const {
  Cell next = s;
  switch (action) {
    case static_cast<int>(Action::kUp): ++next.y; break;
    case static_cast<int>(Action::kDown): --next.y; break;
    case static_cast<int>(Action::kLeft): --next.x; break;
    case static_cast<int>(Action::kRight): ++next.x; break;
    default:
      throw std::invalid_argument("invalid action index " + std::to_string(action));
  }
  if (!in_bounds(next)) next = s;

  StepOutcome out;
  if (next == goal_) {
    out.next_state = next;
    out.reward = kGoalReward;
    out.done = true;
    out.reached_goal = true;
    return out;
  }
  if (is_obstacle(next)) {
    out.next_state = s;
    out.reward = kObstacleReward;
    out.hit_obstacle = true;
    return out;
  }
  const int dist_after = manhattan_dist(next, goal_);
  const int progress = manhattan_dist(s, goal_) - dist_after;
  out.next_state = next;
  out.reward = kStepCost + kProgressWeight * progress - kDistanceWeight * dist_after;
  return out;
}

}  // namespace ardns::env
