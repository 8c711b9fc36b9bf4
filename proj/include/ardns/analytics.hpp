#pragma once

// Run metrics, Savitzky-Golay smoothing and the Mann-Whitney U test.

#include <cstddef>
#include <span>
#include <vector>

#include "ardns/episode.hpp"

namespace ardns::analytics {

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;  // population
};

// Population mean and standard deviation; zeros for an empty series.
MeanStd mean_std(std::span<const double> values);

struct RunSummary {
  std::size_t goals_reached = 0;
  std::size_t total_episodes = 0;
  double success_rate = 0.0;
  MeanStd reward_all;
  MeanStd reward_last100;
  // Failures count at the step cap.
  MeanStd steps_all;
  // Successful episodes among the last 100; zeros when there are none.
  MeanStd steps_last100_success;
  std::size_t last100_successes = 0;
  double reward_variance_all = 0.0;
  double wall_clock_seconds = 0.0;
};

// Throws std::invalid_argument on an empty record list.
RunSummary summarize(std::span<const EpisodeRecord> records, double wall_clock_seconds = 0.0);

// Fraction of successful episodes. Throws std::invalid_argument when empty.
double success_rate(std::span<const EpisodeRecord> records);

// Least-squares polynomial smoothing. Each point is replaced by the value at
// that point of the degree-`order` fit over the centred window; near the ends
// the window is truncated to the available samples (no padding). A series
// shorter than the window uses the largest odd window that fits. Throws
// std::invalid_argument for an even window or order >= window.
std::vector<double> savitzky_golay(std::span<const double> series, std::size_t window = 1001,
                                   std::size_t order = 2);

struct MannWhitney {
  // U statistic of sample a: #(a > b) + 0.5 * #(a == b).
  double u = 0.0;
  double z = 0.0;
  double p_two_sided = 1.0;
  // z / sqrt(n_a + n_b); positive when a tends to be larger.
  double effect_r = 0.0;
};

// Midranks for ties, tie-corrected normal approximation with continuity
// correction. Throws std::invalid_argument if either sample is empty.
MannWhitney mann_whitney_u(std::span<const double> a, std::span<const double> b);

// Standard normal upper tail, P(Z > z).
double normal_sf(double z);

}  // namespace ardns::analytics
