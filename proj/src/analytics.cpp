#include "ardns/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ardns::analytics {

MeanStd mean_std(std::span<const double> values) {
  if (values.empty()) return {};
  const auto n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / n)};
}

double success_rate(std::span<const EpisodeRecord> records) {
  if (records.empty()) throw std::invalid_argument("success_rate: no episodes");
  const auto hits = std::count_if(records.begin(), records.end(),
                                  [](const EpisodeRecord& r) { return r.success; });
  return static_cast<double>(hits) / static_cast<double>(records.size());
}

RunSummary summarize(std::span<const EpisodeRecord> records, double wall_clock_seconds) {
  if (records.empty()) throw std::invalid_argument("summarize: no episodes");
  RunSummary s;
  s.total_episodes = records.size();
  s.wall_clock_seconds = wall_clock_seconds;

  std::vector<double> rewards, steps;
  rewards.reserve(records.size());
  steps.reserve(records.size());
  for (const EpisodeRecord& r : records) {
    rewards.push_back(r.total_reward);
    steps.push_back(static_cast<double>(r.steps));
    if (r.success) ++s.goals_reached;
  }
  s.success_rate = static_cast<double>(s.goals_reached) / static_cast<double>(s.total_episodes);
  s.reward_all = mean_std(rewards);
  s.reward_variance_all = s.reward_all.std * s.reward_all.std;
  s.steps_all = mean_std(steps);

  const std::size_t tail = std::min<std::size_t>(100, records.size());
  const auto last = records.last(tail);
  s.reward_last100 = mean_std(std::span<const double>(rewards).last(tail));
  std::vector<double> success_steps;
  for (const EpisodeRecord& r : last) {
    if (r.success) success_steps.push_back(static_cast<double>(r.steps));
  }
  s.last100_successes = success_steps.size();
  s.steps_last100_success = mean_std(success_steps);
  return s;
}

namespace {

// Weights c such that sum_k c[k] * y[lo + k] is the value at `at` of the
// least-squares polynomial of degree `order` through y[lo .. lo + len).
// Offsets are scaled to [-1, 1]-ish to keep the normal equations well
// conditioned.
std::vector<double> fit_weights(std::size_t lo, std::size_t len, std::size_t at,
                                std::size_t order) {
  const std::size_t m = order + 1;
  const double scale = std::max(1.0, static_cast<double>(len) / 2.0);
  std::vector<double> x(len);
  for (std::size_t k = 0; k < len; ++k) {
    x[k] = (static_cast<double>(lo + k) - static_cast<double>(at)) / scale;
  }

  // Gram matrix G[i][j] = sum x^(i+j), augmented with e0 on the right.
  std::vector<double> power_sums(2 * m - 1, 0.0);
  for (double xk : x) {
    double p = 1.0;
    for (double& ps : power_sums) {
      ps += p;
      p *= xk;
    }
  }
  std::vector<std::vector<double>> g(m, std::vector<double>(m + 1, 0.0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) g[i][j] = power_sums[i + j];
    g[i][m] = i == 0 ? 1.0 : 0.0;
  }
  // Gaussian elimination with partial pivoting.
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < m; ++r) {
      if (std::abs(g[r][col]) > std::abs(g[pivot][col])) pivot = r;
    }
    std::swap(g[col], g[pivot]);
    for (std::size_t r = 0; r < m; ++r) {
      if (r == col) continue;
      const double f = g[r][col] / g[col][col];
      for (std::size_t c = col; c <= m; ++c) g[r][c] -= f * g[col][c];
    }
  }
  std::vector<double> z(m);
  for (std::size_t i = 0; i < m; ++i) z[i] = g[i][m] / g[i][i];

  // G symmetric, so the fitted value at offset 0 is sum_k (sum_j z_j x_k^j) y_k.
  std::vector<double> w(len, 0.0);
  for (std::size_t k = 0; k < len; ++k) {
    double p = 1.0;
    for (std::size_t j = 0; j < m; ++j) {
      w[k] += z[j] * p;
      p *= x[k];
    }
  }
  return w;
}

// The weights sum to one, so the fit equals y[at] + sum w_k (y_k - y[at]).
// Written that way a constant window comes back bit-exact.
double apply(const std::vector<double>& w, std::span<const double> y, std::size_t lo,
             std::size_t at) {
  const double ref = y[at];
  double s = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) s += w[k] * (y[lo + k] - ref);
  return ref + s;
}

}  // namespace

std::vector<double> savitzky_golay(std::span<const double> series, std::size_t window,
                                   std::size_t order) {
  if (window % 2 == 0) throw std::invalid_argument("savitzky_golay: window must be odd");
  if (order >= window) throw std::invalid_argument("savitzky_golay: order must be < window");

  const std::size_t n = series.size();
  std::vector<double> out(series.begin(), series.end());
  if (n == 0) return out;
  if (window > n) window = n % 2 == 1 ? n : n - 1;
  // A fit with at least as many coefficients as points interpolates.
  if (window <= order + 1) return out;

  const std::size_t half = window / 2;
  const std::vector<double> interior = fit_weights(0, window, half, order);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i >= half ? i - half : 0;
    const std::size_t hi = std::min(n, i + half + 1);
    if (hi - lo == window) {
      out[i] = apply(interior, series, lo, i);
    } else {
      out[i] = apply(fit_weights(lo, hi - lo, i, order), series, lo, i);
    }
  }
  return out;
}

double normal_sf(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

MannWhitney mann_whitney_u(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("mann_whitney_u: empty sample");
  const std::size_t na = a.size();
  const std::size_t nb = b.size();
  const std::size_t n = na + nb;

  struct Item {
    double value;
    bool from_a;
  };
  std::vector<Item> pooled;
  pooled.reserve(n);
  for (double v : a) pooled.push_back({v, true});
  for (double v : b) pooled.push_back({v, false});
  std::sort(pooled.begin(), pooled.end(),
            [](const Item& l, const Item& r) { return l.value < r.value; });

  double rank_sum_a = 0.0;
  double tie_term = 0.0;  // sum over tie groups of t^3 - t
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && pooled[j].value == pooled[i].value) ++j;
    const double midrank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) {
      if (pooled[k].from_a) rank_sum_a += midrank;
    }
    const auto t = static_cast<double>(j - i);
    tie_term += t * t * t - t;
    i = j;
  }

  const auto da = static_cast<double>(na);
  const auto db = static_cast<double>(nb);
  const auto dn = static_cast<double>(n);
  MannWhitney res;
  res.u = rank_sum_a - da * (da + 1.0) / 2.0;

  const double mu = da * db / 2.0;
  const double var =
      n > 1 ? da * db / 12.0 * ((dn + 1.0) - tie_term / (dn * (dn - 1.0))) : 0.0;
  if (var <= 0.0) {
    res.z = 0.0;
    res.p_two_sided = 1.0;
    res.effect_r = 0.0;
    return res;
  }
  const double diff = res.u - mu;
  const double corrected = std::max(0.0, std::abs(diff) - 0.5);
  res.z = std::copysign(corrected / std::sqrt(var), diff);
  res.p_two_sided = std::min(1.0, 2.0 * normal_sf(std::abs(res.z)));
  res.effect_r = res.z / std::sqrt(dn);
  return res;
}

}  // namespace ardns::analytics
