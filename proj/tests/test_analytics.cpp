#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ardns/analytics.hpp"
#include "oracles.hpp"

using namespace ardns;
using namespace ardns::analytics;

namespace {

std::vector<EpisodeRecord> records_from(const std::vector<double>& rewards,
                                        const std::vector<bool>& success,
                                        const std::vector<int>& steps) {
  std::vector<EpisodeRecord> out;
  for (std::size_t i = 0; i < rewards.size(); ++i) {
    out.push_back({i, rewards[i], steps[i], success[i]});
  }
  return out;
}

}  // namespace

TEST_SUITE("analytics") {

TEST_CASE("summarize example") {
  const auto recs = records_from({10, 10, -5}, {true, true, false}, {20, 30, 400});
  const auto s = summarize(recs);
  CHECK(s.success_rate == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(s.goals_reached == 2);
  CHECK(s.total_episodes == 3);
  CHECK(s.reward_all.mean == 5.0);
  CHECK(s.reward_all.std == doctest::Approx(std::sqrt(50.0)).epsilon(1e-15));
  CHECK(s.reward_variance_all == doctest::Approx(50.0).epsilon(1e-15));
  CHECK(s.steps_all.mean == doctest::Approx(150.0));
  CHECK(s.last100_successes == 2);
  CHECK(s.steps_last100_success.mean == 25.0);
  CHECK(s.steps_last100_success.std == 5.0);
}

TEST_CASE("summarize edge cases") {
  CHECK_THROWS_AS(summarize(std::vector<EpisodeRecord>{}), std::invalid_argument);

  const auto same = records_from({2, 2, 2, 2}, {true, true, true, true}, {9, 9, 9, 9});
  const auto s = summarize(same);
  CHECK(s.reward_all.std == 0.0);
  CHECK(s.steps_all.std == 0.0);

  const auto one = records_from({-1.5}, {false}, {400});
  const auto t = summarize(one);
  CHECK(t.reward_last100.mean == t.reward_all.mean);
  CHECK(t.reward_last100.std == t.reward_all.std);
  CHECK(t.last100_successes == 0);
  CHECK(t.steps_last100_success.mean == 0.0);
}

TEST_CASE("property: all-episode aggregates are permutation invariant") {
  Rng rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<EpisodeRecord> recs(150 + rng.below(100));
    for (std::size_t i = 0; i < recs.size(); ++i) {
      const bool ok = rng.uniform() < 0.7;
      recs[i] = {i, ok ? 10.0 - rng.uniform(0, 3) : -rng.uniform(0, 40),
                 ok ? static_cast<int>(18 + rng.below(200)) : 400, ok};
    }
    auto shuffled = recs;
    for (std::size_t i = shuffled.size() - 1; i > 0; --i) {
      std::swap(shuffled[i], shuffled[rng.below(i + 1)]);
    }
    const auto a = summarize(recs);
    const auto b = summarize(shuffled);
    CHECK(a.goals_reached == b.goals_reached);
    CHECK(a.success_rate == b.success_rate);
    CHECK(a.reward_all.mean == doctest::Approx(b.reward_all.mean).epsilon(1e-12));
    CHECK(a.reward_all.std == doctest::Approx(b.reward_all.std).epsilon(1e-12));
    CHECK(a.steps_all.mean == doctest::Approx(b.steps_all.mean).epsilon(1e-12));
  }
}

TEST_CASE("success rate") {
  CHECK(success_rate(records_from({1, 1}, {true, true}, {1, 1})) == 1.0);
  CHECK(success_rate(records_from({1, 1}, {false, false}, {1, 1})) == 0.0);
  std::vector<EpisodeRecord> recs(20000);
  for (std::size_t i = 0; i < 19890; ++i) recs[i].success = true;
  CHECK(success_rate(recs) == 0.9945);
  CHECK(std::round(success_rate(recs) * 1000.0) / 10.0 == 99.5);
  CHECK_THROWS_AS(success_rate(std::vector<EpisodeRecord>{}), std::invalid_argument);
}

TEST_CASE("smoother argument checks") {
  const std::vector<double> y(10, 1.0);
  CHECK_THROWS_AS(savitzky_golay(y, 1000, 2), std::invalid_argument);
  CHECK_THROWS_AS(savitzky_golay(y, 3, 3), std::invalid_argument);
  CHECK(savitzky_golay(std::vector<double>{}, 1001, 2).empty());
}

TEST_CASE("smoother reproduces constants exactly") {
  for (double c : {0.0, 1.0, -3.25, 9.0528}) {
    const std::vector<double> y(2500, c);
    const auto s = savitzky_golay(y);
    for (double v : s) CHECK(v == c);
  }
}

TEST_CASE("property: smoother reproduces quadratics") {
  Rng rng(50);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 1200 + rng.below(1500);
    const double a = rng.uniform(-5, 5), b = rng.uniform(-5, 5), c = rng.uniform(-5, 5);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double t = static_cast<double>(i) / static_cast<double>(n);
      y[i] = a + b * t + c * t * t;
    }
    const auto s = savitzky_golay(y);
    for (std::size_t i = 500; i + 500 < n; ++i) CHECK(std::abs(s[i] - y[i]) < 1e-9);
  }

  // Raw i^2 reaches ~6e6, so the same bound is read relatively.
  std::vector<double> sq(2500);
  for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = static_cast<double>(i * i);
  const auto s = savitzky_golay(sq);
  for (std::size_t i = 500; i + 500 < sq.size(); ++i) {
    CHECK(oracle::relative_error(s[i], sq[i]) < 1e-9);
  }
}

TEST_CASE("property: smoother matches a direct least-squares fit") {
  Rng rng(60);
  for (std::size_t n : {3u, 4u, 10u, 57u, 200u, 1000u}) {
    std::vector<double> y(n);
    for (double& v : y) v = rng.uniform(-10, 10);
    const auto s = savitzky_golay(y);
    const std::size_t window = n % 2 == 1 ? n : n - 1;
    const std::size_t half = window / 2;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t lo = i >= half ? i - half : 0;
      const std::size_t hi = std::min(n, i + half + 1);
      CHECK(std::abs(s[i] - oracle::polyfit_at(y, lo, hi, 2, i)) < 1e-9);
    }
  }
  // Long series: spot-check interior and truncated edge points.
  std::vector<double> y(3000);
  for (double& v : y) v = rng.uniform(-10, 10);
  const auto s = savitzky_golay(y);
  for (std::size_t i : {0u, 1u, 250u, 499u, 500u, 1500u, 2499u, 2500u, 2900u, 2999u}) {
    const std::size_t lo = i >= 500 ? i - 500 : 0;
    const std::size_t hi = std::min<std::size_t>(3000, i + 501);
    CHECK(std::abs(s[i] - oracle::polyfit_at(y, lo, hi, 2, i)) < 1e-9);
  }
}

TEST_CASE("mann-whitney examples") {
  const std::vector<double> a{1, 2, 3}, b{4, 5, 6};
  const auto r = mann_whitney_u(a, b);
  CHECK(r.u == 0.0);
  CHECK(r.z < 0.0);
  CHECK(r.effect_r < 0.0);

  const std::vector<double> x{3, 1, 4, 1, 5, 9, 2, 6};
  const auto same = mann_whitney_u(x, x);
  CHECK(same.u == 32.0);
  CHECK(std::abs(same.z) < 1e-12);
  CHECK(same.p_two_sided == doctest::Approx(1.0));
  CHECK(std::abs(same.effect_r) < 1e-12);

  const std::vector<double> constant(5, 2.0);
  const auto flat = mann_whitney_u(constant, constant);
  CHECK(flat.p_two_sided == 1.0);
  CHECK(flat.z == 0.0);

  CHECK_THROWS_AS(mann_whitney_u(std::vector<double>{}, a), std::invalid_argument);
  CHECK_THROWS_AS(mann_whitney_u(a, std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("mann-whitney large-sample value") {
  // n = 50 vs 50 with a clean shift: U = 0, Z = -(1250 - 0.5)/sqrt(50*50*101/12).
  std::vector<double> a(50), b(50);
  for (int i = 0; i < 50; ++i) {
    a[i] = i;
    b[i] = 100 + i;
  }
  const auto r = mann_whitney_u(a, b);
  const double z = -(1250.0 - 0.5) / std::sqrt(50.0 * 50.0 * 101.0 / 12.0);
  CHECK(r.z == doctest::Approx(z).epsilon(1e-12));
  CHECK(r.effect_r == doctest::Approx(z / 10.0).epsilon(1e-12));
  CHECK(r.p_two_sided == doctest::Approx(std::erfc(-z / std::sqrt(2.0))).epsilon(1e-9));
}

TEST_CASE("property: U matches brute force; complement and sign symmetry") {
  Rng rng(80);
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<double> a(1 + rng.below(12)), b(1 + rng.below(12));
    // Small integer values force plenty of ties.
    for (double& v : a) v = static_cast<double>(rng.below(6));
    for (double& v : b) v = static_cast<double>(rng.below(6));
    const auto ab = mann_whitney_u(a, b);
    const auto ba = mann_whitney_u(b, a);
    CHECK(ab.u == oracle::pairwise_u(a, b));
    CHECK(ab.u + ba.u == static_cast<double>(a.size() * b.size()));
    CHECK(ab.effect_r == doctest::Approx(-ba.effect_r).epsilon(1e-12));
    CHECK(ab.p_two_sided == doctest::Approx(ba.p_two_sided).epsilon(1e-12));
    CHECK(ab.p_two_sided >= 0.0);
    CHECK(ab.p_two_sided <= 1.0);
  }
}

TEST_CASE("normal tail") {
  CHECK(normal_sf(0.0) == 0.5);
  CHECK(normal_sf(1.959963984540054) == doctest::Approx(0.025).epsilon(1e-12));
  CHECK(normal_sf(-1.0) == doctest::Approx(1.0 - normal_sf(1.0)).epsilon(1e-14));
}

TEST_CASE("mean_std") {
  const auto m = mean_std(std::vector<double>{2, 4, 4, 4, 5, 5, 7, 9});
  CHECK(m.mean == 5.0);
  CHECK(m.std == 2.0);
  const auto e = mean_std(std::vector<double>{});
  CHECK(e.mean == 0.0);
  CHECK(e.std == 0.0);
}

}  // TEST_SUITE
