// Acceptance gate. Prints one PASS/FAIL line per criterion; exits non-zero
// when any selected criterion fails.
//
//   acceptance                 all criteria
//   acceptance --criterion N   just criterion N

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "ardns/agent.hpp"
#include "ardns/analytics.hpp"
#include "ardns/environment.hpp"
#include "ardns/harness.hpp"
#include "ardns/mlp.hpp"
#include "ardns/quantum.hpp"
#include "oracles.hpp"

using namespace ardns;
namespace fs = std::filesystem;

namespace {

// Tolerances and budgets.
constexpr double kCircuitTol = 1e-12;
constexpr double kCircuitBudgetSeconds = 1.0;
constexpr double kShotTol = 0.005;
constexpr double kSmootherTol = 1e-9;
constexpr double kPermutationPTol = 0.05;
constexpr std::size_t kMaxSampleSize = 8;
constexpr double kFiniteDiffStep = 1e-5;
constexpr double kGradientTol = 1e-4;
constexpr double kKinkMargin = 100 * kFiniteDiffStep;
constexpr int kEpsilonFloorStep = 322;
constexpr double kShapedExample = 0.009;
constexpr double kShapedTol = 1e-15;
constexpr std::size_t kDeskEpisodes = 2000;
constexpr double kDeskSuccessMin = 0.70;
constexpr double kDeskStepsMax = 200.0;
constexpr double kDeskBudgetSeconds = 60.0;
constexpr std::size_t kOrderingEpisodes = 5000;
constexpr std::size_t kDeterminismEpisodes = 500;
constexpr double kDeterminismOverheadMax = 2.0;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome quantum_oracle() {
  Rng rng(1);
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double a = rng.uniform(-2 * std::numbers::pi, 2 * std::numbers::pi);
    const double b = rng.uniform(-2 * std::numbers::pi, 2 * std::numbers::pi);
    const auto got = quantum::outcome_probabilities(quantum::prepare_circuit({a, b}));
    const auto want = oracle::circuit_probabilities(a, b);
    for (std::size_t k = 0; k < 4; ++k) worst = std::max(worst, std::abs(got[k] - want[k]));
  }
  const double secs = seconds_since(t0);
  return {worst <= kCircuitTol && secs < kCircuitBudgetSeconds,
          fmt("max |p - oracle| = %.3g over 1000 pairs, %.4f s", worst, secs)};
}

Outcome shot_sampling() {
  const auto state = quantum::prepare_circuit({std::numbers::pi / 2, std::numbers::pi / 2});
  Rng r1(42), r2(42);
  const auto c1 = quantum::sample_shots(state, 100000, r1);
  const auto c2 = quantum::sample_shots(state, 100000, r2);
  double worst = 0.0;
  for (auto c : c1.counts) worst = std::max(worst, std::abs(c / 100000.0 - 0.25));
  const bool same = c1.counts == c2.counts;
  return {worst <= kShotTol && same,
          fmt("max |freq - 0.25| = %.5f, seeded repeat %s", worst,
              same ? "identical" : "DIFFERENT")};
}

Outcome smoother() {
  Rng rng(3);
  double worst_abs = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    const std::size_t n = 2500;
    const double a = rng.uniform(-5, 5), b = rng.uniform(-5, 5), c = rng.uniform(-5, 5);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double t = static_cast<double>(i) / static_cast<double>(n);
      y[i] = a + b * t + c * t * t;
    }
    const auto s = analytics::savitzky_golay(y, 1001, 2);
    for (std::size_t i = 500; i + 500 < n; ++i) {
      worst_abs = std::max(worst_abs, std::abs(s[i] - y[i]));
    }
  }
  std::vector<double> sq(2500);
  for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = static_cast<double>(i * i);
  const auto s = analytics::savitzky_golay(sq, 1001, 2);
  double worst_rel = 0.0;
  for (std::size_t i = 500; i + 500 < sq.size(); ++i) {
    worst_rel = std::max(worst_rel, oracle::relative_error(s[i], sq[i]));
  }
  bool constant_exact = true;
  for (double v : {0.0, -3.25, 9.0528}) {
    const std::vector<double> cst(2500, v);
    for (double x : analytics::savitzky_golay(cst, 1001, 2)) constant_exact &= x == v;
  }
  return {worst_abs <= kSmootherTol && worst_rel <= kSmootherTol && constant_exact,
          fmt("quadratic abs err %.3g, i^2 rel err %.3g, constants %s", worst_abs, worst_rel,
              constant_exact ? "exact" : "NOT exact")};
}

Outcome statistics_oracle() {
  Rng rng(4);
  std::size_t instances = 0, u_mismatch = 0, p_over = 0;
  double worst_gap = 0.0;
  std::size_t worst_na = 0, worst_nb = 0;
  for (std::size_t na = 1; na <= kMaxSampleSize; ++na) {
    for (std::size_t nb = 1; nb <= kMaxSampleSize; ++nb) {
      for (int rep = 0; rep < 3; ++rep) {
        std::vector<double> a(na), b(nb);
        // rep 0: continuous values; reps 1-2: coarse values with ties.
        for (double& v : a) v = rep == 0 ? rng.uniform(0, 1) : static_cast<double>(rng.below(4));
        for (double& v : b) v = rep == 0 ? rng.uniform(0, 1) : static_cast<double>(rng.below(4));
        const auto r = analytics::mann_whitney_u(a, b);
        ++instances;
        if (r.u != oracle::pairwise_u(a, b)) ++u_mismatch;
        const double gap = std::abs(r.p_two_sided - oracle::exact_permutation_p(a, b));
        if (gap > kPermutationPTol) ++p_over;
        if (gap > worst_gap) {
          worst_gap = gap;
          worst_na = na;
          worst_nb = nb;
        }
      }
    }
  }
  return {u_mismatch == 0 && p_over == 0,
          fmt("U exact on %zu/%zu instances; p within %.2f of exact on %zu/%zu "
              "(worst gap %.4f at n=%zu,%zu)",
              instances - u_mismatch, instances, kPermutationPTol, instances - p_over, instances,
              worst_gap, worst_na, worst_nb)};
}

Outcome gradients() {
  Rng rng(5);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto act = trial % 2 == 0 ? nn::Activation::kRelu : nn::Activation::kTanh;
    const std::size_t outs = trial % 4 == 0 ? 1 : 4;
    const auto net = nn::Mlp::random(2, 32, outs, act, rng);
    std::vector<double> x{rng.uniform(-1, 1), rng.uniform(-1, 1)};
    // Redraw inputs that put a ReLU unit within 100 steps of its kink.
    while (act == nn::Activation::kRelu &&
           oracle::min_abs_preactivation(net, x) < kKinkMargin) {
      x = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
    }
    std::vector<double> up(outs);
    for (double& u : up) u = rng.uniform(-1, 1);
    const auto analytic = net.gradient(x, up);
    const auto numeric = oracle::finite_difference(
        net,
        [&](const nn::Mlp& n) {
          const auto out = n.forward(x);
          double s = 0.0;
          for (std::size_t k = 0; k < outs; ++k) s += up[k] * out[k];
          return s;
        },
        kFiniteDiffStep);
    for (std::size_t i = 0; i < analytic.size(); ++i) {
      worst = std::max(worst, oracle::relative_error(analytic[i], numeric[i]));
    }
  }
  return {worst <= kGradientTol, fmt("worst relative error %.3g over 100 nets", worst)};
}

Outcome schedule() {
  double eps = 1.0;
  int steps = 0;
  while (eps > 0.2) {
    eps = agent::decay_epsilon(eps, 0.2);
    ++steps;
  }
  struct Row {
    std::size_t episode;
    double eta, floor, as, al, c, boost;
  };
  const Row table[] = {{50, 1.4, 0.9, 0.7, 0.8, 2.0, 2.0},
                       {150, 1.05, 0.6, 0.8, 0.9, 1.5, 1.5},
                       {250, 0.84, 0.3, 0.85, 0.95, 1.0, 1.0},
                       {301, 0.7, 0.2, 0.9, 0.98, 1.0, 0.5}};
  bool stages = true;
  for (const Row& r : table) {
    const auto p = agent::stage_for_episode(r.episode);
    stages &= p.learning_rate == r.eta && p.epsilon_floor == r.floor && p.short_decay == r.as &&
              p.long_decay == r.al && p.curiosity_factor == r.c && p.exploration_boost == r.boost;
  }
  return {steps == kEpsilonFloorStep && stages,
          fmt("floor first reached at step %d, stage table %s", steps,
              stages ? "matches" : "MISMATCH")};
}

Outcome environment_values() {
  env::GridWorld world;
  world.set_obstacles({{5, 5}});
  const auto goal = world.step({9, 8}, 0);
  const auto obstacle = world.step({4, 5}, 3);
  const auto shaped = world.step({4, 4}, 3);  // dist 10 -> 9
  const bool ok = goal.reward == 10.0 && goal.done && obstacle.reward == -3.0 &&
                  obstacle.next_state == env::Cell{4, 5} &&
                  std::abs(shaped.reward - kShapedExample) <= kShapedTol;
  return {ok, fmt("goal %+.3f, obstacle %+.3f, shaped %.17g", goal.reward, obstacle.reward,
                  shaped.reward)};
}

Outcome desk_training() {
  harness::RunConfig cfg;
  cfg.episodes = kDeskEpisodes;
  cfg.seed = 42;
  const auto t0 = std::chrono::steady_clock::now();
  const auto result = harness::execute(cfg);
  const double secs = seconds_since(t0);
  const auto& recs = result.records;
  std::size_t wins = 0;
  for (std::size_t i = recs.size() - 500; i < recs.size(); ++i) wins += recs[i].success;
  const double rate = static_cast<double>(wins) / 500.0;
  std::vector<double> steps;
  for (auto it = recs.rbegin(); it != recs.rend() && steps.size() < 100; ++it) {
    if (it->success) steps.push_back(it->steps);
  }
  const double mean_steps = analytics::mean_std(steps).mean;
  const bool ok = rate >= kDeskSuccessMin && !steps.empty() && mean_steps < kDeskStepsMax &&
                  secs < kDeskBudgetSeconds;
  return {ok, fmt("last-500 success %.3f, mean steps (last 100 successes) %.1f, %.2f s", rate,
                  mean_steps, secs)};
}

Outcome qualitative_ordering() {
  harness::RunConfig cfg;
  cfg.episodes = kOrderingEpisodes;
  cfg.seed = 42;
  analytics::RunSummary s[3];
  const harness::Algorithm algos[] = {harness::Algorithm::kArdns, harness::Algorithm::kDqn,
                                      harness::Algorithm::kPpo};
  for (int i = 0; i < 3; ++i) {
    cfg.algo = algos[i];
    s[i] = harness::execute(cfg).summary;
  }
  const bool ok = s[0].reward_variance_all < s[1].reward_variance_all &&
                  s[0].success_rate >= s[1].success_rate;
  return {ok, fmt("variance ardns %.1f / dqn %.1f / ppo %.1f; success ardns %.3f / dqn %.3f / "
                  "ppo %.3f (ppo not gated)",
                  s[0].reward_variance_all, s[1].reward_variance_all, s[2].reward_variance_all,
                  s[0].success_rate, s[1].success_rate, s[2].success_rate)};
}

std::string read_bytes(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  const fs::path root = fs::temp_directory_path() / "ardns_acceptance_determinism";
  fs::remove_all(root);
  bool identical = true;
  double worst_ratio = 0.0;
  std::string detail;
  for (auto algo : {harness::Algorithm::kArdns, harness::Algorithm::kDqn,
                    harness::Algorithm::kPpo}) {
    harness::RunConfig cfg;
    cfg.algo = algo;
    cfg.episodes = kDeterminismEpisodes;
    const std::string name(harness::to_string(algo));

    auto t0 = std::chrono::steady_clock::now();
    cfg.output_dir = root / (name + "_1");
    (void)harness::run_cmd(cfg);
    const double single = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    cfg.output_dir = root / (name + "_2");
    (void)harness::run_cmd(cfg);
    const bool same = read_bytes(root / (name + "_1") / "episodes.csv") ==
                      read_bytes(root / (name + "_2") / "episodes.csv");
    const double overhead = seconds_since(t0);

    identical &= same;
    const double ratio = overhead / std::max(single, 1e-9);
    worst_ratio = std::max(worst_ratio, ratio);
    detail += fmt("%s %s (check/run %.2f) ", name.c_str(), same ? "identical" : "DIFFERENT",
                  ratio);
  }
  fs::remove_all(root);
  return {identical && worst_ratio < kDeterminismOverheadMax, detail};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "quantum oracle equivalence", quantum_oracle},
      {2, "shot-sampling soundness", shot_sampling},
      {3, "smoother exactness", smoother},
      {4, "statistics oracle", statistics_oracle},
      {5, "gradient correctness", gradients},
      {6, "schedule exactness", schedule},
      {7, "environment unit values", environment_values},
      {8, "desk-scale training", desk_training},
      {9, "qualitative ordering", qualitative_ordering},
      {10, "determinism", determinism},
  };

  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: acceptance [--criterion N]\n");
      return 2;
    }
  }

  int failures = 0, ran = 0;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    ++ran;
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] criterion %d: %s: %s\n", out.pass ? "PASS" : "FAIL", c.id, c.name,
                out.detail.c_str());
    std::fflush(stdout);
    failures += !out.pass;
  }
  if (ran == 0) {
    std::fprintf(stderr, "no such criterion: %d\n", only);
    return 2;
  }
  return failures == 0 ? 0 : 1;
}
