// Command-line entry point.
//
//   ardns run --algo <ardns|dqn|ppo> [--episodes N] [--seed S] [--grid N]
//             [--obstacle-rate F] [--max-steps N] [--config PATH] [--out DIR]
//             [--use-attention-memory] [--no-stage-schedule]
//   ardns compare <DIR>... [--out PATH]
//
// Exit codes: 0 success, 1 usage/config error, 2 runtime failure.

#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ardns/harness.hpp"

namespace {

namespace fs = std::filesystem;
using ardns::harness::RunConfig;

constexpr int kUsageError = 1;
constexpr int kRuntimeError = 2;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grid-world benchmark for a quantum-circuit RL agent with DQN/PPO baselines"};
  app.require_subcommand(1);

  std::string algo;
  std::size_t episodes = 0;
  std::uint64_t seed = 0;
  int grid = 0;
  double obstacle_rate = 0.0;
  int max_steps = 0;
  std::string config_path;
  std::string out_dir;
  bool attention = false;
  bool no_stages = false;

  CLI::App* run = app.add_subcommand("run", "Train one algorithm and write its outputs");
  CLI::Option* algo_opt = run->add_option("--algo", algo, "ardns, dqn or ppo");
  CLI::Option* episodes_opt = run->add_option("--episodes", episodes, "Number of episodes");
  CLI::Option* seed_opt = run->add_option("--seed", seed, "Random seed");
  CLI::Option* grid_opt = run->add_option("--grid", grid, "Grid side length");
  CLI::Option* rate_opt = run->add_option("--obstacle-rate", obstacle_rate, "Obstacle fraction");
  CLI::Option* steps_opt = run->add_option("--max-steps", max_steps, "Step cap per episode");
  run->add_option("--config", config_path, "key = value config file (flags override it)");
  CLI::Option* out_opt = run->add_option("--out", out_dir, "Output directory");
  CLI::Option* attn_opt = run->add_flag("--use-attention-memory", attention,
                                        "Use the attention-gated memory");
  CLI::Option* stage_opt = run->add_flag("--no-stage-schedule", no_stages,
                                         "Use fixed default hyperparameters");

  std::vector<std::string> compare_dirs;
  std::string compare_out = "comparison.json";
  CLI::App* compare = app.add_subcommand("compare", "Compare two or more run directories");
  compare->add_option("dirs", compare_dirs, "Run directories containing episodes.csv")
      ->required()
      ->expected(2, -1);
  compare->add_option("--out", compare_out, "Output JSON path (a .txt table is written beside it)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (*run) {
      RunConfig cfg;
      if (!config_path.empty()) cfg = ardns::harness::load_config(config_path, cfg);
      if (*algo_opt) cfg.algo = ardns::harness::parse_algorithm(algo);
      if (*episodes_opt) cfg.episodes = episodes;
      if (*seed_opt) cfg.seed = seed;
      if (*grid_opt) cfg.grid_size = grid;
      if (*rate_opt) cfg.obstacle_rate = obstacle_rate;
      if (*steps_opt) cfg.max_steps = max_steps;
      if (*out_opt) cfg.output_dir = out_dir;
      if (*attn_opt) cfg.use_attention_memory = attention;
      if (*stage_opt) cfg.stage_schedule = !no_stages;
      cfg.validate();

      const auto result = ardns::harness::run_cmd(cfg);
      const auto& s = result.summary;
      std::printf("%s: %zu/%zu goals (%.1f%%), mean reward %.4f, variance %.3f, %.2fs -> %s\n",
                  std::string(ardns::harness::to_string(cfg.algo)).c_str(), s.goals_reached,
                  s.total_episodes, 100.0 * s.success_rate, s.reward_all.mean,
                  s.reward_variance_all, s.wall_clock_seconds,
                  cfg.resolved_output_dir().string().c_str());
      return 0;
    }

    std::vector<fs::path> dirs(compare_dirs.begin(), compare_dirs.end());
    const auto report = ardns::harness::compare_cmd(dirs, compare_out);
    std::fputs(ardns::harness::comparison_table(report).c_str(), stdout);
    return 0;
  } catch (const ardns::harness::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsageError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kRuntimeError;
  }
}
