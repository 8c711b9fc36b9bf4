#pragma once

// Experiment orchestration: run configuration, training dispatch, on-disk
// outputs and cross-run comparison.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ardns/analytics.hpp"
#include "ardns/episode.hpp"

namespace ardns::harness {

// Bad configuration or usage; the CLI maps it to exit code 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed run data (missing or corrupt CSV).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Algorithm { kArdns, kDqn, kPpo };

std::string_view to_string(Algorithm algo);
// Accepts "ardns", "dqn", "ppo". Throws ConfigError otherwise.
Algorithm parse_algorithm(std::string_view name);

struct RunConfig {
  Algorithm algo = Algorithm::kArdns;
  std::size_t episodes = 20000;
  std::uint64_t seed = 42;
  int grid_size = 10;
  double obstacle_rate = 0.05;
  int max_steps = 400;
  bool use_attention_memory = false;
  bool stage_schedule = true;
  // Empty means runs/<algo>.
  std::filesystem::path output_dir;

  // Throws ConfigError when a field is out of range.
  void validate() const;
  std::filesystem::path resolved_output_dir() const;
};

// Line-oriented `key = value` text; `#` starts a comment. Values override
// `base`. Unknown keys and malformed values throw ConfigError naming the
// source and line.
RunConfig parse_config(std::string_view text, RunConfig base = {},
                       std::string_view source = "<config>");
RunConfig load_config(const std::filesystem::path& path, RunConfig base = {});

TrainOptions train_options(const RunConfig& config);

struct RunResult {
  std::vector<EpisodeRecord> records;
  analytics::RunSummary summary;
};

// Trains the configured algorithm in memory (no I/O).
RunResult execute(const RunConfig& config, RefreshHook on_refresh = {});

// `episode,reward,steps,success`, reward with six decimals, success 0/1.
std::string episodes_csv(std::span<const EpisodeRecord> records);
// Throws DataError naming `source` and the offending line.
std::vector<EpisodeRecord> parse_episodes_csv(std::string_view text,
                                              std::string_view source = "<csv>");
std::vector<EpisodeRecord> read_episodes_csv(const std::filesystem::path& path);

// `episode,smoothed_reward` with the default smoother settings.
std::string learning_curve_csv(std::span<const EpisodeRecord> records);
// `bin_lo,bin_hi,count`: unit bins over [-20, 11] plus under/overflow rows.
std::string reward_hist_csv(std::span<const EpisodeRecord> records);
// Minimal standalone line chart of the smoothed reward.
std::string learning_curve_svg(std::span<const EpisodeRecord> records);

// summary.json body: run identity plus every RunSummary field.
std::string summary_json(const RunConfig& config, const analytics::RunSummary& summary);

// Writes episodes.csv, summary.json, learning_curve.csv, learning_curve.svg
// and reward_hist.csv into `dir`, creating it if needed. Throws
// std::runtime_error when the directory or a file cannot be written.
void write_run(const std::filesystem::path& dir, const RunConfig& config,
               const RunResult& result);

// execute() followed by write_run() into config.resolved_output_dir().
RunResult run_cmd(const RunConfig& config);

struct PairwiseComparison {
  std::string first;
  std::string second;
  analytics::MannWhitney test;
};

struct ComparisonReport {
  std::vector<std::string> labels;
  std::vector<analytics::RunSummary> summaries;
  // Every unordered pair (i < j) in input order.
  std::vector<PairwiseComparison> pairs;
};

// Mann-Whitney on per-episode rewards for every pair of run directories.
// Labels are the directory names. Throws ConfigError for fewer than two
// directories and DataError for unreadable episodes.csv files.
ComparisonReport compare_runs(std::span<const std::filesystem::path> run_dirs);

std::string comparison_json(const ComparisonReport& report);
// Plain-text table with one column per run, plus the pairwise tests.
std::string comparison_table(const ComparisonReport& report);

// compare_runs() then writes `out` (JSON) and the same path with a .txt
// extension (table).
ComparisonReport compare_cmd(std::span<const std::filesystem::path> run_dirs,
                             const std::filesystem::path& out);

}  // namespace ardns::harness
