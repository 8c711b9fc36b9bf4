#include "ardns/harness.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ardns/agent.hpp"
#include "ardns/dqn.hpp"
#include "ardns/ppo.hpp"

namespace ardns::harness {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

std::string_view to_string(Algorithm algo) {
  switch (algo) {
    case Algorithm::kArdns: return "ardns";
    case Algorithm::kDqn: return "dqn";
    case Algorithm::kPpo: return "ppo";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "ardns") return Algorithm::kArdns;
  if (name == "dqn") return Algorithm::kDqn;
  if (name == "ppo") return Algorithm::kPpo;
  throw ConfigError("unknown algorithm '" + std::string(name) + "' (expected ardns, dqn or ppo)");
}

void RunConfig::validate() const {
  if (episodes < 1) throw ConfigError("episodes must be at least 1");
  if (!(obstacle_rate >= 0.0 && obstacle_rate <= 0.9)) {
    throw ConfigError("obstacle_rate must lie in [0, 0.9]");
  }
  if (grid_size < 2) throw ConfigError("grid_size must be at least 2");
  if (max_steps < 1) throw ConfigError("max_steps must be at least 1");
}

fs::path RunConfig::resolved_output_dir() const {
  return output_dir.empty() ? fs::path("runs") / std::string(to_string(algo)) : output_dir;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename Int>
bool parse_int(std::string_view text, Int& out) {
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

bool parse_double(std::string_view text, double& out) {
  const std::string buf(text);
  char* end = nullptr;
  out = std::strtod(buf.c_str(), &end);
  return !buf.empty() && end == buf.c_str() + buf.size() && std::isfinite(out);
}

bool parse_bool(std::string_view text, bool& out) {
  if (text == "true" || text == "1" || text == "yes") {
    out = true;
    return true;
  }
  if (text == "false" || text == "0" || text == "no") {
    out = false;
    return true;
  }
  return false;
}

std::string where(std::string_view source, std::size_t line) {
  return std::string(source) + ":" + std::to_string(line) + ": ";
}

std::string format_reward(double r) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", r);
  return buf;
}

void write_file(const fs::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << contents;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::vector<double> rewards_of(std::span<const EpisodeRecord> records) {
  std::vector<double> r;
  r.reserve(records.size());
  for (const auto& rec : records) r.push_back(rec.total_reward);
  return r;
}

json summary_fields(const analytics::RunSummary& s) {
  json j;
  j["goals_reached"] = s.goals_reached;
  j["total_episodes"] = s.total_episodes;
  j["success_rate"] = s.success_rate;
  j["mean_reward_all"] = s.reward_all.mean;
  j["std_reward_all"] = s.reward_all.std;
  j["mean_reward_last100"] = s.reward_last100.mean;
  j["std_reward_last100"] = s.reward_last100.std;
  j["mean_steps_all"] = s.steps_all.mean;
  j["std_steps_all"] = s.steps_all.std;
  j["mean_steps_last100_success"] = s.steps_last100_success.mean;
  j["std_steps_last100_success"] = s.steps_last100_success.std;
  j["last100_successes"] = s.last100_successes;
  j["reward_variance_all"] = s.reward_variance_all;
  j["wall_clock_seconds"] = s.wall_clock_seconds;
  return j;
}

}  // namespace

RunConfig parse_config(std::string_view text, RunConfig base, std::string_view source) {
  RunConfig cfg = std::move(base);
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(where(source, line_no) + "expected 'key = value'");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    const auto bad_value = [&] {
      return ConfigError(where(source, line_no) + "invalid value '" + std::string(value) +
                         "' for '" + std::string(key) + "'");
    };

    if (key == "algo") {
      try {
        cfg.algo = parse_algorithm(value);
      } catch (const ConfigError& e) {
        throw ConfigError(where(source, line_no) + e.what());
      }
    } else if (key == "episodes") {
      if (!parse_int(value, cfg.episodes) || cfg.episodes < 1) throw bad_value();
    } else if (key == "seed") {
      if (!parse_int(value, cfg.seed)) throw bad_value();
    } else if (key == "grid_size") {
      if (!parse_int(value, cfg.grid_size) || cfg.grid_size < 2) throw bad_value();
    } else if (key == "obstacle_rate") {
      if (!parse_double(value, cfg.obstacle_rate) || !(cfg.obstacle_rate >= 0.0) ||
          cfg.obstacle_rate > 0.9) {
        throw bad_value();
      }
    } else if (key == "max_steps") {
      if (!parse_int(value, cfg.max_steps) || cfg.max_steps < 1) throw bad_value();
    } else if (key == "use_attention_memory") {
      if (!parse_bool(value, cfg.use_attention_memory)) throw bad_value();
    } else if (key == "stage_schedule") {
      if (!parse_bool(value, cfg.stage_schedule)) throw bad_value();
    } else if (key == "output_dir") {
      cfg.output_dir = std::string(value);
    } else {
      throw ConfigError(where(source, line_no) + "unknown key '" + std::string(key) + "'");
    }
  }
  return cfg;
}

RunConfig load_config(const fs::path& path, RunConfig base) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), std::move(base), path.string());
}

TrainOptions train_options(const RunConfig& config) {
  TrainOptions opt;
  opt.episodes = config.episodes;
  opt.seed = config.seed;
  opt.grid.size = config.grid_size;
  opt.grid.obstacle_rate = config.obstacle_rate;
  opt.grid.max_steps = config.max_steps;
  return opt;
}

RunResult execute(const RunConfig& config, RefreshHook on_refresh) {
  config.validate();
  TrainOptions opt = train_options(config);
  opt.on_refresh = std::move(on_refresh);

  const auto start = std::chrono::steady_clock::now();
  RunResult result;
  switch (config.algo) {
    case Algorithm::kArdns: {
      agent::AgentConfig ac;
      ac.use_attention_memory = config.use_attention_memory;
      ac.stage_schedule = config.stage_schedule;
      result.records = agent::train(opt, ac);
      break;
    }
    case Algorithm::kDqn: result.records = dqn::train(opt); break;
    case Algorithm::kPpo: result.records = ppo::train(opt); break;
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  result.summary = analytics::summarize(result.records, elapsed);
  return result;
}

std::string episodes_csv(std::span<const EpisodeRecord> records) {
  std::string out = "episode,reward,steps,success\n";
  out.reserve(records.size() * 28);
  for (const EpisodeRecord& r : records) {
    out += std::to_string(r.episode);
    out += ',';
    out += format_reward(r.total_reward);
    out += ',';
    out += std::to_string(r.steps);
    out += r.success ? ",1\n" : ",0\n";
  }
  return out;
}

std::vector<EpisodeRecord> parse_episodes_csv(std::string_view text, std::string_view source) {
  std::vector<EpisodeRecord> records;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (!text.empty()) {
    ++line_no;
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    if (!header_seen) {
      if (line != "episode,reward,steps,success") {
        throw DataError(where(source, line_no) + "expected header 'episode,reward,steps,success'");
      }
      header_seen = true;
      continue;
    }
    if (line.empty()) continue;

    std::string_view fields[4];
    std::size_t count = 0;
    for (std::size_t start = 0;;) {
      const auto comma = line.find(',', start);
      if (count < 4) fields[count] = line.substr(start, comma - start);
      ++count;
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (count != 4) {
      throw DataError(where(source, line_no) + "expected 4 fields, found " +
                      std::to_string(count));
    }
    EpisodeRecord r;
    int success = 0;
    if (!parse_int(fields[0], r.episode) || !parse_double(fields[1], r.total_reward) ||
        !parse_int(fields[2], r.steps) || !parse_int(fields[3], success) ||
        (success != 0 && success != 1) || r.steps < 0) {
      throw DataError(where(source, line_no) + "malformed row '" + std::string(line) + "'");
    }
    r.success = success == 1;
    records.push_back(r);
  }
  if (!header_seen) throw DataError(std::string(source) + ": empty file");
  return records;
}

std::vector<EpisodeRecord> read_episodes_csv(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_episodes_csv(buf.str(), path.string());
}

std::string learning_curve_csv(std::span<const EpisodeRecord> records) {
  const std::vector<double> smooth = analytics::savitzky_golay(rewards_of(records));
  std::string out = "episode,smoothed_reward\n";
  for (std::size_t i = 0; i < records.size(); ++i) {
    out += std::to_string(records[i].episode) + ',' + format_reward(smooth[i]) + '\n';
  }
  return out;
}

std::string reward_hist_csv(std::span<const EpisodeRecord> records) {
  constexpr int kLo = -20;
  constexpr int kHi = 11;
  std::vector<std::size_t> bins(kHi - kLo, 0);
  std::size_t under = 0;
  std::size_t over = 0;
  for (const auto& r : records) {
    if (r.total_reward < kLo) {
      ++under;
    } else if (r.total_reward >= kHi) {
      ++over;
    } else {
      ++bins[static_cast<std::size_t>(std::floor(r.total_reward - kLo))];
    }
  }
  std::string out = "bin_lo,bin_hi,count\n";
  out += "-inf," + std::to_string(kLo) + ',' + std::to_string(under) + '\n';
  for (int b = kLo; b < kHi; ++b) {
    out += std::to_string(b) + ',' + std::to_string(b + 1) + ',' +
           std::to_string(bins[static_cast<std::size_t>(b - kLo)]) + '\n';
  }
  out += std::to_string(kHi) + ",inf," + std::to_string(over) + '\n';
  return out;
}

std::string learning_curve_svg(std::span<const EpisodeRecord> records) {
  constexpr double kWidth = 640.0;
  constexpr double kHeight = 360.0;
  constexpr double kPad = 40.0;
  const std::vector<double> smooth = analytics::savitzky_golay(rewards_of(records));
  double lo = 0.0;
  double hi = 1.0;
  if (!smooth.empty()) {
    lo = *std::min_element(smooth.begin(), smooth.end());
    hi = *std::max_element(smooth.begin(), smooth.end());
    if (hi - lo < 1e-9) {
      lo -= 1.0;
      hi += 1.0;
    }
  }
  const double span_x = std::max<double>(1.0, static_cast<double>(smooth.size()) - 1.0);

  std::ostringstream svg;
  svg.setf(std::ios::fixed);
  svg.precision(2);
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << kPad << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\">"
      << "Smoothed episode reward (range " << lo << " to " << hi << ")</text>\n"
      << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < smooth.size(); ++i) {
    const double x = kPad + (kWidth - 2 * kPad) * static_cast<double>(i) / span_x;
    const double y = kHeight - kPad - (kHeight - 2 * kPad) * (smooth[i] - lo) / (hi - lo);
    svg << x << ',' << y << ' ';
  }
  svg << "\"/>\n</svg>\n";
  return svg.str();
}

std::string summary_json(const RunConfig& config, const analytics::RunSummary& summary) {
  json j;
  j["algo"] = to_string(config.algo);
  j["seed"] = config.seed;
  j["episodes"] = config.episodes;
  j["grid_size"] = config.grid_size;
  j["obstacle_rate"] = config.obstacle_rate;
  j["max_steps"] = config.max_steps;
  j["use_attention_memory"] = config.use_attention_memory;
  j["stage_schedule"] = config.stage_schedule;
  j.update(summary_fields(summary));
  return j.dump(2) + '\n';
}

void write_run(const fs::path& dir, const RunConfig& config, const RunResult& result) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());
  write_file(dir / "episodes.csv", episodes_csv(result.records));
  write_file(dir / "summary.json", summary_json(config, result.summary));
  write_file(dir / "learning_curve.csv", learning_curve_csv(result.records));
  write_file(dir / "learning_curve.svg", learning_curve_svg(result.records));
  write_file(dir / "reward_hist.csv", reward_hist_csv(result.records));
}

RunResult run_cmd(const RunConfig& config) {
  RunResult result = execute(config);
  write_run(config.resolved_output_dir(), config, result);
  return result;
}

ComparisonReport compare_runs(std::span<const fs::path> run_dirs) {
  if (run_dirs.size() < 2) throw ConfigError("compare needs at least two run directories");
  ComparisonReport report;
  std::vector<std::vector<double>> rewards;
  for (const fs::path& dir : run_dirs) {
    const std::vector<EpisodeRecord> records = read_episodes_csv(dir / "episodes.csv");
    if (records.empty()) throw DataError((dir / "episodes.csv").string() + ": no episodes");
    fs::path name = dir.filename();
    if (name.empty()) name = dir.parent_path().filename();
    report.labels.push_back(name.empty() ? dir.string() : name.string());
    report.summaries.push_back(analytics::summarize(records));
    rewards.push_back(rewards_of(records));
  }
  for (std::size_t i = 0; i < rewards.size(); ++i) {
    for (std::size_t j = i + 1; j < rewards.size(); ++j) {
      report.pairs.push_back({report.labels[i], report.labels[j],
                              analytics::mann_whitney_u(rewards[i], rewards[j])});
    }
  }
  return report;
}

std::string comparison_json(const ComparisonReport& report) {
  json j;
  json runs = json::array();
  for (std::size_t i = 0; i < report.labels.size(); ++i) {
    json r;
    r["label"] = report.labels[i];
    r.update(summary_fields(report.summaries[i]));
    r.erase("wall_clock_seconds");
    runs.push_back(std::move(r));
  }
  j["runs"] = std::move(runs);
  json pairs = json::array();
  for (const auto& p : report.pairs) {
    json e;
    e["a"] = p.first;
    e["b"] = p.second;
    e["u"] = p.test.u;
    e["z"] = p.test.z;
    e["p_two_sided"] = p.test.p_two_sided;
    e["effect_r"] = p.test.effect_r;
    pairs.push_back(std::move(e));
  }
  j["pairwise_mann_whitney"] = std::move(pairs);
  return j.dump(2) + '\n';
}

std::string comparison_table(const ComparisonReport& report) {
  const auto cell = [](const char* fmt, auto... args) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), fmt, args...);
    return std::string(buf);
  };
  const auto row = [&](const std::string& name, const std::vector<std::string>& cells) {
    std::string line = cell("%-38s", name.c_str());
    for (const auto& c : cells) line += cell(" %24s", c.c_str());
    return line + '\n';
  };

  std::string out = row("Metric", report.labels);
  std::vector<std::string> goals, reward_all, reward_last, steps_all, steps_last, variance;
  for (const auto& s : report.summaries) {
    goals.push_back(cell("%zu/%zu (%.1f%%)", s.goals_reached, s.total_episodes,
                         100.0 * s.success_rate));
    reward_all.push_back(cell("%.4f +- %.4f", s.reward_all.mean, s.reward_all.std));
    reward_last.push_back(cell("%.4f +- %.4f", s.reward_last100.mean, s.reward_last100.std));
    steps_all.push_back(cell("%.1f +- %.1f", s.steps_all.mean, s.steps_all.std));
    steps_last.push_back(
        cell("%.1f +- %.1f", s.steps_last100_success.mean, s.steps_last100_success.std));
    variance.push_back(cell("%.3f", s.reward_variance_all));
  }
  out += row("Goals Reached", goals);
  out += row("Mean Reward (all episodes)", reward_all);
  out += row("Mean Reward (last 100 episodes)", reward_last);
  out += row("Steps to Goal (all episodes)", steps_all);
  out += row("Steps to Goal (last 100, successful)", steps_last);
  out += row("Reward Variance (all episodes)", variance);
  out += "\nMann-Whitney U (per-episode rewards, two-sided)\n";
  for (const auto& p : report.pairs) {
    out += cell("%s vs %s: ", p.first.c_str(), p.second.c_str()) +
           cell("U=%.1f p=%.6f r=%.4f\n", p.test.u, p.test.p_two_sided, p.test.effect_r);
  }
  return out;
}

ComparisonReport compare_cmd(std::span<const fs::path> run_dirs, const fs::path& out) {
  ComparisonReport report = compare_runs(run_dirs);
  if (out.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(out.parent_path(), ec);
    if (ec) throw std::runtime_error("cannot create " + out.parent_path().string());
  }
  write_file(out, comparison_json(report));
  fs::path table = out;
  table.replace_extension(".txt");
  write_file(table, comparison_table(report));
  return report;
}

}  // namespace ardns::harness
