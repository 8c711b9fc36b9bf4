#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ardns/agent.hpp"
#include "ardns/analytics.hpp"
#include "ardns/environment.hpp"
#include "ardns/harness.hpp"
#include "ardns/quantum.hpp"

namespace py = pybind11;

namespace {

using namespace ardns;

// Thin holder so Python can keep a seeded stream across calls.
struct PyRng {
  explicit PyRng(std::uint64_t seed) : rng(seed) {}
  Rng rng;
};

harness::RunConfig make_config(const std::string& algo, std::size_t episodes,
                               std::uint64_t seed, int grid_size, double obstacle_rate,
                               int max_steps, bool use_attention_memory, bool stage_schedule) {
  harness::RunConfig cfg;
  cfg.algo = harness::parse_algorithm(algo);
  cfg.episodes = episodes;
  cfg.seed = seed;
  cfg.grid_size = grid_size;
  cfg.obstacle_rate = obstacle_rate;
  cfg.max_steps = max_steps;
  cfg.use_attention_memory = use_attention_memory;
  cfg.stage_schedule = stage_schedule;
  return cfg;
}

py::dict summary_dict(const analytics::RunSummary& s) {
  py::dict d;
  d["goals_reached"] = s.goals_reached;
  d["total_episodes"] = s.total_episodes;
  d["success_rate"] = s.success_rate;
  d["mean_reward_all"] = s.reward_all.mean;
  d["std_reward_all"] = s.reward_all.std;
  d["mean_reward_last100"] = s.reward_last100.mean;
  d["std_reward_last100"] = s.reward_last100.std;
  d["mean_steps_all"] = s.steps_all.mean;
  d["std_steps_all"] = s.steps_all.std;
  d["mean_steps_last100_success"] = s.steps_last100_success.mean;
  d["std_steps_last100_success"] = s.steps_last100_success.std;
  d["reward_variance_all"] = s.reward_variance_all;
  d["wall_clock_seconds"] = s.wall_clock_seconds;
  return d;
}

}  // namespace

PYBIND11_MODULE(_ardns, m) {
  m.doc() = "Quantum-circuit RL agent, grid-world and evaluation statistics";

  py::register_exception<harness::ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<PyRng>(m, "Rng").def(py::init<std::uint64_t>(), py::arg("seed"));

  m.def(
      "prepare_circuit",
      [](double theta0, double theta1) {
        const auto s = quantum::prepare_circuit({theta0, theta1});
        return std::vector<std::complex<double>>(s.amplitudes.begin(), s.amplitudes.end());
      },
      py::arg("theta0"), py::arg("theta1"),
      "Amplitudes of RY(theta1) x RY(theta0) |00>, indexed by 2*b1 + b0.");
  m.def(
      "outcome_probabilities",
      [](double theta0, double theta1) {
        return quantum::outcome_probabilities(quantum::prepare_circuit({theta0, theta1}));
      },
      py::arg("theta0"), py::arg("theta1"));
  m.def(
      "sample_shots",
      [](double theta0, double theta1, std::uint32_t shots, PyRng& rng) {
        return quantum::sample_shots(quantum::prepare_circuit({theta0, theta1}), shots, rng.rng)
            .counts;
      },
      py::arg("theta0"), py::arg("theta1"), py::arg("shots"), py::arg("rng"));

  m.def(
      "stage_for_episode",
      [](std::size_t episode) {
        const auto p = agent::stage_for_episode(episode);
        py::dict d;
        d["learning_rate"] = p.learning_rate;
        d["epsilon_floor"] = p.epsilon_floor;
        d["short_decay"] = p.short_decay;
        d["long_decay"] = p.long_decay;
        d["curiosity_factor"] = p.curiosity_factor;
        d["exploration_boost"] = p.exploration_boost;
        d["variance_sensitivity"] = p.variance_sensitivity;
        d["state_change_penalty"] = p.state_change_penalty;
        d["weight_clip"] = p.weight_clip;
        d["shots"] = p.shots;
        return d;
      },
      py::arg("episode"));
  m.def(
      "curiosity_bonus",
      [](std::uint64_t visits, int dist, double c, double boost) {
        return agent::curiosity_bonus({visits, dist, c, boost});
      },
      py::arg("visits"), py::arg("dist_to_goal"), py::arg("curiosity_factor") = 0.75,
      py::arg("boost") = 1.0);

  m.def(
      "env_step",
      [](std::pair<int, int> state, int action, std::vector<std::pair<int, int>> obstacles,
         int size) {
        env::GridConfig gc;
        gc.size = size;
        env::GridWorld world(gc);
        std::set<env::Cell> cells;
        for (auto [x, y] : obstacles) cells.insert({x, y});
        world.set_obstacles(std::move(cells));
        const auto out = world.step({state.first, state.second}, action);
        py::dict d;
        d["next_state"] = std::make_pair(out.next_state.x, out.next_state.y);
        d["reward"] = out.reward;
        d["done"] = out.done;
        d["hit_obstacle"] = out.hit_obstacle;
        d["reached_goal"] = out.reached_goal;
        return d;
      },
      py::arg("state"), py::arg("action"), py::arg("obstacles") = std::vector<std::pair<int, int>>{},
      py::arg("size") = 10);

  m.def(
      "train",
      [](const std::string& algo, std::size_t episodes, std::uint64_t seed, int grid_size,
         double obstacle_rate, int max_steps, bool use_attention_memory, bool stage_schedule) {
        const auto cfg = make_config(algo, episodes, seed, grid_size, obstacle_rate, max_steps,
                                     use_attention_memory, stage_schedule);
        harness::RunResult result;
        {
          py::gil_scoped_release release;
          result = harness::execute(cfg);
        }
        py::list rows;
        for (const auto& r : result.records) {
          rows.append(py::make_tuple(r.episode, r.total_reward, r.steps, r.success));
        }
        return py::make_tuple(rows, summary_dict(result.summary));
      },
      py::arg("algo") = "ardns", py::arg("episodes") = 20000, py::arg("seed") = 42,
      py::arg("grid_size") = 10, py::arg("obstacle_rate") = 0.05, py::arg("max_steps") = 400,
      py::arg("use_attention_memory") = false, py::arg("stage_schedule") = true,
      "Train one algorithm; returns ([(episode, reward, steps, success)], summary dict).");

  m.def("savitzky_golay",
        [](const std::vector<double>& series, std::size_t window, std::size_t order) {
          return analytics::savitzky_golay(series, window, order);
        },
        py::arg("series"), py::arg("window") = 1001, py::arg("order") = 2);
  m.def(
      "mann_whitney_u",
      [](const std::vector<double>& a, const std::vector<double>& b) {
        const auto r = analytics::mann_whitney_u(a, b);
        py::dict d;
        d["u"] = r.u;
        d["z"] = r.z;
        d["p_two_sided"] = r.p_two_sided;
        d["effect_r"] = r.effect_r;
        return d;
      },
      py::arg("a"), py::arg("b"));
}
