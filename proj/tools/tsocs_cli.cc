// Copyright 2026 The TSOCS Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     https://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "tsocs/bench.h"
#include "tsocs/landscape.h"
#include "tsocs/problem_set.h"

namespace {

using nlohmann::json;
using namespace tsocs;

struct Options {
  ControllerConfig controller;
  SimConfig sim;
  uint64_t seed = 1;
  int workers = 1;
  std::string out;
};

template <typename T>
void MaybeSet(const json& j, const char* key, T* field) {
  if (j.contains(key)) *field = j.at(key).get<T>();
}

// JSON config file: optional "controller", "solver", "optimizer", "sim"
// sections. Values load before flag parsing, so explicit flags win.
void LoadConfigFile(const std::string& path, Options* opts) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--config", "cannot open " + path);
  json j;
  in >> j;
  if (j.contains("controller")) {
    const json& c = j["controller"];
    MaybeSet(c, "dt", &opts->controller.dt);
    MaybeSet(c, "tau", &opts->controller.tau);
    MaybeSet(c, "k1", &opts->controller.k1);
    MaybeSet(c, "k2", &opts->controller.k2);
    MaybeSet(c, "beta_min", &opts->controller.beta_min);
    MaybeSet(c, "eps_x", &opts->controller.eps_x);
    MaybeSet(c, "eps_v", &opts->controller.eps_v);
    MaybeSet(c, "eps_cost", &opts->controller.eps_cost);
  }
  if (j.contains("solver")) {
    const json& s = j["solver"];
    SolverConfig& solver = opts->controller.solver;
    MaybeSet(s, "success_cost_threshold", &solver.success_cost_threshold);
    MaybeSet(s, "use_t_max", &solver.use_t_max);
    MaybeSet(s, "use_initial_guess", &solver.use_initial_guess);
    MaybeSet(s, "use_stage1", &solver.use_stage1);
    MaybeSet(s, "max_horizon_retries", &solver.max_horizon_retries);
  }
  if (j.contains("optimizer")) {
    const json& o = j["optimizer"];
    OptimizerConfig& opt = opts->controller.solver.optimizer;
    MaybeSet(o, "max_iterations", &opt.max_iterations);
    MaybeSet(o, "cost_tolerance", &opt.cost_tolerance);
    MaybeSet(o, "gradient_tolerance", &opt.gradient_tolerance);
    MaybeSet(o, "step_tolerance", &opt.step_tolerance);
    MaybeSet(o, "fd_step", &opt.fd_step);
    MaybeSet(o, "initial_damping", &opt.initial_damping);
  }
  if (j.contains("sim")) {
    const json& s = j["sim"];
    MaybeSet(s, "rate", &opts->sim.rate);
    MaybeSet(s, "noise_level", &opts->sim.noise_level);
    MaybeSet(s, "seed", &opts->sim.seed);
    MaybeSet(s, "max_time_factor", &opts->sim.max_time_factor);
    if (s.contains("noise_model")) {
      const std::string name = s["noise_model"].get<std::string>();
      if (name == "uniform") {
        opts->sim.noise_model = NoiseModel::kUniform;
      } else if (name == "gaussian") {
        opts->sim.noise_model = NoiseModel::kTruncatedGaussian;
      } else {
        throw CLI::ValidationError("--config",
                                   "unknown noise_model: " + name);
      }
    }
  }
}

GridAxis ParseAxis(const std::string& text) {
  GridAxis axis;
  const size_t c1 = text.find(':');
  const size_t c2 = text.find(':', c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos) {
    throw CLI::ValidationError("axis", "expected min:max:count, got " + text);
  }
  axis.min = std::stod(text.substr(0, c1));
  axis.max = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
  axis.samples = std::stoi(text.substr(c2 + 1));
  if (axis.samples < 1) {
    throw CLI::ValidationError("axis", "count must be >= 1");
  }
  return axis;
}

void WriteText(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw CLI::ValidationError("--out", "cannot write " + path);
  out << text;
}

json SolveResultToJson(long index, const SolveResult& r) {
  json j;
  j["index"] = index;
  j["success"] = r.success;
  j["cost"] = r.cost;
  j["T"] = r.params.T;
  j["alpha"] = {r.params.alpha1, r.params.alpha2, r.params.alpha3,
                r.params.alpha4};
  j["stage1_cost"] = r.stage1_cost;
  j["stage1_iterations"] = r.stage1_iterations;
  j["stage2_iterations"] = r.stage2_iterations;
  j["wall_ms"] = 1000.0 * r.wall_time;
  return j;
}

json TrialRecordToJson(const TrialRecord& r) {
  json j;
  j["T_o"] = r.T_o;
  j["T_f"] = r.T_f;
  j["T_rel"] = r.T_rel;
  j["final_pos_err"] = r.final_pos_err;
  j["final_vel_err"] = r.final_vel_err;
  j["mean_solve_ms"] = r.mean_solve_ms;
  j["max_solve_ms"] = r.max_solve_ms;
  j["open_loop_ticks"] = r.open_loop_ticks;
  j["timed_out"] = r.timed_out;
  j["reference_solved"] = r.reference_solved;
  return j;
}

std::vector<Problem> LoadProblems(const std::string& path) {
  return LoadProblemFile(path).problems;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-stage time-optimal control solver and benchmark harness"};
  app.require_subcommand(1);

  Options opts;
  std::string config_path;

  // The config file loads before flag parsing so that flags take precedence.
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--config") {
      config_path = argv[i + 1];
    }
  }
  try {
    if (!config_path.empty()) LoadConfigFile(config_path, &opts);
  } catch (const CLI::Error& e) {
    return app.exit(e);
  }
  app.add_option("--config", config_path,
                 "JSON config file with controller/solver/optimizer/sim "
                 "sections");

  // gen ----------------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "Generate a random problem file");
  SamplerSpec sampler;
  std::string final_vel_mode = "zero";
  gen->add_option("--count", sampler.count, "number of problems")
      ->default_val(1000);
  gen->add_option("--pos-range", sampler.pos_range,
                  "half-width of the start position square (m)");
  gen->add_option("--vel-max", sampler.vel_max, "speed disk radius (m/s)");
  gen->add_option("--u-max", sampler.u_max, "acceleration bound (m/s^2)");
  gen->add_option("--final-vel", final_vel_mode,
                  "final velocity mode: zero | sampled");
  gen->add_option("--seed", opts.seed, "sampler seed");
  gen->add_option("--out", opts.out, "output problem file (JSON)")
      ->required();

  // solve --------------------------------------------------------------
  auto* solve = app.add_subcommand("solve", "Solve problems from a file");
  std::string problems_path;
  long index = -1;
  solve->add_option("--problems", problems_path, "problem file")->required();
  solve->add_option("--index", index, "solve only this problem");
  solve->add_option("--out", opts.out, "output JSON (default stdout)");

  // simulate -----------------------------------------------------------
  auto* simulate =
      app.add_subcommand("simulate", "Run one closed-loop trial");
  std::string mode_name = "tsocs";
  simulate->add_option("--problems", problems_path, "problem file")
      ->required();
  simulate->add_option("--index", index, "problem index")->default_val(0);
  simulate->add_option("--mode", mode_name, "tsocs | baseline | open_loop");
  simulate->add_option("--noise", opts.sim.noise_level, "noise level n");
  simulate->add_option("--rate", opts.sim.rate, "control rate (Hz)");
  simulate->add_option("--seed", opts.sim.seed, "simulation seed");
  simulate->add_option("--beta-min", opts.controller.beta_min,
                       "velocity-error discount floor");
  simulate->add_option("--out", opts.out, "output JSON (default stdout)");

  // ablate ---------------------------------------------------------------
  auto* ablate = app.add_subcommand(
      "ablate", "Per-configuration solver failure rates");
  std::string grid_kind = "paper";
  ablate->add_option("--problems", problems_path, "problem file")->required();
  ablate->add_option("--grid", grid_kind,
                     "paper (5 rows) | full (all 8 combinations)");
  ablate->add_option("--workers", opts.workers, "worker threads");
  ablate->add_option("--out", opts.out, "output CSV (default stdout)");

  // bench ----------------------------------------------------------------
  auto* bench = app.add_subcommand(
      "bench", "Closed-loop benchmark over modes and noise levels");
  std::vector<std::string> bench_modes{"tsocs"};
  std::vector<double> noise_levels{0.0};
  bench->add_option("--problems", problems_path, "problem file")->required();
  bench->add_option("--modes", bench_modes,
                    "trial modes (tsocs baseline open_loop)");
  bench->add_option("--noise", noise_levels, "noise levels to sweep");
  bench->add_option("--rate", opts.sim.rate, "control rate (Hz)");
  bench->add_option("--seed", opts.sim.seed, "simulation seed");
  bench->add_option("--beta-min", opts.controller.beta_min,
                    "velocity-error discount floor");
  bench->add_option("--workers", opts.workers, "worker threads");
  bench->add_option("--out", opts.out,
                    "output prefix; writes <prefix>_trials.csv and "
                    "<prefix>_summary.json")
      ->required();

  // tradeoff ---------------------------------------------------------------
  auto* tradeoff = app.add_subcommand(
      "tradeoff", "beta_min sweep: location vs velocity accuracy");
  std::vector<double> beta_values{0.01, 0.1, 0.5, 1.0};
  tradeoff->add_option("--problems", problems_path, "problem file")
      ->required();
  tradeoff->add_option("--beta-min", beta_values, "beta_min sweep values");
  tradeoff->add_option("--noise", opts.sim.noise_level, "noise level")
      ->default_val(0.05);
  tradeoff->add_option("--rate", opts.sim.rate, "control rate (Hz)");
  tradeoff->add_option("--seed", opts.sim.seed, "simulation seed");
  tradeoff->add_option("--workers", opts.workers, "worker threads");
  tradeoff->add_option("--out", opts.out, "output CSV (default stdout)");

  // landscape ---------------------------------------------------------------
  auto* landscape = app.add_subcommand(
      "landscape", "Boundary-value cost over an (alpha1, alpha4, T) grid");
  std::string a1_spec = "-3:3:41";
  std::string a4_spec = "-3:3:41";
  std::string t_spec = "0.05:8:60";
  LandscapeGrid grid;
  landscape->add_option("--problems", problems_path,
                        "problem file (default: the example problem "
                        "rest -> x=(1,0), v=(-2,4), u=1)");
  landscape->add_option("--index", index, "problem index")->default_val(0);
  landscape->add_option("--alpha1", a1_spec, "alpha1 axis, min:max:count");
  landscape->add_option("--alpha4", a4_spec, "alpha4 axis, min:max:count");
  landscape->add_option("--t", t_spec, "T axis, min:max:count");
  landscape->add_option("--alpha2", grid.alpha2, "fixed alpha2")
      ->default_val(1.0);
  landscape->add_option("--alpha3", grid.alpha3, "fixed alpha3")
      ->default_val(0.0);
  landscape->add_option("--out", opts.out, "output CSV (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      if (final_vel_mode == "zero") {
        sampler.final_vel_mode = SamplerSpec::FinalVelMode::kZero;
      } else if (final_vel_mode == "sampled") {
        sampler.final_vel_mode = SamplerSpec::FinalVelMode::kSampled;
      } else {
        throw std::runtime_error("unknown --final-vel: " + final_vel_mode);
      }
      SaveProblemFile(GenerateProblems(sampler, opts.seed), opts.out);
      std::fprintf(stderr, "wrote %d problems to %s\n", sampler.count,
                   opts.out.c_str());
    } else if (solve->parsed()) {
      const std::vector<Problem> problems = LoadProblems(problems_path);
      json out = json::array();
      for (long i = 0; i < static_cast<long>(problems.size()); ++i) {
        if (index >= 0 && i != index) continue;
        out.push_back(SolveResultToJson(
            i, Solve(problems[static_cast<size_t>(i)],
                     opts.controller.solver)));
      }
      WriteText(opts.out, out.dump(2) + "\n");
    } else if (simulate->parsed()) {
      const std::vector<Problem> problems = LoadProblems(problems_path);
      if (index < 0 || index >= static_cast<long>(problems.size())) {
        throw std::runtime_error("--index out of range");
      }
      const TrialRecord record =
          RunTrial(problems[static_cast<size_t>(index)], opts.controller,
                   opts.sim, TrialModeFromName(mode_name));
      WriteText(opts.out, TrialRecordToJson(record).dump(2) + "\n");
    } else if (ablate->parsed()) {
      const std::vector<Problem> problems = LoadProblems(problems_path);
      const std::vector<AblationRow> grid_rows =
          grid_kind == "full" ? FullAblationGrid() : AblationGrid();
      const std::vector<AblationRow> rows = RunAblation(
          problems, opts.controller.solver, grid_rows, opts.workers);
      WriteText(opts.out, AblationCsv(rows));
    } else if (bench->parsed()) {
      const std::vector<Problem> problems = LoadProblems(problems_path);
      std::vector<TrialRow> all_rows;
      std::vector<BenchSummary> summaries;
      for (const std::string& mode : bench_modes) {
        for (const double noise : noise_levels) {
          SimConfig sim = opts.sim;
          sim.noise_level = noise;
          const std::vector<TrialRow> rows =
              RunTrials(problems, opts.controller, sim,
                        TrialModeFromName(mode), opts.workers);
          summaries.push_back(
              Summarize(rows, mode, noise, 10000, opts.sim.seed));
          all_rows.insert(all_rows.end(), rows.begin(), rows.end());
        }
      }
      WriteTrialCsv(all_rows, opts.out + "_trials.csv");
      WriteText(opts.out + "_summary.json", SummaryJson(summaries) + "\n");
      std::fprintf(stderr, "wrote %s_trials.csv and %s_summary.json\n",
                   opts.out.c_str(), opts.out.c_str());
    } else if (tradeoff->parsed()) {
      const std::vector<Problem> problems = LoadProblems(problems_path);
      const std::vector<TradeoffRow> rows =
          RunTradeoff(problems, opts.controller, opts.sim, beta_values,
                      opts.workers);
      WriteText(opts.out, TradeoffCsv(rows));
    } else if (landscape->parsed()) {
      Problem problem;
      if (!problems_path.empty()) {
        const std::vector<Problem> problems = LoadProblems(problems_path);
        if (index < 0 || index >= static_cast<long>(problems.size())) {
          throw std::runtime_error("--index out of range");
        }
        problem = problems[static_cast<size_t>(index)];
      } else {
        problem.goal.pos = {1, 0};
        problem.goal.vel = {-2, 4};
      }
      grid.alpha1 = ParseAxis(a1_spec);
      grid.alpha4 = ParseAxis(a4_spec);
      grid.t = ParseAxis(t_spec);
      WriteText(opts.out, LandscapeCsv(EvalLandscape(problem, grid)));
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
