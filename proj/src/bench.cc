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

#include "tsocs/bench.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "tsocs/rng.h"

namespace tsocs {
namespace {

using nlohmann::json;

// Runs fn(i) for i in [0, count) across the given number of threads.
void ParallelFor(long count, int workers,
                 const std::function<void(long)>& fn) {
  workers = std::max(workers, 1);
  if (workers == 1 || count < 2) {
    for (long i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<long> next{0};
  auto worker = [&]() {
    while (true) {
      const long i = next.fetch_add(1);
      if (i >= count) return;
      fn(i);
    }
  };
  std::vector<std::thread> threads;
  const int n_threads = static_cast<int>(
      std::min<long>(workers, count));
  threads.reserve(static_cast<size_t>(n_threads));
  for (int t = 0; t < n_threads; ++t) threads.emplace_back(worker);
  for (std::thread& t : threads) t.join();
}

std::string FormatDouble(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double ParseDouble(const std::string& s) {
  try {
    return std::stod(s);
  } catch (const std::exception&) {
    throw std::runtime_error("bad numeric field: " + s);
  }
}

constexpr char kTrialCsvHeader[] =
    "index,mode,noise,T_o,T_f,T_rel,final_pos_err,final_vel_err,"
    "mean_solve_ms,max_solve_ms,open_loop_ticks,timed_out,reference_solved";

}  // namespace

std::vector<AblationRow> AblationGrid() {
  return {
      {"no_t_max_no_guess_no_stage1", false, false, false},
      {"t_max_no_guess_no_stage1", true, false, false},
      {"no_t_max_no_guess_stage1", false, false, true},
      {"t_max_guess_no_stage1", true, true, false},
      {"t_max_guess_stage1", true, true, true},
  };
}

std::vector<AblationRow> FullAblationGrid() {
  std::vector<AblationRow> rows;
  for (const bool t_max : {false, true}) {
    for (const bool guess : {false, true}) {
      for (const bool stage1 : {false, true}) {
        AblationRow row;
        row.name = std::string(t_max ? "t_max" : "no_t_max") +
                   (guess ? "_guess" : "_no_guess") +
                   (stage1 ? "_stage1" : "_no_stage1");
        row.use_t_max = t_max;
        row.use_initial_guess = guess;
        row.use_stage1 = stage1;
        rows.push_back(row);
      }
    }
  }
  return rows;
}

std::vector<AblationRow> RunAblation(const std::vector<Problem>& problems,
                                     const SolverConfig& base_config,
                                     const std::vector<AblationRow>& grid,
                                     int workers) {
  std::vector<AblationRow> rows = grid;
  for (AblationRow& row : rows) {
    SolverConfig config = base_config;
    config.use_t_max = row.use_t_max;
    config.use_initial_guess = row.use_initial_guess;
    config.use_stage1 = row.use_stage1;

    std::vector<uint8_t> failed(problems.size(), 0);
    ParallelFor(static_cast<long>(problems.size()), workers, [&](long i) {
      const SolveResult result =
          Solve(problems[static_cast<size_t>(i)], config);
      failed[static_cast<size_t>(i)] = result.success ? 0 : 1;
    });
    row.count = static_cast<long>(problems.size());
    row.failures = 0;
    for (const uint8_t f : failed) row.failures += f;
    row.failure_rate =
        row.count > 0 ? static_cast<double>(row.failures) /
                            static_cast<double>(row.count)
                      : 0.0;
  }
  return rows;
}

std::vector<TrialRow> RunTrials(const std::vector<Problem>& problems,
                                const ControllerConfig& controller_config,
                                const SimConfig& sim_config, TrialMode mode,
                                int workers) {
  std::vector<TrialRow> rows(problems.size());
  ParallelFor(static_cast<long>(problems.size()), workers, [&](long i) {
    SimConfig per_trial = sim_config;
    // Independent stream per trial so results do not depend on scheduling.
    Rng derive = Rng::Derive(sim_config.seed, static_cast<uint64_t>(i));
    per_trial.seed = derive.NextU64();
    TrialRow& row = rows[static_cast<size_t>(i)];
    row.index = i;
    row.mode = mode;
    row.noise = sim_config.noise_level;
    row.record = RunTrial(problems[static_cast<size_t>(i)], controller_config,
                          per_trial, mode);
  });
  return rows;
}

MedianCI BootstrapMedianCI(const std::vector<double>& values, int resamples,
                           uint64_t seed) {
  MedianCI out;
  if (values.empty()) return out;
  out.median = Quantile(values, 0.5);
  if (values.size() == 1) {
    out.lo = out.hi = out.median;
    return out;
  }
  Rng rng(seed);
  std::vector<double> medians(static_cast<size_t>(resamples));
  std::vector<double> sample(values.size());
  for (int r = 0; r < resamples; ++r) {
    for (size_t i = 0; i < values.size(); ++i) {
      const size_t pick =
          static_cast<size_t>(rng.NextU64() % values.size());
      sample[i] = values[pick];
    }
    medians[static_cast<size_t>(r)] = Quantile(sample, 0.5);
  }
  out.lo = Quantile(medians, 0.025);
  out.hi = Quantile(medians, 0.975);
  return out;
}

double Quantile(std::vector<double> values, double q) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const double idx = q * static_cast<double>(values.size() - 1);
  const size_t lo = static_cast<size_t>(std::floor(idx));
  const size_t hi = static_cast<size_t>(std::ceil(idx));
  const double frac = idx - static_cast<double>(lo);
  return values[lo] * (1.0 - frac) + values[hi] * frac;
}

BenchSummary Summarize(const std::vector<TrialRow>& rows,
                       const std::string& mode_name, double noise,
                       int bootstrap_resamples, uint64_t bootstrap_seed) {
  BenchSummary s;
  s.mode = mode_name;
  s.noise = noise;
  std::vector<double> t_rel, pos_err, vel_err;
  double solve_ms_sum = 0.0;
  long solved = 0;
  for (const TrialRow& row : rows) {
    if (!row.record.reference_solved) {
      ++s.unsolved;
      continue;
    }
    ++solved;
    if (row.record.timed_out) ++s.timed_out;
    t_rel.push_back(row.record.T_rel);
    pos_err.push_back(row.record.final_pos_err);
    vel_err.push_back(row.record.final_vel_err);
    solve_ms_sum += row.record.mean_solve_ms;
    s.max_solve_ms = std::max(s.max_solve_ms, row.record.max_solve_ms);
  }
  s.trials = solved;
  if (solved > 0) {
    s.t_rel = BootstrapMedianCI(t_rel, bootstrap_resamples, bootstrap_seed);
    s.median_pos_err = Quantile(pos_err, 0.5);
    s.median_vel_err = Quantile(vel_err, 0.5);
    s.p90_pos_err = Quantile(pos_err, 0.9);
    s.p90_vel_err = Quantile(vel_err, 0.9);
    s.mean_solve_ms = solve_ms_sum / static_cast<double>(solved);
  }
  return s;
}

std::string TrialModeName(TrialMode mode) {
  switch (mode) {
    case TrialMode::kTsocs:
      return "tsocs";
    case TrialMode::kBaseline:
      return "baseline";
    case TrialMode::kOpenLoop:
      return "open_loop";
  }
  return "tsocs";
}

TrialMode TrialModeFromName(const std::string& name) {
  if (name == "tsocs") return TrialMode::kTsocs;
  if (name == "baseline") return TrialMode::kBaseline;
  if (name == "open_loop") return TrialMode::kOpenLoop;
  throw std::runtime_error("unknown trial mode: " + name);
}

void WriteTrialCsv(const std::vector<TrialRow>& rows,
                   const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << kTrialCsvHeader << "\n";
  for (const TrialRow& row : rows) {
    const TrialRecord& r = row.record;
    out << row.index << ',' << TrialModeName(row.mode) << ','
        << FormatDouble(row.noise) << ',' << FormatDouble(r.T_o) << ','
        << FormatDouble(r.T_f) << ',' << FormatDouble(r.T_rel) << ','
        << FormatDouble(r.final_pos_err) << ','
        << FormatDouble(r.final_vel_err) << ','
        << FormatDouble(r.mean_solve_ms) << ','
        << FormatDouble(r.max_solve_ms) << ',' << r.open_loop_ticks << ','
        << (r.timed_out ? 1 : 0) << ',' << (r.reference_solved ? 1 : 0)
        << "\n";
  }
}

std::vector<TrialRow> ReadTrialCsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("empty trial csv: " + path);
  }
  if (line != kTrialCsvHeader) {
    throw std::runtime_error("unexpected trial csv header in " + path);
  }
  std::vector<TrialRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> f = SplitCsvLine(line);
    if (f.size() != 13) {
      throw std::runtime_error("bad trial csv row: " + line);
    }
    TrialRow row;
    row.index = std::stol(f[0]);
    row.mode = TrialModeFromName(f[1]);
    row.noise = ParseDouble(f[2]);
    row.record.T_o = ParseDouble(f[3]);
    row.record.T_f = ParseDouble(f[4]);
    row.record.T_rel = ParseDouble(f[5]);
    row.record.final_pos_err = ParseDouble(f[6]);
    row.record.final_vel_err = ParseDouble(f[7]);
    row.record.mean_solve_ms = ParseDouble(f[8]);
    row.record.max_solve_ms = ParseDouble(f[9]);
    row.record.open_loop_ticks = std::stol(f[10]);
    row.record.timed_out = f[11] == "1";
    row.record.reference_solved = f[12] == "1";
    rows.push_back(row);
  }
  return rows;
}

std::string AblationCsv(const std::vector<AblationRow>& rows) {
  std::ostringstream out;
  out << "config,use_t_max,use_initial_guess,use_stage1,failures,count,"
         "failure_rate\n";
  for (const AblationRow& row : rows) {
    out << row.name << ',' << (row.use_t_max ? 1 : 0) << ','
        << (row.use_initial_guess ? 1 : 0) << ',' << (row.use_stage1 ? 1 : 0)
        << ',' << row.failures << ',' << row.count << ','
        << FormatDouble(row.failure_rate) << "\n";
  }
  return out.str();
}

std::string SummaryJson(const std::vector<BenchSummary>& summaries) {
  json j;
  j["schema_version"] = kResultsSchemaVersion;
  j["ci_method"] = "bootstrap";
  json list = json::array();
  for (const BenchSummary& s : summaries) {
    json item;
    item["mode"] = s.mode;
    item["noise"] = s.noise;
    item["trials"] = s.trials;
    item["unsolved"] = s.unsolved;
    item["timed_out"] = s.timed_out;
    item["median_t_rel"] = s.t_rel.median;
    item["t_rel_ci95"] = json::array({s.t_rel.lo, s.t_rel.hi});
    item["median_pos_err"] = s.median_pos_err;
    item["median_vel_err"] = s.median_vel_err;
    item["p90_pos_err"] = s.p90_pos_err;
    item["p90_vel_err"] = s.p90_vel_err;
    item["mean_solve_ms"] = s.mean_solve_ms;
    item["max_solve_ms"] = s.max_solve_ms;
    list.push_back(item);
  }
  j["summaries"] = list;
  return j.dump(2);
}

std::vector<TradeoffRow> RunTradeoff(const std::vector<Problem>& problems,
                                     const ControllerConfig& controller_config,
                                     const SimConfig& sim_config,
                                     const std::vector<double>& beta_values,
                                     int workers) {
  std::vector<TradeoffRow> rows;
  rows.reserve(beta_values.size());
  for (const double beta_min : beta_values) {
    ControllerConfig cfg = controller_config;
    cfg.beta_min = beta_min;
    const std::vector<TrialRow> trials =
        RunTrials(problems, cfg, sim_config, TrialMode::kTsocs, workers);
    std::vector<double> pos_err, vel_err;
    for (const TrialRow& t : trials) {
      if (!t.record.reference_solved) continue;
      pos_err.push_back(t.record.final_pos_err);
      vel_err.push_back(t.record.final_vel_err);
    }
    TradeoffRow row;
    row.beta_min = beta_min;
    row.trials = static_cast<long>(pos_err.size());
    row.median_pos_err = Quantile(pos_err, 0.5);
    row.median_vel_err = Quantile(vel_err, 0.5);
    rows.push_back(row);
  }
  return rows;
}

std::string TradeoffCsv(const std::vector<TradeoffRow>& rows) {
  std::ostringstream out;
  out << "beta_min,median_final_pos_err,median_final_vel_err,trials\n";
  for (const TradeoffRow& row : rows) {
    out << FormatDouble(row.beta_min) << ','
        << FormatDouble(row.median_pos_err) << ','
        << FormatDouble(row.median_vel_err) << ',' << row.trials << "\n";
  }
  return out.str();
}

}  // namespace tsocs
