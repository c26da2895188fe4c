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

#ifndef TSOCS_BENCH_H_
#define TSOCS_BENCH_H_

#include <string>
#include <vector>

#include "tsocs/controller.h"
#include "tsocs/problem_set.h"
#include "tsocs/simulator.h"
#include "tsocs/solver.h"

namespace tsocs {

inline constexpr int kResultsSchemaVersion = 1;

// ---------------------------------------------------------------------------
// Solver ablation

struct AblationRow {
  std::string name;
  bool use_t_max = true;
  bool use_initial_guess = true;
  bool use_stage1 = true;
  long failures = 0;
  long count = 0;
  double failure_rate = 0.0;
};

// The five configurations reported in the ablation study, ordered from worst
// to best expected failure rate.
std::vector<AblationRow> AblationGrid();

// All eight switch combinations.
std::vector<AblationRow> FullAblationGrid();

// One solver invocation per problem per configuration. Failures are counted,
// never thrown.
std::vector<AblationRow> RunAblation(const std::vector<Problem>& problems,
                                     const SolverConfig& base_config,
                                     const std::vector<AblationRow>& grid,
                                     int workers = 1);

// ---------------------------------------------------------------------------
// Closed-loop benchmark

struct TrialRow {
  long index = 0;
  TrialMode mode = TrialMode::kTsocs;
  double noise = 0.0;
  TrialRecord record;
};

// Runs one trial per problem with per-trial RNG streams derived from
// (seed, problem index). Deterministic for a given seed regardless of the
// worker count.
std::vector<TrialRow> RunTrials(const std::vector<Problem>& problems,
                                const ControllerConfig& controller_config,
                                const SimConfig& sim_config, TrialMode mode,
                                int workers = 1);

struct MedianCI {
  double median = 0.0;
  double lo = 0.0;
  double hi = 0.0;
};

// Median with a seeded bootstrap 95% confidence interval.
MedianCI BootstrapMedianCI(const std::vector<double>& values, int resamples,
                           uint64_t seed);

struct BenchSummary {
  std::string mode;
  double noise = 0.0;
  long trials = 0;
  long unsolved = 0;   // excluded: reference solve failed
  long timed_out = 0;
  MedianCI t_rel;
  double median_pos_err = 0.0;
  double median_vel_err = 0.0;
  double p90_pos_err = 0.0;
  double p90_vel_err = 0.0;
  double mean_solve_ms = 0.0;
  double max_solve_ms = 0.0;
};

BenchSummary Summarize(const std::vector<TrialRow>& rows,
                       const std::string& mode_name, double noise,
                       int bootstrap_resamples, uint64_t bootstrap_seed);

// ---------------------------------------------------------------------------
// Serialization

std::string TrialModeName(TrialMode mode);
TrialMode TrialModeFromName(const std::string& name);

// CSV with a header row; doubles are printed with enough digits to round-trip
// exactly.
void WriteTrialCsv(const std::vector<TrialRow>& rows, const std::string& path);
std::vector<TrialRow> ReadTrialCsv(const std::string& path);

std::string AblationCsv(const std::vector<AblationRow>& rows);
std::string SummaryJson(const std::vector<BenchSummary>& summaries);

// Quantile of a sample by linear interpolation; q in [0, 1].
double Quantile(std::vector<double> values, double q);

// ---------------------------------------------------------------------------
// beta_min tradeoff sweep

struct TradeoffRow {
  double beta_min = 0.0;
  double median_pos_err = 0.0;
  double median_vel_err = 0.0;
  long trials = 0;
};

std::vector<TradeoffRow> RunTradeoff(const std::vector<Problem>& problems,
                                     const ControllerConfig& controller_config,
                                     const SimConfig& sim_config,
                                     const std::vector<double>& beta_values,
                                     int workers = 1);

std::string TradeoffCsv(const std::vector<TradeoffRow>& rows);

}  // namespace tsocs

#endif  // TSOCS_BENCH_H_
