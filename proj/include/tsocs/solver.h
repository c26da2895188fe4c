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

#ifndef TSOCS_SOLVER_H_
#define TSOCS_SOLVER_H_

#include "tsocs/optimizer.h"
#include "tsocs/trajectory.h"
#include "tsocs/types.h"

namespace tsocs {

struct SolverConfig {
  // A solve succeeds when the boundary-value cost falls below this.
  double success_cost_threshold = 1e-5;
  OptimizerConfig optimizer;
  // Ablation switches. With use_t_max off, stage 1 fixes T = 1; with
  // use_initial_guess off, the alphas start from (1, 2, 3, 4); with
  // use_stage1 off, stage 2 runs directly from the initial parameters.
  bool use_t_max = true;
  bool use_initial_guess = true;
  bool use_stage1 = true;
  // When a solve fails, rerun the pipeline with the stage-1 horizon scaled
  // up, this many times at most. Recovers starts whose horizon undershoots
  // the optimum, where stage 2 collapses into the local minimum at T = 0.
  int max_horizon_retries = 1;
};

struct SolveResult {
  ControlParams params;
  double cost = 0.0;  // final boundary-value cost
  bool success = false;
  double stage1_cost = 0.0;
  int stage1_iterations = 0;
  int stage2_iterations = 0;
  double wall_time = 0.0;  // s
};

// Stage 1: hold T fixed (at the analytic upper bound by default) and fit the
// four alphas to the boundary conditions. Returns best-effort parameters even
// when the residual cost stays large. A non-negative fixed_time overrides the
// horizon chosen by the config (used by the retry ladder in Solve).
ControlParams Stage1(const Problem& problem, const SolverConfig& config,
                     int* iterations = nullptr, double fixed_time = -1.0);

// Stage 2: refine all five parameters (alphas and T, with T >= 0) from the
// given initial set. Failure is encoded in SolveResult::success.
SolveResult Stage2(const Problem& problem, const ControlParams& init,
                   const SolverConfig& config);

// The full two-stage solve.
SolveResult Solve(const Problem& problem, const SolverConfig& config = {});

// Initial parameters for stage 2 when stage 1 is disabled, honoring the
// ablation switches. Exposed for the benchmark harness.
ControlParams AblationStartParams(const Problem& problem,
                                  const SolverConfig& config);

// Rescales the alphas to unit-ish magnitude (the trajectory is invariant
// under positive rescaling); improves optimizer conditioning.
ControlParams NormalizeAlphas(const ControlParams& params);

}  // namespace tsocs

#endif  // TSOCS_SOLVER_H_
