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

#ifndef TSOCS_CONTROLLER_H_
#define TSOCS_CONTROLLER_H_

#include <functional>

#include "tsocs/solver.h"
#include "tsocs/trajectory.h"
#include "tsocs/types.h"

namespace tsocs {

struct ControllerConfig {
  double dt = 1.0 / 60.0;  // control period, s
  double tau = 1.4;
  double k1 = 1.0;
  double k2 = 10.0;
  double beta_min = 0.01;
  double eps_x = 0.02;       // m
  double eps_v = 0.02;       // m/s
  double eps_cost = 1e-5;    // accepted boundary miss per tick
  SolverConfig solver;       // settings for the per-tick solves

  IterativeCostConfig CostConfig() const {
    return IterativeCostConfig{tau, k1, k2, beta_min};
  }
};

struct ControllerState {
  ControlParams params;
  // Expected remaining time, decayed by dt each tick and reset to the
  // accepted T on successful re-solves. Floored at dt while active.
  double t_expected = 0.0;
  ControlParams last_good_params;
  bool open_loop = false;
};

struct TickDiagnostics {
  double solve_ms = 0.0;
  bool used_full_resolve = false;
  bool open_loop = false;
  // Boundary miss (position + discounted velocity) of the adopted params.
  double accepted_cost = 0.0;
  double t_over_t_expected = 0.0;
};

struct TickResult {
  Vec2 command = Vec2::Zero();
  ControllerState state;
  TickDiagnostics diag;
};

// One closed-loop trial outcome.
struct TrialRecord {
  double T_f = 0.0;       // executed time, s
  double T_o = 0.0;       // optimal reference time, s
  double T_rel = 0.0;     // (T_f - T_o) / T_o when T_o > 0
  double final_pos_err = 0.0;   // m
  double final_vel_err = 0.0;   // m/s
  double mean_solve_ms = 0.0;
  double max_solve_ms = 0.0;
  long open_loop_ticks = 0;
  bool timed_out = false;
  // False when the reference solve failed and the trial was excluded.
  bool reference_solved = true;
};

// Advances the adjoint intercept along the line by dt and shortens the
// horizon: alpha3 += alpha1 dt, alpha4 += alpha2 dt, T -= dt. For noise-free
// dynamics the shifted set reproduces the original trajectory offset by dt.
ControlParams ShiftParams(const ControlParams& params, double dt);

// One control period: shift the previous parameters, refine them against the
// observed state with the time-regularized cost, fall back to a full
// two-stage re-solve, and finally to open-loop execution of the last good
// set. Returns the commanded acceleration (evaluated at t = 0 of the adopted
// parameters) and the updated controller state.
TickResult ControllerTick(const ControllerState& state, const State& observed,
                          const Problem& problem,
                          const ControllerConfig& config);

// Plant callback: advance the true state by one control period under the
// commanded acceleration.
using PlantFn = std::function<State(const State& state, const Vec2& command)>;

// Runs the full closed loop: initial two-stage solve, then ControllerTick
// against the plant until the goal is reached within (eps_x, eps_v), the
// horizon runs out, or the simulated-time cap is hit. A negative
// max_sim_seconds means 10x the analytic time upper bound.
TrialRecord RunController(const Problem& problem,
                          const ControllerConfig& config, const PlantFn& plant,
                          double max_sim_seconds = -1.0);

}  // namespace tsocs

#endif  // TSOCS_CONTROLLER_H_
