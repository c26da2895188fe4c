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

#ifndef TSOCS_TRAJECTORY_H_
#define TSOCS_TRAJECTORY_H_

#include "tsocs/types.h"

namespace tsocs {

// Squared boundary misses of a candidate trajectory, plus the optional time
// penalty used by the closed-loop refinement cost.
struct CostTerms {
  double pos_err_sq = 0.0;    // m^2
  double vel_err_sq = 0.0;    // m^2/s^2, unweighted
  double time_penalty = 0.0;  // dimensionless
  // For the boundary-value cost: pos_err_sq + vel_err_sq.
  // For the iterative cost: pos_err_sq + beta * vel_err_sq + time_penalty.
  double total = 0.0;
};

// Constants of the time-regularized refinement cost
//   pos_err_sq + beta * vel_err_sq + k1 * exp(k2 * (T / T_e - tau)),
//   beta = max(1 - |Vf - Vi| / (u_max * T_e), beta_min).
struct IterativeCostConfig {
  double tau = 1.4;
  double k1 = 1.0;
  double k2 = 10.0;
  double beta_min = 0.01;
};

// Adjoint point (psi3, psi4) at time t.
Vec2 EvalAdjoint(const ControlParams& params, double t);

// Optimal acceleration at time t: u_max * psi / |psi|. The magnitude is
// always exactly u_max. Throws SingularAdjoint when the adjoint line is at
// the origin at t.
Vec2 EvalControl(const ControlParams& params, double u_max, double t);

// Closed-form state at time t >= 0 under the optimal control, starting from
// `initial` at t = 0. Throws DegenerateParams when all four alphas vanish.
//
// Handles the two singular families explicitly: slope Q ~ 0 falls back to a
// constant control direction, and an adjoint line through the origin
// (intercept anti-parallel to slope) falls back to the exact two-phase
// piecewise-constant control split at the crossing time.
State EvalState(const ControlParams& params, const State& initial,
                double u_max, double t);

// EvalState plus a flag marking whether one of the singular fallback branches
// was used instead of the general log closed form.
struct StateEval {
  State state;
  bool singular = false;
};
StateEval EvalStateEx(const ControlParams& params, const State& initial,
                      double u_max, double t);

// Analytic upper bound on the optimal time: brake to rest, translate to the
// point from which the goal state is directly reachable from rest, then
// accelerate straight to the goal. Equals the duration of the three-segment
// baseline schedule.
double TimeUpperBound(const Problem& problem);

// Time-optimal 1D double-integrator profile from (0, v0) to (displacement,
// vf): acceleration initial_sign * u_max on [0, switch_time), then
// -initial_sign * u_max on [switch_time, total_time].
struct BangBang1D {
  double switch_time = 0.0;
  double total_time = 0.0;
  int initial_sign = 1;
};
BangBang1D SolveBangBang1D(double displacement, double v0, double vf,
                           double u_max);

// Initial parameter guess: project the boundary velocities onto the start-to-
// goal displacement, solve the resulting 1D problem, and encode its bang-bang
// profile as an adjoint line crossing the origin at the switch time. The line
// is rotated kGuessPerturbRadians off exact colinearity so the optimizer
// starts outside the singular family.
ControlParams InitialGuess(const Problem& problem);

inline constexpr double kGuessPerturbRadians = 1e-3;

// Boundary-value cost: |Xf - X(T)|^2 + |Vf - V(T)|^2.
CostTerms BoundaryValueCost(const ControlParams& params,
                            const Problem& problem);

// Time-regularized cost used by the closed-loop controller. t_expected is the
// expected remaining time from the previous iteration; the initial velocity
// entering beta is problem.initial.vel.
CostTerms IterativeCost(const ControlParams& params, const Problem& problem,
                        double t_expected, const IterativeCostConfig& cfg);

// Velocity-error discount of the iterative cost, clamped to [beta_min, 1].
double IterativeCostBeta(const Problem& problem, double t_expected,
                         const IterativeCostConfig& cfg);

}  // namespace tsocs

#endif  // TSOCS_TRAJECTORY_H_
