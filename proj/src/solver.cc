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

#include "tsocs/solver.h"

#include <chrono>
#include <cmath>
#include <limits>

namespace tsocs {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Boundary-value residuals (position miss, velocity miss) at time T.
bool BoundaryResiduals(const Problem& problem, const ControlParams& params,
                       Eigen::VectorXd* residuals) {
  try {
    const State end =
        EvalState(params, problem.initial, problem.u_max, params.T);
    residuals->resize(4);
    (*residuals)[0] = end.pos.x() - problem.goal.pos.x();
    (*residuals)[1] = end.pos.y() - problem.goal.pos.y();
    (*residuals)[2] = end.vel.x() - problem.goal.vel.x();
    (*residuals)[3] = end.vel.y() - problem.goal.vel.y();
    return residuals->allFinite();
  } catch (const DegenerateParams&) {
    return false;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

ControlParams ParamsFromVector(const Eigen::VectorXd& v, double t_fixed) {
  ControlParams p;
  p.alpha1 = v[0];
  p.alpha2 = v[1];
  p.alpha3 = v[2];
  p.alpha4 = v[3];
  p.T = v.size() > 4 ? v[4] : t_fixed;
  return p;
}

}  // namespace

ControlParams NormalizeAlphas(const ControlParams& params) {
  const double scale = std::sqrt(
      params.alpha1 * params.alpha1 + params.alpha2 * params.alpha2 +
      params.alpha3 * params.alpha3 + params.alpha4 * params.alpha4);
  if (scale <= 0.0 || !std::isfinite(scale)) return params;
  ControlParams out = params;
  out.alpha1 /= scale;
  out.alpha2 /= scale;
  out.alpha3 /= scale;
  out.alpha4 /= scale;
  return out;
}

ControlParams AblationStartParams(const Problem& problem,
                                  const SolverConfig& config) {
  ControlParams start;
  if (config.use_initial_guess) {
    start = InitialGuess(problem);
  } else {
    start.alpha1 = 1.0;
    start.alpha2 = 2.0;
    start.alpha3 = 3.0;
    start.alpha4 = 4.0;
  }
  start.T = config.use_t_max ? TimeUpperBound(problem) : 1.0;
  return start;
}

ControlParams Stage1(const Problem& problem, const SolverConfig& config,
                     int* iterations, double fixed_time) {
  const ControlParams start =
      NormalizeAlphas(AblationStartParams(problem, config));
  const double t_fixed = fixed_time >= 0.0 ? fixed_time : start.T;

  const auto residual_fn = [&](const Eigen::VectorXd& v,
                               Eigen::VectorXd* r) {
    return BoundaryResiduals(problem, ParamsFromVector(v, t_fixed), r);
  };

  Eigen::VectorXd initial(4);
  initial << start.alpha1, start.alpha2, start.alpha3, start.alpha4;
  const Eigen::VectorXd lower = Eigen::VectorXd::Constant(4, -kInf);

  const OptimizerReport report =
      Minimize(residual_fn, initial, lower, config.optimizer);
  if (iterations != nullptr) *iterations = report.iterations;
  return ParamsFromVector(report.final_params, t_fixed);
}

SolveResult Stage2(const Problem& problem, const ControlParams& init,
                   const SolverConfig& config) {
  const ControlParams start = NormalizeAlphas(init);

  const auto residual_fn = [&](const Eigen::VectorXd& v,
                               Eigen::VectorXd* r) {
    return BoundaryResiduals(problem, ParamsFromVector(v, 0.0), r);
  };

  Eigen::VectorXd initial(5);
  initial << start.alpha1, start.alpha2, start.alpha3, start.alpha4,
      std::max(start.T, 0.0);
  Eigen::VectorXd lower = Eigen::VectorXd::Constant(5, -kInf);
  lower[4] = 0.0;  // forward time only

  const OptimizerReport report =
      Minimize(residual_fn, initial, lower, config.optimizer);

  SolveResult result;
  result.params = ParamsFromVector(report.final_params, 0.0);
  result.cost = 2.0 * report.final_cost;  // optimizer cost is 0.5 |r|^2
  result.stage2_iterations = report.iterations;
  result.success = result.cost < config.success_cost_threshold;
  if (result.params.T <= 1e-9 &&
      result.cost >= config.success_cost_threshold) {
    result.success = false;
  }
  return result;
}

namespace {

// Horizon growth per failed attempt. Large enough to climb out of the T = 0
// basin within one retry on meter-scale problems, small enough that the
// retried stage 1 still shapes a meaningful fit.
constexpr double kHorizonGrowthFactor = 1.7;

// Higher rank wins; ties keep the earlier attempt. Successful solves within
// the analytic time bound beat late (anomalous) successes, which beat
// failures.
int AttemptRank(const SolveResult& result, double t_upper) {
  if (result.success && result.params.T <= t_upper + 1e-6) return 2;
  if (result.success) return 1;
  return 0;
}

}  // namespace

SolveResult Solve(const Problem& problem, const SolverConfig& config) {
  const auto t_start = std::chrono::steady_clock::now();

  const double t_upper = TimeUpperBound(problem);
  const double t_base = config.use_t_max ? t_upper : 1.0;

  SolveResult best;
  bool have_best = false;
  double stage1_cost = std::numeric_limits<double>::infinity();
  int stage1_iterations = 0;
  int stage2_iterations = 0;

  const int retries = std::max(config.max_horizon_retries, 0);
  for (int attempt = 0; attempt <= retries; ++attempt) {
    const double horizon = t_base * std::pow(kHorizonGrowthFactor, attempt);
    ControlParams stage2_init;
    if (config.use_stage1) {
      int iterations = 0;
      stage2_init = Stage1(problem, config, &iterations, horizon);
      stage1_iterations += iterations;
    } else {
      stage2_init = AblationStartParams(problem, config);
      stage2_init.T = horizon;
    }
    if (attempt == 0) {
      try {
        stage1_cost = BoundaryValueCost(stage2_init, problem).total;
      } catch (const DegenerateParams&) {
      }
    }

    SolveResult result = Stage2(problem, stage2_init, config);
    stage2_iterations += result.stage2_iterations;
    if (!have_best || AttemptRank(result, t_upper) > AttemptRank(best, t_upper) ||
        (AttemptRank(result, t_upper) == AttemptRank(best, t_upper) &&
         result.cost < best.cost)) {
      best = result;
      have_best = true;
    }
    if (AttemptRank(best, t_upper) == 2) break;
  }

  best.stage1_cost = stage1_cost;
  best.stage1_iterations = stage1_iterations;
  best.stage2_iterations = stage2_iterations;

  const auto t_end = std::chrono::steady_clock::now();
  best.wall_time = std::chrono::duration<double>(t_end - t_start).count();
  return best;
}

}  // namespace tsocs
