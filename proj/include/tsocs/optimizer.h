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

#ifndef TSOCS_OPTIMIZER_H_
#define TSOCS_OPTIMIZER_H_

#include <functional>

#include <Eigen/Core>

namespace tsocs {

struct OptimizerConfig {
  int max_iterations = 200;
  // Converged when an accepted step decreases the cost by less than this
  // fraction of the current cost.
  double cost_tolerance = 1e-10;
  // Converged when the max-norm of the gradient J^T r falls below this.
  double gradient_tolerance = 1e-12;
  // Converged when an accepted step is shorter than
  // step_tolerance * (|params| + step_tolerance).
  double step_tolerance = 1e-14;
  // Relative central-difference step for the Jacobian (absolute floor 1e-8).
  double fd_step = 1e-6;
  double initial_damping = 1e-3;
};

enum class OptimizerStatus {
  kConverged,
  kMaxIterations,
  kStalled,
  kEvaluationError,
};

struct OptimizerReport {
  Eigen::VectorXd final_params;
  double final_cost = 0.0;  // 0.5 * |r|^2
  int iterations = 0;
  OptimizerStatus status = OptimizerStatus::kStalled;
};

// Residual callback: fill `residuals` for `params`, return false if the point
// is not evaluable. The residual dimension must not change between calls.
using ResidualFn =
    std::function<bool(const Eigen::VectorXd& params,
                       Eigen::VectorXd* residuals)>;

// Damped least-squares minimization of 0.5 * |r(p)|^2 over a small dense
// parameter vector. The Jacobian comes from central finite differences;
// damping is multiplicative (x10 on a rejected step, /10 on an accepted one);
// lower bounds are enforced by projection. Entries of `lower_bounds` may be
// -infinity for unconstrained parameters.
OptimizerReport Minimize(const ResidualFn& residuals,
                         const Eigen::VectorXd& initial,
                         const Eigen::VectorXd& lower_bounds,
                         const OptimizerConfig& config);

}  // namespace tsocs

#endif  // TSOCS_OPTIMIZER_H_
