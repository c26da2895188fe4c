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

#include "tsocs/optimizer.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Cholesky>

namespace tsocs {
namespace {

constexpr double kFdStepFloor = 1e-8;
constexpr double kMinDamping = 1e-12;
constexpr double kMaxDamping = 1e12;

Eigen::VectorXd Project(const Eigen::VectorXd& p,
                        const Eigen::VectorXd& lower) {
  return p.cwiseMax(lower);
}

// Central-difference Jacobian. Falls back to a one-sided difference when the
// opposite point violates a bound or fails to evaluate; a column is zeroed if
// neither side is evaluable.
bool NumericJacobian(const ResidualFn& residuals, const Eigen::VectorXd& p,
                     const Eigen::VectorXd& r0,
                     const Eigen::VectorXd& lower, double fd_step,
                     Eigen::MatrixXd* jac) {
  const int n = static_cast<int>(p.size());
  const int m = static_cast<int>(r0.size());
  jac->resize(m, n);
  Eigen::VectorXd r_plus(m), r_minus(m);
  for (int i = 0; i < n; ++i) {
    const double h = std::max(fd_step * std::fabs(p[i]), kFdStepFloor);
    Eigen::VectorXd pp = p;
    Eigen::VectorXd pm = p;
    pp[i] += h;
    pm[i] -= h;
    const bool minus_in_bounds = pm[i] >= lower[i];
    const bool ok_plus = residuals(pp, &r_plus);
    const bool ok_minus = minus_in_bounds && residuals(pm, &r_minus);
    if (ok_plus && ok_minus) {
      jac->col(i) = (r_plus - r_minus) / (2.0 * h);
    } else if (ok_plus) {
      jac->col(i) = (r_plus - r0) / h;
    } else if (ok_minus) {
      jac->col(i) = (r0 - r_minus) / h;
    } else {
      jac->col(i).setZero();
    }
  }
  return true;
}

}  // namespace

OptimizerReport Minimize(const ResidualFn& residuals,
                         const Eigen::VectorXd& initial,
                         const Eigen::VectorXd& lower_bounds,
                         const OptimizerConfig& config) {
  OptimizerReport report;
  Eigen::VectorXd params = Project(initial, lower_bounds);

  Eigen::VectorXd r;
  if (!residuals(params, &r)) {
    report.final_params = params;
    report.final_cost = std::numeric_limits<double>::infinity();
    report.status = OptimizerStatus::kEvaluationError;
    return report;
  }
  double cost = 0.5 * r.squaredNorm();
  double damping = config.initial_damping;

  report.status = OptimizerStatus::kMaxIterations;
  Eigen::MatrixXd jac;
  int iter = 0;
  while (iter < config.max_iterations) {
    ++iter;
    NumericJacobian(residuals, params, r, lower_bounds, config.fd_step, &jac);
    const Eigen::VectorXd gradient = jac.transpose() * r;
    if (gradient.lpNorm<Eigen::Infinity>() <= config.gradient_tolerance) {
      report.status = OptimizerStatus::kConverged;
      break;
    }
    // Jacobi column scaling keeps the normal equations well conditioned when
    // parameter sensitivities differ by orders of magnitude.
    const int n = static_cast<int>(params.size());
    Eigen::VectorXd col_scale(n);
    for (int i = 0; i < n; ++i) {
      col_scale[i] = 1.0 / (jac.col(i).norm() + 1e-12);
    }
    const Eigen::MatrixXd jac_scaled = jac * col_scale.asDiagonal();
    const Eigen::MatrixXd jtj = jac_scaled.transpose() * jac_scaled;
    const Eigen::VectorXd gradient_scaled =
        col_scale.asDiagonal() * gradient;
    Eigen::VectorXd diag = jtj.diagonal();
    const double diag_floor = 1e-12 * (diag.maxCoeff() + 1.0);
    diag = diag.cwiseMax(diag_floor);

    bool accepted = false;
    while (damping <= kMaxDamping) {
      Eigen::MatrixXd system = jtj;
      system.diagonal() += damping * diag;
      const Eigen::VectorXd step =
          col_scale.asDiagonal() * system.ldlt().solve(-gradient_scaled);
      if (!step.allFinite()) {
        damping *= 10.0;
        continue;
      }
      const Eigen::VectorXd candidate = Project(params + step, lower_bounds);
      Eigen::VectorXd r_new;
      if (!residuals(candidate, &r_new)) {
        damping *= 10.0;
        continue;
      }
      const double cost_new = 0.5 * r_new.squaredNorm();
      if (cost_new < cost) {
        const double decrease = cost - cost_new;
        const double step_norm = (candidate - params).norm();
        params = candidate;
        r = r_new;
        cost = cost_new;
        damping = std::max(damping / 10.0, kMinDamping);
        accepted = true;
        if (decrease <= config.cost_tolerance * std::max(cost, 1e-300)) {
          report.status = OptimizerStatus::kConverged;
        }
        if (step_norm <=
            config.step_tolerance * (params.norm() + config.step_tolerance)) {
          report.status = OptimizerStatus::kConverged;
        }
        break;
      }
      damping *= 10.0;
    }
    if (!accepted) {
      report.status = OptimizerStatus::kStalled;
      break;
    }
    if (report.status == OptimizerStatus::kConverged) break;
  }

  report.final_params = params;
  report.final_cost = cost;
  report.iterations = iter;
  return report;
}

}  // namespace tsocs
