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

#include "tsocs/trajectory.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace tsocs {
namespace {

// All alphas below this magnitude count as zero (degenerate direction).
constexpr double kDegenerateTol = 1e-150;
// Slope treated as zero when |Q| < kSlopeRelTol * (|p| / T + 1).
constexpr double kSlopeRelTol = 1e-9;
// Anti-parallel intercept/slope treated as exact when
// h3 < kAntiParallelRelTol * |p| |Q| + kAbsFloor.
constexpr double kAntiParallelRelTol = 1e-9;
constexpr double kAbsFloor = 1e-300;
constexpr double kTinyTime = 1e-12;
// Exponent clamp for the time penalty; keeps the squared residual finite.
constexpr double kMaxPenaltyExponent = 600.0;

State ConstantAccelAdvance(const State& s, const Vec2& accel, double dt) {
  State out;
  out.pos = s.pos + s.vel * dt + (0.5 * dt * dt) * accel;
  out.vel = s.vel + accel * dt;
  return out;
}

Vec2 Rotated(const Vec2& v, double radians) {
  const double c = std::cos(radians);
  const double s = std::sin(radians);
  return {c * v.x() - s * v.y(), s * v.x() + c * v.y()};
}

}  // namespace

Vec2 EvalAdjoint(const ControlParams& params, double t) {
  return {params.alpha1 * t + params.alpha3,
          params.alpha2 * t + params.alpha4};
}

Vec2 EvalControl(const ControlParams& params, double u_max, double t) {
  const Vec2 psi = EvalAdjoint(params, t);
  const double norm = psi.norm();
  const double scale = params.Intercept().norm() +
                       params.Slope().norm() * (1.0 + std::fabs(t));
  if (norm <= 1e-12 * scale + kAbsFloor) {
    throw SingularAdjoint("adjoint line at origin at t=" + std::to_string(t));
  }
  return (u_max / norm) * psi;
}

StateEval EvalStateEx(const ControlParams& params, const State& initial,
                      double u_max, double t) {
  if (t < 0.0) {
    throw std::invalid_argument("EvalState requires t >= 0");
  }
  const Vec2 p = params.Intercept();
  const Vec2 q = params.Slope();
  const double np = p.norm();
  const double nq = q.norm();
  if (np + nq < kDegenerateTol) {
    throw DegenerateParams("all four alphas below tolerance");
  }

  StateEval out;
  if (t == 0.0) {
    out.state = initial;
    return out;
  }

  const double t_scale = std::max(params.T, kTinyTime);
  if (nq < kSlopeRelTol * (np / t_scale + 1.0) && np > 0.0) {
    // Slope negligible: constant control towards the intercept.
    out.state = ConstantAccelAdvance(initial, (u_max / np) * p, t);
    out.singular = true;
    return out;
  }

  const double dot = p.dot(q);
  const double h3 = np * nq + dot;
  if (h3 <= kAntiParallelRelTol * np * nq + kAbsFloor) {
    // The adjoint line passes through the origin at t0; the control is
    // piecewise constant along the slope direction (1D bang-bang limit).
    const Vec2 qhat = q / nq;
    const double t0 = -p.dot(qhat) / nq;
    out.singular = true;
    if (t0 <= 0.0) {
      out.state = ConstantAccelAdvance(initial, u_max * qhat, t);
    } else if (t0 >= t) {
      out.state = ConstantAccelAdvance(initial, -u_max * qhat, t);
    } else {
      const State mid = ConstantAccelAdvance(initial, -u_max * qhat, t0);
      out.state = ConstantAccelAdvance(mid, u_max * qhat, t - t0);
    }
    return out;
  }

  // General closed form. Derived with u_max = 1; the control direction does
  // not depend on u_max, so the deltas scale linearly.
  const double det = p.x() * q.y() - p.y() * q.x();
  const double h1 = (p + q * t).norm();
  const double h2 = nq * h1 + nq * nq * t + dot;
  const double log_gamma = std::log(h2 / h3);

  const double nq2 = nq * nq;
  const double nq3 = nq2 * nq;
  const double nq5 = nq2 * nq3;

  const double dv_axis = (h1 - np) / nq2;
  const double dv_cross = det * log_gamma / nq3;
  const double dx_axis =
      (h1 * (nq * dot + t * nq3) + det * det * log_gamma -
       np * (nq * dot + 2.0 * t * nq3)) /
      (2.0 * nq5);
  const double dx_cross =
      (det / nq3) * (log_gamma * (t + dot / nq2) - (h1 - np) / nq);

  const Vec2 dv{params.alpha1 * dv_axis + params.alpha2 * dv_cross,
                params.alpha2 * dv_axis - params.alpha1 * dv_cross};
  const Vec2 dx{params.alpha1 * dx_axis + params.alpha2 * dx_cross,
                params.alpha2 * dx_axis - params.alpha1 * dx_cross};

  out.state.vel = initial.vel + u_max * dv;
  out.state.pos = initial.pos + initial.vel * t + u_max * dx;
  return out;
}

State EvalState(const ControlParams& params, const State& initial,
                double u_max, double t) {
  return EvalStateEx(params, initial, u_max, t).state;
}

double TimeUpperBound(const Problem& problem) {
  const double u = problem.u_max;
  const Vec2 dx = problem.goal.pos - problem.initial.pos;
  const Vec2 vi = problem.initial.vel;
  const Vec2 vf = problem.goal.vel;
  const double nvi = vi.norm();
  const double nvf = vf.norm();
  // Rest point after braking, and the rest point from which the goal state is
  // reachable by a single straight acceleration.
  const Vec2 brake_disp = vi * (nvi / (2.0 * u));
  const Vec2 pre_goal = dx - vf * (nvf / (2.0 * u));
  const double dist = (pre_goal - brake_disp).norm();
  return (nvi + nvf) / u + 2.0 * std::sqrt(dist / u);
}

BangBang1D SolveBangBang1D(double displacement, double v0, double vf,
                           double u_max) {
  // With initial sign +1 the velocity profile rises to a peak vp and falls;
  // matching the displacement gives vp^2 = u d + (v0^2 + vf^2) / 2. The
  // initial sign -1 candidate is the mirror image. The feasible candidate
  // with the smaller total time is the optimum.
  const double tol =
      1e-9 * (std::fabs(v0) + std::fabs(vf) +
              std::sqrt(std::fabs(u_max * displacement))) / u_max + 1e-15;

  BangBang1D best;
  bool have = false;
  auto consider = [&](double t1, double t2, int sign) {
    if (t1 < -tol || t2 < -tol) return;
    t1 = std::max(t1, 0.0);
    t2 = std::max(t2, 0.0);
    const double total = t1 + t2;
    if (!have || total < best.total_time) {
      best = {t1, total, sign};
      have = true;
    }
  };

  const double half_sq = 0.5 * (v0 * v0 + vf * vf);
  const double disc_plus = u_max * displacement + half_sq;
  if (disc_plus >= 0.0) {
    const double vp = std::sqrt(disc_plus);
    consider((vp - v0) / u_max, (vp - vf) / u_max, +1);
  }
  const double disc_minus = -u_max * displacement + half_sq;
  if (disc_minus >= 0.0) {
    const double vt = -std::sqrt(disc_minus);
    consider((v0 - vt) / u_max, (vf - vt) / u_max, -1);
  }
  return best;
}

ControlParams InitialGuess(const Problem& problem) {
  const Vec2 dx = problem.goal.pos - problem.initial.pos;
  const double ndx = dx.norm();
  const double v_scale =
      problem.initial.vel.norm() + problem.goal.vel.norm();
  const double tiny = 1e-12 * (1.0 + v_scale);

  Vec2 dir;
  if (ndx > tiny) {
    dir = dx / ndx;
  } else {
    const Vec2 dv = problem.goal.vel - problem.initial.vel;
    const double ndv = dv.norm();
    dir = ndv > tiny ? Vec2(dv / ndv) : Vec2(1.0, 0.0);
  }

  const BangBang1D bb = SolveBangBang1D(ndx, problem.initial.vel.dot(dir),
                                        problem.goal.vel.dot(dir),
                                        problem.u_max);
  const double sign = static_cast<double>(bb.initial_sign);

  // psi(t) = (switch_time - t) * sign * dir crosses the origin at the switch;
  // the intercept is rotated off exact colinearity with the slope so the
  // encoded line does not sit on the singular family.
  const Vec2 slope = -sign * dir;
  Vec2 intercept;
  if (bb.switch_time > 1e-9 * (bb.total_time + 1.0)) {
    intercept = bb.switch_time * sign * Rotated(dir, kGuessPerturbRadians);
  } else {
    // Single-phase profile: constant control opposite to dir. A small
    // intercept along the slope keeps the direction fixed near t = 0.
    const double offset = 1e-3 * (bb.total_time + 1.0);
    intercept = -offset * sign * Rotated(dir, kGuessPerturbRadians);
  }

  ControlParams out;
  out.alpha1 = slope.x();
  out.alpha2 = slope.y();
  out.alpha3 = intercept.x();
  out.alpha4 = intercept.y();
  out.T = bb.total_time;
  return out;
}

CostTerms BoundaryValueCost(const ControlParams& params,
                            const Problem& problem) {
  const State end = EvalState(params, problem.initial, problem.u_max,
                              params.T);
  CostTerms c;
  c.pos_err_sq = (problem.goal.pos - end.pos).squaredNorm();
  c.vel_err_sq = (problem.goal.vel - end.vel).squaredNorm();
  c.total = c.pos_err_sq + c.vel_err_sq;
  return c;
}

double IterativeCostBeta(const Problem& problem, double t_expected,
                         const IterativeCostConfig& cfg) {
  const double dv = (problem.goal.vel - problem.initial.vel).norm();
  return std::max(1.0 - dv / (problem.u_max * t_expected), cfg.beta_min);
}

CostTerms IterativeCost(const ControlParams& params, const Problem& problem,
                        double t_expected, const IterativeCostConfig& cfg) {
  const State end = EvalState(params, problem.initial, problem.u_max,
                              params.T);
  CostTerms c;
  c.pos_err_sq = (problem.goal.pos - end.pos).squaredNorm();
  c.vel_err_sq = (problem.goal.vel - end.vel).squaredNorm();
  const double beta = IterativeCostBeta(problem, t_expected, cfg);
  const double arg = std::min(cfg.k2 * (params.T / t_expected - cfg.tau),
                              kMaxPenaltyExponent);
  c.time_penalty = cfg.k1 * std::exp(arg);
  c.total = c.pos_err_sq + beta * c.vel_err_sq + c.time_penalty;
  return c;
}

}  // namespace tsocs
