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

#ifndef TSOCS_TYPES_H_
#define TSOCS_TYPES_H_

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace tsocs {

using Vec2 = Eigen::Vector2d;

// Planar kinematic state of a holonomic robot.
struct State {
  Vec2 pos = Vec2::Zero();  // m
  Vec2 vel = Vec2::Zero();  // m/s
};

// A boundary-value instance: drive the robot from `initial` to `goal` with
// acceleration magnitude at most u_max.
struct Problem {
  State initial;
  State goal;
  double u_max = 1.0;  // m/s^2, strictly positive
};

// Trajectory parameterization. The adjoint point
//   psi(t) = (alpha1 t + alpha3, alpha2 t + alpha4)
// traces a line in the plane; the optimal control accelerates at u_max
// towards it at all times. T is the trajectory horizon in seconds.
//
// The parameterization is invariant under positive rescaling of all four
// alphas; (alpha1..alpha4) must not all be zero.
struct ControlParams {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double alpha3 = 0.0;
  double alpha4 = 0.0;
  double T = 0.0;  // s, >= 0

  // Adjoint intercept p = psi(0).
  Vec2 Intercept() const { return {alpha3, alpha4}; }
  // Adjoint slope Q = d psi / dt.
  Vec2 Slope() const { return {alpha1, alpha2}; }
};

// All four alphas are below tolerance; the control direction is undefined
// everywhere.
class DegenerateParams : public std::runtime_error {
 public:
  explicit DegenerateParams(const std::string& what)
      : std::runtime_error(what) {}
};

// The adjoint line passes through (or numerically at) the origin at the
// queried time; the control direction flips there.
class SingularAdjoint : public std::runtime_error {
 public:
  explicit SingularAdjoint(const std::string& what)
      : std::runtime_error(what) {}
};

inline bool IsFinite(const Vec2& v) {
  return std::isfinite(v.x()) && std::isfinite(v.y());
}

inline bool IsFinite(const State& s) {
  return IsFinite(s.pos) && IsFinite(s.vel);
}

inline bool IsValid(const Problem& p) {
  return IsFinite(p.initial) && IsFinite(p.goal) && std::isfinite(p.u_max) &&
         p.u_max > 0.0;
}

}  // namespace tsocs

#endif  // TSOCS_TYPES_H_
