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

#include "tsocs/simulator.h"

#include <algorithm>
#include <cmath>

namespace tsocs {
namespace {

double DrawEta(const SimConfig& config, Rng* rng) {
  const double n = config.noise_level;
  if (n <= 0.0) return 1.0;
  switch (config.noise_model) {
    case NoiseModel::kUniform:
      return rng->Uniform(1.0 - n, 1.0 + n);
    case NoiseModel::kTruncatedGaussian:
    default:
      return rng->TruncatedNormal3Sigma(1.0, n);
  }
}

}  // namespace

State PlantStep(const State& state, const Vec2& command, double dt,
                const SimConfig& config, Rng* rng) {
  const Vec2 nominal_vel = state.vel + command * dt;
  const double eta = DrawEta(config, rng);
  State out;
  out.vel = nominal_vel * eta;
  out.pos = state.pos + 0.5 * (state.vel + out.vel) * dt;
  return out;
}

std::vector<AccelPhase> ThreeSegmentBaseline(const Problem& problem) {
  const double u = problem.u_max;
  const Vec2 vi = problem.initial.vel;
  const Vec2 vf = problem.goal.vel;
  const double nvi = vi.norm();
  const double nvf = vf.norm();
  const Vec2 dx = problem.goal.pos - problem.initial.pos;
  const Vec2 brake_disp = vi * (nvi / (2.0 * u));
  const Vec2 pre_goal = dx - vf * (nvf / (2.0 * u));
  const Vec2 travel = pre_goal - brake_disp;
  const double dist = travel.norm();

  std::vector<AccelPhase> schedule;
  if (nvi > 0.0) {
    schedule.push_back({nvi / u, -(u / nvi) * vi});
  }
  if (dist > 0.0) {
    const Vec2 dir = travel / dist;
    const double half = std::sqrt(dist / u);
    schedule.push_back({half, u * dir});
    schedule.push_back({half, -u * dir});
  }
  if (nvf > 0.0) {
    schedule.push_back({nvf / u, (u / nvf) * vf});
  }
  return schedule;
}

State ExecuteSchedule(const std::vector<AccelPhase>& schedule,
                      const State& initial, const SimConfig& config, Rng* rng,
                      double* executed_time) {
  const double dt = 1.0 / config.rate;
  State state = initial;
  double total = 0.0;
  for (const AccelPhase& phase : schedule) {
    double remaining = phase.duration;
    while (remaining > 1e-12) {
      const double step = std::min(remaining, dt);
      state = PlantStep(state, phase.acceleration, step, config, rng);
      remaining -= step;
      total += step;
    }
  }
  if (executed_time != nullptr) *executed_time = total;
  return state;
}

TrialRecord RunTrial(const Problem& problem,
                     const ControllerConfig& controller_config,
                     const SimConfig& sim_config, TrialMode mode) {
  TrialRecord record;

  // Noise-free reference solve defines the optimal time T_o.
  const SolveResult reference = Solve(problem, controller_config.solver);
  if (!reference.success) {
    record.reference_solved = false;
    return record;
  }
  record.T_o = reference.params.T;

  Rng rng(sim_config.seed);
  const double dt = 1.0 / sim_config.rate;
  const double cap = sim_config.max_time_factor * TimeUpperBound(problem);

  switch (mode) {
    case TrialMode::kTsocs: {
      ControllerConfig cfg = controller_config;
      cfg.dt = dt;
      const PlantFn plant = [&](const State& s, const Vec2& command) {
        return PlantStep(s, command, dt, sim_config, &rng);
      };
      const TrialRecord run = RunController(problem, cfg, plant, cap);
      record.T_f = run.T_f;
      record.final_pos_err = run.final_pos_err;
      record.final_vel_err = run.final_vel_err;
      record.mean_solve_ms = run.mean_solve_ms;
      record.max_solve_ms = run.max_solve_ms;
      record.open_loop_ticks = run.open_loop_ticks;
      record.timed_out = run.timed_out;
      break;
    }
    case TrialMode::kBaseline: {
      const std::vector<AccelPhase> schedule = ThreeSegmentBaseline(problem);
      double executed = 0.0;
      const State final_state = ExecuteSchedule(schedule, problem.initial,
                                                sim_config, &rng, &executed);
      record.T_f = executed;
      record.final_pos_err = (final_state.pos - problem.goal.pos).norm();
      record.final_vel_err = (final_state.vel - problem.goal.vel).norm();
      break;
    }
    case TrialMode::kOpenLoop: {
      // Execute the reference solution blindly at the configured rate,
      // sampling the control at the middle of each hold interval.
      State state = problem.initial;
      double t = 0.0;
      const double horizon = reference.params.T;
      while (t < horizon - 1e-12) {
        const double step = std::min(dt, horizon - t);
        Vec2 command = Vec2::Zero();
        try {
          command =
              EvalControl(reference.params, problem.u_max, t + 0.5 * step);
        } catch (const SingularAdjoint&) {
          const Vec2 q = reference.params.Slope();
          const double nq = q.norm();
          if (nq > 0.0) command = (problem.u_max / nq) * q;
        }
        state = PlantStep(state, command, step, sim_config, &rng);
        t += step;
      }
      record.T_f = t;
      record.final_pos_err = (state.pos - problem.goal.pos).norm();
      record.final_vel_err = (state.vel - problem.goal.vel).norm();
      break;
    }
  }

  record.T_rel = record.T_o > 0.0
                     ? (record.T_f - record.T_o) / record.T_o
                     : 0.0;
  return record;
}

}  // namespace tsocs
