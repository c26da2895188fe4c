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

#include "tsocs/controller.h"

#include <cmath>

#include "gtest/gtest.h"
#include "tsocs/problem_set.h"
#include "tsocs/rng.h"
#include "tsocs/simulator.h"

namespace tsocs {
namespace {

PlantFn ExactPlant(double dt) {
  return [dt](const State& s, const Vec2& command) {
    State out;
    out.vel = s.vel + command * dt;
    out.pos = s.pos + s.vel * dt + (0.5 * dt * dt) * command;
    return out;
  };
}

TEST(ShiftParamsTest, MovesInterceptAlongTheLine) {
  ControlParams p;
  p.alpha1 = 1;
  p.alpha2 = 2;
  p.alpha3 = 3;
  p.alpha4 = 4;
  p.T = 2;
  const ControlParams shifted = ShiftParams(p, 0.5);
  EXPECT_EQ(shifted.alpha1, 1);
  EXPECT_EQ(shifted.alpha2, 2);
  EXPECT_NEAR(shifted.alpha3, 3.5, 1e-15);
  EXPECT_NEAR(shifted.alpha4, 5.0, 1e-15);
  EXPECT_NEAR(shifted.T, 1.5, 1e-15);
}

TEST(ShiftParamsTest, ZeroSlopeKeepsIntercept) {
  ControlParams p;
  p.alpha3 = 1;
  p.T = 1;
  const ControlParams shifted = ShiftParams(p, 0.25);
  EXPECT_EQ(shifted.alpha3, 1);
  EXPECT_EQ(shifted.alpha4, 0);
  EXPECT_NEAR(shifted.T, 0.75, 1e-15);
}

TEST(ShiftParamsTest, ReproducesTimeShiftedTrajectory) {
  // For noise-free dynamics the shifted parameter set replays the original
  // trajectory offset by dt.
  SamplerSpec spec;
  spec.final_vel_mode = SamplerSpec::FinalVelMode::kSampled;
  spec.count = 20;
  const ProblemFile file = GenerateProblems(spec, 31);
  const SolverConfig config;
  const double dt = 1.0 / 60.0;
  Rng rng(4);
  for (const Problem& problem : file.problems) {
    const SolveResult solved = Solve(problem, config);
    if (!solved.success) continue;
    const ControlParams shifted = ShiftParams(solved.params, dt);
    const State at_dt =
        EvalState(solved.params, problem.initial, problem.u_max, dt);
    for (int k = 0; k < 10; ++k) {
      const double t = rng.Uniform(0.0, std::max(shifted.T, 0.0));
      const State a = EvalState(shifted, at_dt, problem.u_max, t);
      const State b =
          EvalState(solved.params, problem.initial, problem.u_max, t + dt);
      EXPECT_NEAR(a.pos.x(), b.pos.x(), 1e-9);
      EXPECT_NEAR(a.pos.y(), b.pos.y(), 1e-9);
      EXPECT_NEAR(a.vel.x(), b.vel.x(), 1e-9);
      EXPECT_NEAR(a.vel.y(), b.vel.y(), 1e-9);
    }
  }
}

TEST(ControllerTickTest, NoiseFreeTickAcceptsShiftedParams) {
  Problem problem;
  problem.goal.pos = {2, 1};
  problem.goal.vel = {0.5, -0.25};
  const ControllerConfig config;
  const SolveResult solved = Solve(problem, config.solver);
  ASSERT_TRUE(solved.success);

  ControllerState cs;
  cs.params = solved.params;
  cs.last_good_params = solved.params;
  cs.t_expected = solved.params.T;

  State truth = problem.initial;
  const PlantFn plant = ExactPlant(config.dt);
  for (int i = 0; i < 30; ++i) {
    const TickResult tick = ControllerTick(cs, truth, problem, config);
    EXPECT_FALSE(tick.state.open_loop);
    EXPECT_LT(tick.diag.accepted_cost, config.eps_cost);
    EXPECT_LE(tick.diag.t_over_t_expected, config.tau + 1e-12);
    EXPECT_NEAR(tick.command.norm(), problem.u_max, 1e-9);
    truth = plant(truth, tick.command);
    cs = tick.state;
  }
}

TEST(ControllerTickTest, HopelessTickFallsBackToOpenLoop) {
  Problem problem;
  problem.goal.pos = {1, 0};
  const ControllerConfig config;
  const SolveResult solved = Solve(problem, config.solver);
  ASSERT_TRUE(solved.success);

  ControllerState cs;
  cs.params = solved.params;
  cs.last_good_params = solved.params;
  // Tiny expected time: any reachable re-solve needs far more than tau * T_e,
  // so both the refinement and the full re-solve must be rejected.
  cs.t_expected = 2.0 * config.dt;

  State far_away;
  far_away.pos = {40, -35};
  const TickResult tick = ControllerTick(cs, far_away, problem, config);
  EXPECT_TRUE(tick.state.open_loop);
  EXPECT_TRUE(tick.diag.used_full_resolve);
  // Open loop follows the last good set, shifted by one period.
  const ControlParams expected = ShiftParams(solved.params, config.dt);
  EXPECT_EQ(tick.state.params.alpha3, expected.alpha3);
  EXPECT_EQ(tick.state.params.T, expected.T);
}

TEST(RunControllerTest, ImmediateTerminationAtGoal) {
  Problem problem;  // goal == initial
  const ControllerConfig config;
  const TrialRecord record =
      RunController(problem, config, ExactPlant(config.dt));
  EXPECT_EQ(record.T_f, 0.0);
  EXPECT_FALSE(record.timed_out);
  EXPECT_LE(record.final_pos_err, config.eps_x);
}

TEST(RunControllerTest, NoiseFreeRestToRestLandsOnTheOptimum) {
  Problem problem;
  problem.goal.pos = {1, 0};
  const ControllerConfig config;
  const TrialRecord record =
      RunController(problem, config, ExactPlant(config.dt));
  EXPECT_FALSE(record.timed_out);
  // 1D optimum is T = 2; termination triggers within a couple of ticks.
  EXPECT_NEAR(record.T_f, 2.0, 2.0 * config.dt);
  EXPECT_LE(record.final_pos_err, config.eps_x);
  EXPECT_LE(record.final_vel_err, config.eps_v);
  EXPECT_EQ(record.open_loop_ticks, 0);
}

TEST(RunControllerTest, CommandsNeverExceedTheBound) {
  Problem problem;
  problem.initial.pos = {-2, 1};
  problem.initial.vel = {0.4, 0.8};
  problem.goal.vel = {0.5, 0};
  problem.u_max = 1.5;
  const ControllerConfig config;

  SimConfig sim;
  sim.noise_level = 0.05;
  Rng rng(123);
  double max_command = 0.0;
  const PlantFn plant = [&](const State& s, const Vec2& command) {
    max_command = std::max(max_command, command.norm());
    return PlantStep(s, command, config.dt, sim, &rng);
  };
  const TrialRecord record = RunController(problem, config, plant);
  (void)record;
  EXPECT_LE(max_command, problem.u_max + 1e-9);
}

TEST(RunControllerTest, NoisyRunStillTerminates) {
  Problem problem;
  problem.initial.pos = {3, -2};
  problem.initial.vel = {-1, 0.5};
  const ControllerConfig config;
  SimConfig sim;
  sim.noise_level = 0.05;
  Rng rng(5);
  const PlantFn plant = [&](const State& s, const Vec2& command) {
    return PlantStep(s, command, config.dt, sim, &rng);
  };
  const TrialRecord record = RunController(problem, config, plant);
  EXPECT_FALSE(record.timed_out);
  EXPECT_GT(record.T_f, 0.0);
  EXPECT_LE(record.final_pos_err, 0.5);  // closed loop keeps errors bounded
}

}  // namespace
}  // namespace tsocs
