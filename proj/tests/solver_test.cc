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

#include <cmath>

#include "gtest/gtest.h"
#include "tsocs/problem_set.h"
#include "tsocs/rng.h"

namespace tsocs {
namespace {

Problem RestToRestUnit() {
  Problem p;
  p.goal.pos = {1, 0};
  return p;
}

// The cost-landscape example problem: start at rest at the origin, end at
// (1, 0) with velocity (-2, 4), unit acceleration.
Problem HookProblem() {
  Problem p;
  p.goal.pos = {1, 0};
  p.goal.vel = {-2, 4};
  return p;
}

TEST(Stage1Test, FitsAlphasAtFixedUpperBound) {
  const Problem problem = RestToRestUnit();
  const SolverConfig config;
  const ControlParams params = Stage1(problem, config);
  EXPECT_NEAR(params.T, 2.0, 1e-12);  // T pinned at the upper bound
  const CostTerms cost = BoundaryValueCost(params, problem);
  EXPECT_LT(cost.total, 1e-3);
}

TEST(Stage1Test, GoalEqualsInitialReturnsImmediately) {
  Problem problem;  // goal == initial
  const SolverConfig config;
  int iterations = -1;
  const ControlParams params = Stage1(problem, config, &iterations);
  EXPECT_EQ(params.T, 0.0);
  EXPECT_LE(iterations, 1);
  EXPECT_NEAR(BoundaryValueCost(params, problem).total, 0.0, 1e-12);
}

TEST(Stage1Test, AblationStartUsesFixedAlphasAndUnitTime) {
  SolverConfig config;
  config.use_t_max = false;
  config.use_initial_guess = false;
  const ControlParams start = AblationStartParams(HookProblem(), config);
  EXPECT_EQ(start.alpha1, 1.0);
  EXPECT_EQ(start.alpha2, 2.0);
  EXPECT_EQ(start.alpha3, 3.0);
  EXPECT_EQ(start.alpha4, 4.0);
  EXPECT_EQ(start.T, 1.0);
}

TEST(Stage2Test, RecoversRestToRestOptimum) {
  const Problem problem = RestToRestUnit();
  const SolverConfig config;
  const ControlParams stage1 = Stage1(problem, config);
  const SolveResult result = Stage2(problem, stage1, config);
  EXPECT_TRUE(result.success);
  // 1D bang-bang optimum: T = 2 sqrt(d / u).
  EXPECT_NEAR(result.params.T, 2.0, 1e-4);
}

TEST(Stage2Test, FixedPointWhenAlreadyOptimal) {
  const Problem problem = RestToRestUnit();
  const SolverConfig config;
  const SolveResult first = Solve(problem, config);
  ASSERT_TRUE(first.success);
  const SolveResult again = Stage2(problem, first.params, config);
  EXPECT_TRUE(again.success);
  EXPECT_NEAR(again.params.T, first.params.T, 1e-6);
  EXPECT_LE(again.stage2_iterations, 10);
}

TEST(Stage2Test, SolvesLandscapeProblem) {
  const SolveResult result = Solve(HookProblem(), SolverConfig{});
  EXPECT_TRUE(result.success);
  EXPECT_LT(result.cost, 1e-5);
}

TEST(Stage2Test, LandscapeOptimumMatchesRandomRestartSearch) {
  const Problem problem = HookProblem();
  const SolverConfig config;
  const SolveResult solved = Solve(problem, config);
  ASSERT_TRUE(solved.success);

  // Dense random-restart search over the parameter space; the smallest
  // converged horizon approximates the true optimal time.
  Rng rng(123);
  double best_t = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 200; ++i) {
    ControlParams start;
    start.alpha1 = rng.Uniform(-3, 3);
    start.alpha2 = rng.Uniform(-3, 3);
    start.alpha3 = rng.Uniform(-3, 3);
    start.alpha4 = rng.Uniform(-3, 3);
    start.T = rng.Uniform(0.1, 2.0 * TimeUpperBound(problem));
    const SolveResult restart = Stage2(problem, start, config);
    if (restart.success && restart.params.T > 1e-9) {
      best_t = std::min(best_t, restart.params.T);
    }
  }
  ASSERT_TRUE(std::isfinite(best_t));
  EXPECT_NEAR(solved.params.T, best_t, 1e-3 * (1.0 + best_t));
}

TEST(SolveTest, GoalEqualsInitialSucceedsWithZeroTime) {
  Problem problem;
  const SolveResult result = Solve(problem, SolverConfig{});
  EXPECT_TRUE(result.success);
  EXPECT_NEAR(result.params.T, 0.0, 1e-9);
}

TEST(SolveTest, Deterministic) {
  const Problem problem = HookProblem();
  const SolveResult a = Solve(problem, SolverConfig{});
  const SolveResult b = Solve(problem, SolverConfig{});
  EXPECT_EQ(a.params.alpha1, b.params.alpha1);
  EXPECT_EQ(a.params.alpha2, b.params.alpha2);
  EXPECT_EQ(a.params.alpha3, b.params.alpha3);
  EXPECT_EQ(a.params.alpha4, b.params.alpha4);
  EXPECT_EQ(a.params.T, b.params.T);
  EXPECT_EQ(a.cost, b.cost);
  EXPECT_EQ(a.stage1_iterations, b.stage1_iterations);
  EXPECT_EQ(a.stage2_iterations, b.stage2_iterations);
}

TEST(SolveTest, SuccessImpliesBoundaryHit) {
  SamplerSpec spec;
  spec.final_vel_mode = SamplerSpec::FinalVelMode::kSampled;
  spec.count = 100;
  const ProblemFile file = GenerateProblems(spec, 2024);
  const SolverConfig config;
  int successes = 0;
  for (const Problem& problem : file.problems) {
    const SolveResult result = Solve(problem, config);
    if (!result.success) continue;
    ++successes;
    const State end = EvalState(result.params, problem.initial,
                                problem.u_max, result.params.T);
    const double miss =
        std::sqrt((problem.goal.pos - end.pos).squaredNorm() +
                  (problem.goal.vel - end.vel).squaredNorm());
    EXPECT_LE(miss, std::sqrt(config.success_cost_threshold) * 1.0000001);
    EXPECT_LE(result.params.T, TimeUpperBound(problem) + 1e-6);
  }
  // The full configuration should solve nearly everything.
  EXPECT_GE(successes, 95);
}

TEST(SolveTest, StageCountsAreRecorded) {
  const SolveResult result = Solve(HookProblem(), SolverConfig{});
  EXPECT_GT(result.stage1_iterations, 0);
  EXPECT_GT(result.stage2_iterations, 0);
  EXPECT_GE(result.wall_time, 0.0);
  EXPECT_GE(result.stage1_cost, result.cost);
}

}  // namespace
}  // namespace tsocs
