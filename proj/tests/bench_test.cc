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

#include "tsocs/bench.h"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "gtest/gtest.h"
#include "json.hpp"
#include "tsocs/landscape.h"

namespace tsocs {
namespace {

std::string TempPath(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

TEST(GenerateProblemsTest, DeterministicUnderSeed) {
  SamplerSpec spec;
  spec.count = 50;
  spec.final_vel_mode = SamplerSpec::FinalVelMode::kSampled;
  const ProblemFile a = GenerateProblems(spec, 42);
  const ProblemFile b = GenerateProblems(spec, 42);
  EXPECT_EQ(ProblemFileToJson(a), ProblemFileToJson(b));
  const ProblemFile c = GenerateProblems(spec, 43);
  EXPECT_NE(ProblemFileToJson(a), ProblemFileToJson(c));
}

TEST(GenerateProblemsTest, SamplingContract) {
  SamplerSpec spec;
  spec.count = 500;
  spec.pos_range = 5.0;
  spec.vel_max = 2.0;
  const ProblemFile zero = GenerateProblems(spec, 1);
  ASSERT_EQ(zero.problems.size(), 500u);
  for (const Problem& p : zero.problems) {
    EXPECT_EQ(p.goal.vel, Vec2::Zero());
    EXPECT_EQ(p.goal.pos, Vec2::Zero());
    EXPECT_LE(std::fabs(p.initial.pos.x()), 5.0);
    EXPECT_LE(std::fabs(p.initial.pos.y()), 5.0);
    EXPECT_LE(p.initial.vel.norm(), 2.0);
  }

  spec.final_vel_mode = SamplerSpec::FinalVelMode::kSampled;
  const ProblemFile sampled = GenerateProblems(spec, 1);
  int nonzero = 0;
  for (const Problem& p : sampled.problems) {
    EXPECT_LE(p.goal.vel.norm(), 2.0);
    if (p.goal.vel.norm() > 0.0) ++nonzero;
  }
  EXPECT_GT(nonzero, 490);
}

TEST(ProblemFileTest, JsonRoundTripIsExact) {
  SamplerSpec spec;
  spec.count = 25;
  spec.final_vel_mode = SamplerSpec::FinalVelMode::kSampled;
  const ProblemFile file = GenerateProblems(spec, 9);
  const std::string path = TempPath("tsocs_problems_test.json");
  SaveProblemFile(file, path);
  const ProblemFile loaded = LoadProblemFile(path);
  ASSERT_EQ(loaded.problems.size(), file.problems.size());
  ASSERT_TRUE(loaded.seed.has_value());
  EXPECT_EQ(*loaded.seed, 9u);
  for (size_t i = 0; i < file.problems.size(); ++i) {
    EXPECT_EQ(loaded.problems[i].initial.pos, file.problems[i].initial.pos);
    EXPECT_EQ(loaded.problems[i].initial.vel, file.problems[i].initial.vel);
    EXPECT_EQ(loaded.problems[i].goal.pos, file.problems[i].goal.pos);
    EXPECT_EQ(loaded.problems[i].goal.vel, file.problems[i].goal.vel);
    EXPECT_EQ(loaded.problems[i].u_max, file.problems[i].u_max);
  }
  std::filesystem::remove(path);
}

TEST(ProblemFileTest, RejectsInvalidProblems) {
  const std::string bad = R"({
    "schema_version": 1,
    "problems": [
      {"x0": [0, 0], "v0": [0, 0], "xf": [1, 0], "vf": [0, 0], "u_max": -1}
    ]
  })";
  EXPECT_THROW(ProblemFileFromJson(bad), std::runtime_error);
  const std::string wrong_version = R"({"schema_version": 99, "problems": []})";
  EXPECT_THROW(ProblemFileFromJson(wrong_version), std::runtime_error);
}

TEST(TrialCsvTest, RoundTripIsExact) {
  std::vector<TrialRow> rows(3);
  rows[0].index = 0;
  rows[0].mode = TrialMode::kTsocs;
  rows[0].noise = 0.05;
  rows[0].record.T_o = 0.1 + 0.2;  // deliberately non-representable exactly
  rows[0].record.T_f = 1.0 / 3.0;
  rows[0].record.T_rel = -0.123456789012345678;
  rows[0].record.final_pos_err = 1e-17;
  rows[0].record.final_vel_err = 3.0;
  rows[0].record.mean_solve_ms = 0.4;
  rows[0].record.max_solve_ms = 9.25;
  rows[0].record.open_loop_ticks = 7;
  rows[0].record.timed_out = true;
  rows[1].index = 1;
  rows[1].mode = TrialMode::kBaseline;
  rows[1].record.reference_solved = false;
  rows[2].index = 2;
  rows[2].mode = TrialMode::kOpenLoop;
  rows[2].record.T_o = 2.625;

  const std::string path = TempPath("tsocs_trials_test.csv");
  WriteTrialCsv(rows, path);
  const std::vector<TrialRow> loaded = ReadTrialCsv(path);
  ASSERT_EQ(loaded.size(), rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(loaded[i].index, rows[i].index);
    EXPECT_EQ(loaded[i].mode, rows[i].mode);
    EXPECT_EQ(loaded[i].noise, rows[i].noise);
    EXPECT_EQ(loaded[i].record.T_o, rows[i].record.T_o);
    EXPECT_EQ(loaded[i].record.T_f, rows[i].record.T_f);
    EXPECT_EQ(loaded[i].record.T_rel, rows[i].record.T_rel);
    EXPECT_EQ(loaded[i].record.final_pos_err, rows[i].record.final_pos_err);
    EXPECT_EQ(loaded[i].record.final_vel_err, rows[i].record.final_vel_err);
    EXPECT_EQ(loaded[i].record.mean_solve_ms, rows[i].record.mean_solve_ms);
    EXPECT_EQ(loaded[i].record.max_solve_ms, rows[i].record.max_solve_ms);
    EXPECT_EQ(loaded[i].record.open_loop_ticks,
              rows[i].record.open_loop_ticks);
    EXPECT_EQ(loaded[i].record.timed_out, rows[i].record.timed_out);
    EXPECT_EQ(loaded[i].record.reference_solved,
              rows[i].record.reference_solved);
  }
  std::filesystem::remove(path);
}

TEST(QuantileTest, LinearInterpolation) {
  const std::vector<double> values{4.0, 1.0, 3.0, 2.0};
  EXPECT_NEAR(Quantile(values, 0.0), 1.0, 1e-15);
  EXPECT_NEAR(Quantile(values, 1.0), 4.0, 1e-15);
  EXPECT_NEAR(Quantile(values, 0.5), 2.5, 1e-15);
}

TEST(BootstrapMedianCITest, DeterministicAndCoversMedian) {
  std::vector<double> values;
  Rng rng(3);
  for (int i = 0; i < 200; ++i) values.push_back(rng.Normal(5.0, 1.0));
  const MedianCI a = BootstrapMedianCI(values, 2000, 17);
  const MedianCI b = BootstrapMedianCI(values, 2000, 17);
  EXPECT_EQ(a.median, b.median);
  EXPECT_EQ(a.lo, b.lo);
  EXPECT_EQ(a.hi, b.hi);
  EXPECT_LE(a.lo, a.median);
  EXPECT_GE(a.hi, a.median);
  EXPECT_NEAR(a.median, 5.0, 0.3);

  const MedianCI single = BootstrapMedianCI({2.5}, 100, 1);
  EXPECT_EQ(single.median, 2.5);
  EXPECT_EQ(single.lo, 2.5);
  EXPECT_EQ(single.hi, 2.5);
}

TEST(RunTrialsTest, WorkerCountDoesNotChangeResults) {
  SamplerSpec spec;
  spec.count = 6;
  const ProblemFile file = GenerateProblems(spec, 21);
  ControllerConfig cc;
  SimConfig sc;
  sc.noise_level = 0.05;
  sc.seed = 99;
  const std::vector<TrialRow> serial =
      RunTrials(file.problems, cc, sc, TrialMode::kTsocs, 1);
  const std::vector<TrialRow> parallel =
      RunTrials(file.problems, cc, sc, TrialMode::kTsocs, 4);
  ASSERT_EQ(serial.size(), parallel.size());
  for (size_t i = 0; i < serial.size(); ++i) {
    EXPECT_EQ(serial[i].record.T_f, parallel[i].record.T_f);
    EXPECT_EQ(serial[i].record.final_pos_err,
              parallel[i].record.final_pos_err);
  }
}

TEST(AblationTest, GridHasThePaperRows) {
  const std::vector<AblationRow> grid = AblationGrid();
  ASSERT_EQ(grid.size(), 5u);
  EXPECT_FALSE(grid[0].use_t_max);
  EXPECT_FALSE(grid[0].use_initial_guess);
  EXPECT_FALSE(grid[0].use_stage1);
  EXPECT_TRUE(grid[4].use_t_max);
  EXPECT_TRUE(grid[4].use_initial_guess);
  EXPECT_TRUE(grid[4].use_stage1);
}

TEST(AblationTest, CountsFailuresWithoutThrowing) {
  SamplerSpec spec;
  spec.count = 50;
  spec.final_vel_mode = SamplerSpec::FinalVelMode::kSampled;
  const ProblemFile file = GenerateProblems(spec, 3);
  std::vector<AblationRow> grid{AblationGrid().back()};  // full config only
  const std::vector<AblationRow> rows =
      RunAblation(file.problems, SolverConfig{}, grid, 4);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].count, 50);
  EXPECT_GE(rows[0].failures, 0);
  EXPECT_LE(rows[0].failure_rate, 0.1);
  const std::string csv = AblationCsv(rows);
  EXPECT_NE(csv.find("t_max_guess_stage1"), std::string::npos);
}

TEST(SummaryJsonTest, ParsesBackWithExpectedFields) {
  BenchSummary s;
  s.mode = "tsocs";
  s.noise = 0.05;
  s.trials = 10;
  s.t_rel = {0.07, 0.05, 0.09};
  const std::string text = SummaryJson({s});
  const nlohmann::json j = nlohmann::json::parse(text);
  EXPECT_EQ(j["schema_version"], kResultsSchemaVersion);
  EXPECT_EQ(j["ci_method"], "bootstrap");
  ASSERT_EQ(j["summaries"].size(), 1u);
  EXPECT_EQ(j["summaries"][0]["mode"], "tsocs");
  EXPECT_NEAR(j["summaries"][0]["median_t_rel"].get<double>(), 0.07, 1e-12);
}

TEST(TradeoffCsvTest, FormatsRows) {
  std::vector<TradeoffRow> rows(2);
  rows[0] = {0.01, 0.003, 0.12, 100};
  rows[1] = {1.0, 0.05, 0.01, 100};
  const std::string csv = TradeoffCsv(rows);
  EXPECT_NE(csv.find("beta_min,median_final_pos_err"), std::string::npos);
  EXPECT_NE(csv.find("\n0.01"), std::string::npos);
}

TEST(LandscapeTest, SingleCellMatchesBoundaryCost) {
  Problem problem;
  problem.goal.pos = {1, 0};
  problem.goal.vel = {-2, 4};
  LandscapeGrid grid;
  grid.alpha1 = {0.7, 0.7, 1};
  grid.alpha4 = {-0.3, -0.3, 1};
  grid.t = {2.5, 2.5, 1};
  grid.alpha2 = 1.0;
  grid.alpha3 = 0.2;
  const std::vector<LandscapeCell> cells = EvalLandscape(problem, grid);
  ASSERT_EQ(cells.size(), 1u);
  ControlParams p;
  p.alpha1 = 0.7;
  p.alpha2 = 1.0;
  p.alpha3 = 0.2;
  p.alpha4 = -0.3;
  p.T = 2.5;
  EXPECT_NEAR(cells[0].cost, BoundaryValueCost(p, problem).total, 1e-12);
  EXPECT_FALSE(cells[0].singular);
}

TEST(LandscapeTest, SingularCellsAreMarkedNotDropped) {
  Problem problem;
  problem.goal.pos = {1, 0};
  // alpha2 = 0, alpha4 = 0, alpha3 = -1: the adjoint line runs along the x
  // axis through the origin for every alpha1 in the grid.
  LandscapeGrid grid;
  grid.alpha1 = {0.5, 2.0, 4};
  grid.alpha4 = {0.0, 0.0, 1};
  grid.t = {1.0, 3.0, 3};
  grid.alpha2 = 0.0;
  grid.alpha3 = -1.0;
  const std::vector<LandscapeCell> cells = EvalLandscape(problem, grid);
  ASSERT_EQ(cells.size(), 12u);
  for (const LandscapeCell& cell : cells) {
    EXPECT_TRUE(cell.singular);
    EXPECT_TRUE(std::isfinite(cell.cost));
  }
  const std::string csv = LandscapeCsv(cells);
  EXPECT_NE(csv.find("alpha1,alpha4,T,cost,singular"), std::string::npos);
}

}  // namespace
}  // namespace tsocs
