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

#ifndef TSOCS_SIMULATOR_H_
#define TSOCS_SIMULATOR_H_

#include <cstdint>
#include <vector>

#include "tsocs/controller.h"
#include "tsocs/rng.h"
#include "tsocs/types.h"

namespace tsocs {

enum class NoiseModel {
  kTruncatedGaussian,  // eta ~ Normal(1, n) truncated to [1 - 3n, 1 + 3n]
  kUniform,            // eta ~ Uniform[1 - n, 1 + n]
};

struct SimConfig {
  double rate = 60.0;        // Hz
  double noise_level = 0.0;  // n >= 0
  uint64_t seed = 0;
  double max_time_factor = 10.0;  // trial cap as a multiple of the time bound
  NoiseModel noise_model = NoiseModel::kTruncatedGaussian;
};

// One simulation step with multiplicative actuation noise: the nominal
// velocity v + command * dt is scaled by a per-tick scalar eta, and the
// position advances by the constant-acceleration displacement consistent with
// the realized velocity change.
State PlantStep(const State& state, const Vec2& command, double dt,
                const SimConfig& config, Rng* rng);

struct AccelPhase {
  double duration = 0.0;  // s
  Vec2 acceleration = Vec2::Zero();
};

// The suboptimal three-segment schedule behind the analytic time bound:
// brake to rest, translate (bang-bang) to the point from which the goal state
// is directly reachable from rest, then accelerate straight to the goal.
// Total duration equals TimeUpperBound(problem).
std::vector<AccelPhase> ThreeSegmentBaseline(const Problem& problem);

// Executes a phase schedule against the noisy plant at the configured rate,
// splitting steps at phase boundaries. Returns the final state.
State ExecuteSchedule(const std::vector<AccelPhase>& schedule,
                      const State& initial, const SimConfig& config,
                      Rng* rng, double* executed_time);

enum class TrialMode { kTsocs, kBaseline, kOpenLoop };

// One benchmark trial: reference noise-free solve for T_o, then the chosen
// controller against the noisy plant. A failed reference solve marks the
// record unsolvable (reference_solved = false) and skips execution.
TrialRecord RunTrial(const Problem& problem,
                     const ControllerConfig& controller_config,
                     const SimConfig& sim_config, TrialMode mode);

}  // namespace tsocs

#endif  // TSOCS_SIMULATOR_H_
