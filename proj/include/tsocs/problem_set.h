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

#ifndef TSOCS_PROBLEM_SET_H_
#define TSOCS_PROBLEM_SET_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tsocs/types.h"

namespace tsocs {

inline constexpr int kProblemFileSchemaVersion = 1;

struct ProblemFile {
  int schema_version = kProblemFileSchemaVersion;
  std::optional<uint64_t> seed;
  std::vector<Problem> problems;
};

struct SamplerSpec {
  double pos_range = 5.0;  // half-width of the start-position square, m
  double vel_max = 2.0;    // speed disk radius, m/s
  double u_max = 1.0;      // m/s^2
  enum class FinalVelMode { kZero, kSampled };
  FinalVelMode final_vel_mode = FinalVelMode::kZero;
  int count = 1;
};

// Random problems: start position uniform in the square, start velocity
// uniform in the speed disk, goal at the origin with zero or disk-sampled
// final velocity. Deterministic under the seed.
ProblemFile GenerateProblems(const SamplerSpec& spec, uint64_t seed);

// JSON (de)serialization. Load validates every problem against the Problem
// invariants and throws std::runtime_error on violations.
ProblemFile LoadProblemFile(const std::string& path);
void SaveProblemFile(const ProblemFile& file, const std::string& path);

std::string ProblemFileToJson(const ProblemFile& file);
ProblemFile ProblemFileFromJson(const std::string& json_text);

}  // namespace tsocs

#endif  // TSOCS_PROBLEM_SET_H_
