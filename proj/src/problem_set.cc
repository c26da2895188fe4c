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

#include "tsocs/problem_set.h"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "tsocs/rng.h"

namespace tsocs {
namespace {

using nlohmann::json;

Vec2 SampleDisk(Rng* rng, double radius) {
  const double angle = rng->Uniform(0.0, 2.0 * M_PI);
  const double r = radius * std::sqrt(rng->Uniform01());
  return {r * std::cos(angle), r * std::sin(angle)};
}

json Vec2ToJson(const Vec2& v) { return json::array({v.x(), v.y()}); }

Vec2 Vec2FromJson(const json& j) {
  if (!j.is_array() || j.size() != 2) {
    throw std::runtime_error("expected a 2-element array");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

ProblemFile GenerateProblems(const SamplerSpec& spec, uint64_t seed) {
  ProblemFile file;
  file.seed = seed;
  file.problems.reserve(static_cast<size_t>(spec.count));
  for (int i = 0; i < spec.count; ++i) {
    Rng rng = Rng::Derive(seed, static_cast<uint64_t>(i));
    Problem p;
    p.initial.pos = {rng.Uniform(-spec.pos_range, spec.pos_range),
                     rng.Uniform(-spec.pos_range, spec.pos_range)};
    p.initial.vel = SampleDisk(&rng, spec.vel_max);
    p.goal.pos = Vec2::Zero();
    p.goal.vel = spec.final_vel_mode == SamplerSpec::FinalVelMode::kSampled
                     ? SampleDisk(&rng, spec.vel_max)
                     : Vec2(Vec2::Zero());
    p.u_max = spec.u_max;
    file.problems.push_back(p);
  }
  return file;
}

std::string ProblemFileToJson(const ProblemFile& file) {
  json j;
  j["schema_version"] = file.schema_version;
  if (file.seed.has_value()) j["seed"] = *file.seed;
  json list = json::array();
  for (const Problem& p : file.problems) {
    json item;
    item["x0"] = Vec2ToJson(p.initial.pos);
    item["v0"] = Vec2ToJson(p.initial.vel);
    item["xf"] = Vec2ToJson(p.goal.pos);
    item["vf"] = Vec2ToJson(p.goal.vel);
    item["u_max"] = p.u_max;
    list.push_back(item);
  }
  j["problems"] = list;
  return j.dump(2);
}

ProblemFile ProblemFileFromJson(const std::string& json_text) {
  const json j = json::parse(json_text);
  ProblemFile file;
  file.schema_version = j.at("schema_version").get<int>();
  if (file.schema_version != kProblemFileSchemaVersion) {
    throw std::runtime_error("unsupported problem file schema version " +
                             std::to_string(file.schema_version));
  }
  if (j.contains("seed")) file.seed = j["seed"].get<uint64_t>();
  for (const json& item : j.at("problems")) {
    Problem p;
    p.initial.pos = Vec2FromJson(item.at("x0"));
    p.initial.vel = Vec2FromJson(item.at("v0"));
    p.goal.pos = Vec2FromJson(item.at("xf"));
    p.goal.vel = Vec2FromJson(item.at("vf"));
    p.u_max = item.at("u_max").get<double>();
    if (!IsValid(p)) {
      throw std::runtime_error("problem " +
                               std::to_string(file.problems.size()) +
                               " violates the problem invariants");
    }
    file.problems.push_back(p);
  }
  return file;
}

ProblemFile LoadProblemFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ProblemFileFromJson(buffer.str());
}

void SaveProblemFile(const ProblemFile& file, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << ProblemFileToJson(file) << "\n";
}

}  // namespace tsocs
