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

#ifndef TSOCS_RNG_H_
#define TSOCS_RNG_H_

#include <cmath>
#include <cstdint>

namespace tsocs {

// splitmix64 step (Steele, Lea, Flood 2014; public domain reference code).
inline uint64_t SplitMix64(uint64_t* state) {
  uint64_t z = (*state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Small deterministic RNG. Output sequences are a pure function of the seed,
// independent of platform and standard library, so simulation results are
// reproducible bit-for-bit. Streams for parallel trials are derived with
// Derive(seed, index).
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {
    // Warm up so that small seeds do not produce correlated leading draws.
    SplitMix64(&state_);
  }

  static Rng Derive(uint64_t seed, uint64_t index) {
    uint64_t s = seed;
    uint64_t mixed = SplitMix64(&s) ^ (index * 0x9e3779b97f4a7c15ull);
    return Rng(mixed);
  }

  uint64_t NextU64() { return SplitMix64(&state_); }

  // Uniform in [0, 1) with 53 bits of precision.
  double Uniform01() {
    return static_cast<double>(NextU64() >> 11) * 0x1.0p-53;
  }

  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform01(); }

  // Standard normal via Box-Muller (no cached second value).
  double Normal() {
    double u1 = Uniform01();
    while (u1 <= 0.0) u1 = Uniform01();
    const double u2 = Uniform01();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * M_PI * u2);
  }

  double Normal(double mean, double stddev) {
    return mean + stddev * Normal();
  }

  // Normal(mean, stddev) conditioned on |x - mean| <= 3 stddev.
  double TruncatedNormal3Sigma(double mean, double stddev) {
    if (stddev <= 0.0) return mean;
    while (true) {
      const double z = Normal();
      if (std::fabs(z) <= 3.0) return mean + stddev * z;
    }
  }

 private:
  uint64_t state_;
};

}  // namespace tsocs

#endif  // TSOCS_RNG_H_
