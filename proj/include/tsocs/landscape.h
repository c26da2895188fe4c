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

#ifndef TSOCS_LANDSCAPE_H_
#define TSOCS_LANDSCAPE_H_

#include <string>
#include <vector>

#include "tsocs/trajectory.h"
#include "tsocs/types.h"

namespace tsocs {

struct GridAxis {
  double min = 0.0;
  double max = 0.0;
  int samples = 1;

  double At(int i) const {
    if (samples <= 1) return min;
    return min + (max - min) * static_cast<double>(i) /
                     static_cast<double>(samples - 1);
  }
};

// Boundary-value cost over a dense (alpha1, alpha4, T) grid with alpha2 and
// alpha3 held fixed.
struct LandscapeGrid {
  GridAxis alpha1;
  GridAxis alpha4;
  GridAxis t;
  double alpha2 = 1.0;
  double alpha3 = 0.0;
};

struct LandscapeCell {
  double alpha1 = 0.0;
  double alpha4 = 0.0;
  double T = 0.0;
  double cost = 0.0;
  // True when the cost came from a singular fallback branch (or could not be
  // evaluated, in which case cost is NaN). Cells are marked, never dropped.
  bool singular = false;
};

std::vector<LandscapeCell> EvalLandscape(const Problem& problem,
                                         const LandscapeGrid& grid);

std::string LandscapeCsv(const std::vector<LandscapeCell>& cells);

}  // namespace tsocs

#endif  // TSOCS_LANDSCAPE_H_
