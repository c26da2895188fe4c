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

#include "tsocs/landscape.h"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace tsocs {

std::vector<LandscapeCell> EvalLandscape(const Problem& problem,
                                         const LandscapeGrid& grid) {
  std::vector<LandscapeCell> cells;
  cells.reserve(static_cast<size_t>(grid.alpha1.samples) *
                static_cast<size_t>(grid.alpha4.samples) *
                static_cast<size_t>(grid.t.samples));
  for (int i = 0; i < grid.alpha1.samples; ++i) {
    for (int j = 0; j < grid.alpha4.samples; ++j) {
      for (int k = 0; k < grid.t.samples; ++k) {
        LandscapeCell cell;
        cell.alpha1 = grid.alpha1.At(i);
        cell.alpha4 = grid.alpha4.At(j);
        cell.T = grid.t.At(k);

        ControlParams params;
        params.alpha1 = cell.alpha1;
        params.alpha2 = grid.alpha2;
        params.alpha3 = grid.alpha3;
        params.alpha4 = cell.alpha4;
        params.T = cell.T;
        try {
          const StateEval eval = EvalStateEx(params, problem.initial,
                                             problem.u_max, params.T);
          cell.singular = eval.singular;
          cell.cost = (problem.goal.pos - eval.state.pos).squaredNorm() +
                      (problem.goal.vel - eval.state.vel).squaredNorm();
        } catch (const DegenerateParams&) {
          cell.singular = true;
          cell.cost = std::numeric_limits<double>::quiet_NaN();
        }
        cells.push_back(cell);
      }
    }
  }
  return cells;
}

std::string LandscapeCsv(const std::vector<LandscapeCell>& cells) {
  std::ostringstream out;
  out << "alpha1,alpha4,T,cost,singular\n";
  char buf[160];
  for (const LandscapeCell& cell : cells) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%d\n",
                  cell.alpha1, cell.alpha4, cell.T, cell.cost,
                  cell.singular ? 1 : 0);
    out << buf;
  }
  return out.str();
}

}  // namespace tsocs
