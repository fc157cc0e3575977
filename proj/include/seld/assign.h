// Copyright 2026 The seldkit Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SELD_ASSIGN_H_
#define SELD_ASSIGN_H_

#include <cstddef>
#include <vector>

#include "seld/trackwise.h"

namespace seld {

// Dense row-major cost matrix.
struct CostMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;

  CostMatrix() = default;
  CostMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), values(r * c) {}
  double& at(std::size_t r, std::size_t c) { return values[r * cols + c]; }
  double at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
};

struct Assignment {
  // Column for each row, or -1 for a row left unassigned.
  std::vector<int> row_to_col;
  // Sum of the assigned real costs, in row order.
  double cost = 0.0;
};

// Minimum-cost assignment (shortest augmenting path Hungarian method). With
// more rows than columns the transposed problem is solved and the surplus
// rows get -1. Among optimal assignments the lexicographically smallest map
// from the shorter side is returned for problems up to kLexicographicLimit
// lines. Throws kValidation on non-finite entries.
inline constexpr std::size_t kLexicographicLimit = 32;
Assignment Hungarian(const CostMatrix& cost);

struct PitResult {
  double loss = 0.0;
  // permutation[k] is the predicted track matched to reference track k.
  std::vector<int> permutation;
};

inline constexpr double kBceEpsilon = 1e-7;

// Pair cost: mean squared (x, y, z) error over the reference track's active
// frames (0 for a track with none). Loss is the mean cost of the matched
// pairs.
CostMatrix DoaPairCosts(const ClipLabels& pred, const ClipLabels& ref);
PitResult PitDoaLoss(const ClipLabels& pred, const ClipLabels& ref);

// Pair cost: mean binary cross-entropy over frames and classes, predictions
// clamped to [eps, 1 - eps]. Probabilities outside [0, 1] are rejected.
CostMatrix SedPairCosts(const ClipLabels& pred, const ClipLabels& ref);
PitResult PitSedLoss(const ClipLabels& pred, const ClipLabels& ref);

// Single permutation chosen on doa_weight * DoA + sed_weight * SED costs.
PitResult PitJointLoss(const ClipLabels& pred, const ClipLabels& ref,
                       double doa_weight = 1.0, double sed_weight = 1.0);

}  // namespace seld

#endif  // SELD_ASSIGN_H_
