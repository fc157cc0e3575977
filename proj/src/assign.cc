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

#include "seld/assign.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "seld/error.h"

namespace seld {

namespace {

// Rows <= cols. Returns the column of each row.
std::vector<int> SolveRectangular(const CostMatrix& c) {
  const std::size_t n = c.rows;
  const std::size_t m = c.cols;
  const double inf = std::numeric_limits<double>::infinity();
  // 1-based potentials and matching as in the classic O(n^2 m) formulation.
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0), minv(m + 1);
  std::vector<std::size_t> p(m + 1, 0), way(m + 1, 0);
  std::vector<char> used(m + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double cur = c.at(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= m; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> row_to_col(n, -1);
  for (std::size_t j = 1; j <= m; ++j) {
    if (p[j] != 0) row_to_col[p[j] - 1] = static_cast<int>(j - 1);
  }
  return row_to_col;
}

double SumCost(const CostMatrix& c, const std::vector<int>& row_to_col) {
  double s = 0.0;
  for (std::size_t i = 0; i < c.rows; ++i) {
    s += c.at(i, static_cast<std::size_t>(row_to_col[i]));
  }
  return s;
}

// Optimal cost of rows [first, rows) over the columns not in `taken`.
double RemainderCost(const CostMatrix& c, std::size_t first,
                     const std::vector<char>& taken) {
  std::vector<std::size_t> cols;
  for (std::size_t j = 0; j < c.cols; ++j) {
    if (!taken[j]) cols.push_back(j);
  }
  CostMatrix sub(c.rows - first, cols.size());
  for (std::size_t i = first; i < c.rows; ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      sub.at(i - first, j) = c.at(i, cols[j]);
    }
  }
  if (sub.rows == 0) return 0.0;
  return SumCost(sub, SolveRectangular(sub));
}

// Walks rows in order, giving each the smallest column that still admits an
// optimal completion.
std::vector<int> Lexicographic(const CostMatrix& c, double optimum) {
  const double tol = 1e-9 * (1.0 + std::abs(optimum));
  std::vector<int> row_to_col(c.rows, -1);
  std::vector<char> taken(c.cols, 0);
  double fixed = 0.0;
  for (std::size_t i = 0; i < c.rows; ++i) {
    for (std::size_t j = 0; j < c.cols; ++j) {
      if (taken[j]) continue;
      taken[j] = 1;
      const double total = fixed + c.at(i, j) + RemainderCost(c, i + 1, taken);
      if (total <= optimum + tol) {
        row_to_col[i] = static_cast<int>(j);
        fixed += c.at(i, j);
        break;
      }
      taken[j] = 0;
    }
  }
  return row_to_col;
}

}  // namespace

Assignment Hungarian(const CostMatrix& cost) {
  if (cost.values.size() != cost.rows * cost.cols) {
    throw Error(ErrorCode::kShape, "assign", "cost matrix size mismatch");
  }
  for (double v : cost.values) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kValidation, "assign",
                  "cost matrix has a non-finite entry");
    }
  }
  Assignment out;
  if (cost.rows == 0) return out;

  if (cost.rows > cost.cols) {
    // Solve the transposed problem; rows it leaves out get -1.
    CostMatrix t(cost.cols, cost.rows);
    for (std::size_t i = 0; i < cost.rows; ++i) {
      for (std::size_t j = 0; j < cost.cols; ++j) t.at(j, i) = cost.at(i, j);
    }
    const Assignment ta = Hungarian(t);
    out.row_to_col.assign(cost.rows, -1);
    for (std::size_t j = 0; j < cost.cols; ++j) {
      out.row_to_col[static_cast<std::size_t>(ta.row_to_col[j])] =
          static_cast<int>(j);
    }
  } else {
    out.row_to_col = SolveRectangular(cost);
    if (cost.rows <= kLexicographicLimit) {
      out.row_to_col = Lexicographic(cost, SumCost(cost, out.row_to_col));
    }
  }
  for (std::size_t i = 0; i < cost.rows; ++i) {
    if (out.row_to_col[i] >= 0) {
      out.cost += cost.at(i, static_cast<std::size_t>(out.row_to_col[i]));
    }
  }
  return out;
}

namespace {

void CheckSameShape(const ClipLabels& pred, const ClipLabels& ref,
                    bool need_classes) {
  if (pred.num_tracks() != ref.num_tracks() ||
      pred.num_frames() != ref.num_frames() ||
      (need_classes && pred.num_classes() != ref.num_classes())) {
    throw Error(ErrorCode::kShape, "assign",
                "prediction and reference label shapes differ");
  }
}

PitResult Solve(const CostMatrix& cost) {
  const Assignment a = Hungarian(cost);
  PitResult r;
  r.permutation = a.row_to_col;
  r.loss = cost.rows == 0 ? 0.0 : a.cost / static_cast<double>(cost.rows);
  return r;
}

}  // namespace

CostMatrix DoaPairCosts(const ClipLabels& pred, const ClipLabels& ref) {
  CheckSameShape(pred, ref, false);
  const std::size_t k_count = ref.num_tracks();
  CostMatrix cost(k_count, k_count);
  for (std::size_t kr = 0; kr < k_count; ++kr) {
    for (std::size_t kp = 0; kp < k_count; ++kp) {
      double acc = 0.0;
      std::size_t n = 0;
      for (std::size_t t = 0; t < ref.num_frames(); ++t) {
        if (!ref.active(kr, t)) continue;
        const DirectionVector diff = pred.direction(kp, t) - ref.direction(kr, t);
        acc += Dot(diff, diff);
        ++n;
      }
      cost.at(kr, kp) = n == 0 ? 0.0 : acc / static_cast<double>(n);
    }
  }
  return cost;
}

CostMatrix SedPairCosts(const ClipLabels& pred, const ClipLabels& ref) {
  CheckSameShape(pred, ref, true);
  const std::size_t k_count = ref.num_tracks();
  const std::size_t cells = ref.num_frames() * ref.num_classes();
  for (std::size_t k = 0; k < k_count; ++k) {
    for (std::size_t t = 0; t < pred.num_frames(); ++t) {
      for (std::size_t c = 0; c < pred.num_classes(); ++c) {
        const double p = pred.class_prob(k, t, c);
        if (!(p >= 0.0 && p <= 1.0)) {
          throw Error(ErrorCode::kValidation, "assign",
                      "predicted probability " + std::to_string(p) +
                          " outside [0, 1]");
        }
      }
    }
  }
  CostMatrix cost(k_count, k_count);
  for (std::size_t kr = 0; kr < k_count; ++kr) {
    for (std::size_t kp = 0; kp < k_count; ++kp) {
      double acc = 0.0;
      for (std::size_t t = 0; t < ref.num_frames(); ++t) {
        for (std::size_t c = 0; c < ref.num_classes(); ++c) {
          const double p = std::clamp(pred.class_prob(kp, t, c), kBceEpsilon,
                                      1.0 - kBceEpsilon);
          const double y = ref.class_prob(kr, t, c);
          acc -= y * std::log(p) + (1.0 - y) * std::log(1.0 - p);
        }
      }
      cost.at(kr, kp) = cells == 0 ? 0.0 : acc / static_cast<double>(cells);
    }
  }
  return cost;
}

PitResult PitDoaLoss(const ClipLabels& pred, const ClipLabels& ref) {
  return Solve(DoaPairCosts(pred, ref));
}

PitResult PitSedLoss(const ClipLabels& pred, const ClipLabels& ref) {
  return Solve(SedPairCosts(pred, ref));
}

PitResult PitJointLoss(const ClipLabels& pred, const ClipLabels& ref,
                       double doa_weight, double sed_weight) {
  const CostMatrix doa = DoaPairCosts(pred, ref);
  const CostMatrix sed = SedPairCosts(pred, ref);
  CostMatrix joint(doa.rows, doa.cols);
  for (std::size_t i = 0; i < joint.values.size(); ++i) {
    joint.values[i] = doa_weight * doa.values[i] + sed_weight * sed.values[i];
  }
  return Solve(joint);
}

}  // namespace seld
