#pragma once

#include <limits>
#include <vector>

#include "isoclouds/matrix.hpp"

namespace isoclouds {

struct AssignmentResult {
  double cost = 0.0;
  std::vector<int> row_to_col;
};

// Exact minimum-cost perfect assignment on a square nonnegative cost matrix.
// Shortest augmenting paths with dual potentials, one row added per phase,
// O(k^3) total. Deterministic tie-breaking: scans columns in index order.
inline AssignmentResult assignment_min_cost_square(const Matrix& C) {
  if (C.rows() != C.cols()) throw InvalidInput("assignment: cost matrix not square");
  const int k = C.rows();
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (!std::isfinite(C(i, j)) || C(i, j) < 0.0)
        throw InvalidInput("assignment: costs must be finite and nonnegative");

  const double INF = std::numeric_limits<double>::infinity();
  // 1-based with a virtual column 0, the classic potentials formulation.
  std::vector<double> u(k + 1, 0.0), v(k + 1, 0.0);
  std::vector<int> p(k + 1, 0), way(k + 1, 0);

  for (int i = 1; i <= k; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(k + 1, INF);
    std::vector<bool> used(k + 1, false);
    do {
      used[j0] = true;
      int i0 = p[j0], j1 = -1;
      double delta = INF;
      for (int j = 1; j <= k; ++j) {
        if (used[j]) continue;
        double cur = C(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= k; ++j) {
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
      int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  AssignmentResult res;
  res.row_to_col.assign(k, -1);
  for (int j = 1; j <= k; ++j) res.row_to_col[p[j] - 1] = j - 1;
  for (int i = 0; i < k; ++i) res.cost += C(i, res.row_to_col[i]);
  return res;
}

}  // namespace isoclouds
