#pragma once

#include <limits>
#include <vector>

#include "isoclouds/matrix.hpp"

namespace isoclouds {

// Dense transportation solver: integer supplies and demands (equal totals),
// nonnegative real arc costs. Successive shortest augmenting paths with node
// potentials; since capacities are integers every flow value is an exact
// integer, so marginal constraints hold exactly.
struct TransportResult {
  std::vector<std::vector<long long>> flow;  // k x l
};

inline TransportResult solve_transport(const std::vector<long long>& supply,
                                       const std::vector<long long>& demand,
                                       const Matrix& cost) {
  const int k = static_cast<int>(supply.size());
  const int l = static_cast<int>(demand.size());
  if (cost.rows() != k || cost.cols() != l)
    throw InvalidInput("solve_transport: cost shape mismatch");
  long long total_s = 0, total_d = 0;
  for (long long s : supply) {
    if (s < 0) throw InvalidInput("solve_transport: negative supply");
    total_s += s;
  }
  for (long long d : demand) {
    if (d < 0) throw InvalidInput("solve_transport: negative demand");
    total_d += d;
  }
  if (total_s != total_d) throw InvalidInput("solve_transport: unbalanced totals");
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < l; ++j)
      if (!std::isfinite(cost(i, j)) || cost(i, j) < 0.0)
        throw InvalidInput("solve_transport: costs must be finite and nonnegative");

  TransportResult res;
  res.flow.assign(k, std::vector<long long>(l, 0));

  std::vector<long long> rem_s = supply, rem_d = demand;
  std::vector<double> pot_s(k, 0.0), pot_d(l, 0.0);
  const double INF = std::numeric_limits<double>::infinity();

  long long remaining = total_s;
  while (remaining > 0) {
    // Dijkstra over the bipartite residual graph, dense scan. Sources are all
    // supply nodes with remaining supply. Node ids: 0..k-1 supplies, k..k+l-1
    // demands.
    const int V = k + l;
    std::vector<double> dist(V, INF);
    std::vector<int> prev(V, -1);
    std::vector<bool> done(V, false);
    for (int i = 0; i < k; ++i)
      if (rem_s[i] > 0) dist[i] = 0.0;

    for (int iter = 0; iter < V; ++iter) {
      int u = -1;
      double best = INF;
      for (int x = 0; x < V; ++x)
        if (!done[x] && dist[x] < best) {
          best = dist[x];
          u = x;
        }
      if (u < 0) break;
      done[u] = true;
      if (u < k) {
        for (int j = 0; j < l; ++j) {
          double rc = cost(u, j) - pot_s[u] - pot_d[j];
          if (rc < 0.0) rc = 0.0;  // guard against rounding drift
          if (dist[u] + rc < dist[k + j]) {
            dist[k + j] = dist[u] + rc;
            prev[k + j] = u;
          }
        }
      } else {
        int j = u - k;
        for (int i = 0; i < k; ++i) {
          if (res.flow[i][j] <= 0) continue;
          double rc = -(cost(i, j) - pot_s[i] - pot_d[j]);
          if (rc < 0.0) rc = 0.0;
          if (dist[u] + rc < dist[i]) {
            dist[i] = dist[u] + rc;
            prev[i] = u;
          }
        }
      }
    }

    int target = -1;
    double best = INF;
    for (int j = 0; j < l; ++j)
      if (rem_d[j] > 0 && dist[k + j] < best) {
        best = dist[k + j];
        target = k + j;
      }
    if (target < 0) throw NumericalFailure("solve_transport: no augmenting path");

    // Bottleneck along the path.
    long long push = rem_d[target - k];
    for (int u = target; prev[u] != -1; u = prev[u]) {
      int w = prev[u];
      if (u >= k)
        ;  // forward arc w -> u has unlimited residual
      else
        push = std::min(push, res.flow[u][w - k]);
      if (prev[w] == -1 && w < k) push = std::min(push, rem_s[w]);
    }

    for (int u = target; prev[u] != -1; u = prev[u]) {
      int w = prev[u];
      if (u >= k)
        res.flow[w][u - k] += push;
      else
        res.flow[u][w - k] -= push;
      if (prev[w] == -1 && w < k) rem_s[w] -= push;
    }
    rem_d[target - k] -= push;
    remaining -= push;

    // Johnson potential update. Forward reduced cost is
    // cost(i,j) - pot_s[i] - pot_d[j], so the supply side accumulates with
    // the opposite sign of the demand side.
    for (int i = 0; i < k; ++i)
      if (dist[i] < INF) pot_s[i] -= dist[i];
    for (int j = 0; j < l; ++j)
      if (dist[k + j] < INF) pot_d[j] += dist[k + j];
  }

  return res;
}

}  // namespace isoclouds
