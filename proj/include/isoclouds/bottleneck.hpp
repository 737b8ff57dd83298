#pragma once

#include <algorithm>
#include <functional>
#include <queue>
#include <vector>

#include "isoclouds/matrix.hpp"

namespace isoclouds {

namespace detail {

// Hopcroft–Karp maximum matching on a bipartite graph given as adjacency
// lists for the left side. Returns the matching size.
inline int max_bipartite_matching(const std::vector<std::vector<int>>& adj, int nright) {
  const int nleft = static_cast<int>(adj.size());
  const int INF = 1 << 30;
  std::vector<int> match_l(nleft, -1), match_r(nright, -1), dist(nleft);

  auto bfs = [&]() {
    std::queue<int> q;
    bool found = false;
    for (int u = 0; u < nleft; ++u) {
      if (match_l[u] < 0) {
        dist[u] = 0;
        q.push(u);
      } else {
        dist[u] = INF;
      }
    }
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int v : adj[u]) {
        int w = match_r[v];
        if (w < 0) {
          found = true;
        } else if (dist[w] == INF) {
          dist[w] = dist[u] + 1;
          q.push(w);
        }
      }
    }
    return found;
  };

  std::function<bool(int)> dfs = [&](int u) {
    for (int v : adj[u]) {
      int w = match_r[v];
      if (w < 0 || (dist[w] == dist[u] + 1 && dfs(w))) {
        match_l[u] = v;
        match_r[v] = u;
        return true;
      }
    }
    dist[u] = INF;
    return false;
  };

  int matched = 0;
  while (bfs())
    for (int u = 0; u < nleft; ++u)
      if (match_l[u] < 0 && dfs(u)) ++matched;
  return matched;
}

}  // namespace detail

// Exact bottleneck distance between two equal-size sets of matrix columns
// under the Minkowski metric: the minimum over column bijections of the
// maximum per-pair distance. Binary search over the sorted multiset of all
// k^2 pairwise distances, feasibility tested by maximum bipartite matching,
// so the result is always an exact member of that multiset.
inline double bottleneck(const Matrix& P, const Matrix& Q) {
  if (P.rows() != Q.rows()) throw InvalidInput("bottleneck: dimension mismatch");
  if (P.cols() != Q.cols()) throw InvalidInput("bottleneck: column count mismatch");
  const int k = P.cols();

  std::vector<double> D(static_cast<std::size_t>(k) * k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) D[static_cast<std::size_t>(i) * k + j] = minkowski_dist(P.col(i), Q.col(j));

  std::vector<double> vals = D;
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());

  auto feasible = [&](double t) {
    std::vector<std::vector<int>> adj(k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        if (D[static_cast<std::size_t>(i) * k + j] <= t) adj[i].push_back(j);
    return detail::max_bipartite_matching(adj, k) == k;
  };

  int lo = 0, hi = static_cast<int>(vals.size()) - 1;
  while (lo < hi) {
    int mid = lo + (hi - lo) / 2;
    if (feasible(vals[mid]))
      hi = mid;
    else
      lo = mid + 1;
  }
  return vals[lo];
}

}  // namespace isoclouds
