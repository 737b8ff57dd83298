#pragma once

#include <numeric>
#include <optional>
#include <vector>

#include "isoclouds/assignment.hpp"
#include "isoclouds/bottleneck.hpp"
#include "isoclouds/min_cost_flow.hpp"
#include "isoclouds/wmi.hpp"

namespace isoclouds {

// An optimal transport plan with exact rational entries: numerators over a
// common denominator. Feasibility (marginals bounded by the weights, total
// flow one) is checkable in integer arithmetic.
struct FlowMatrix {
  int rows = 0;
  int cols = 0;
  long long denom = 1;
  std::vector<long long> numer;  // row-major
  std::vector<Rational> row_weights, col_weights;

  Rational at(int i, int j) const {
    return Rational(numer[static_cast<std::size_t>(i) * cols + j], denom);
  }

  bool feasible() const {
    long long total = 0;
    for (int i = 0; i < rows; ++i) {
      long long s = 0;
      for (int j = 0; j < cols; ++j) {
        long long f = numer[static_cast<std::size_t>(i) * cols + j];
        if (f < 0) return false;
        s += f;
      }
      if (!(Rational(s, denom) <= row_weights[i])) return false;
      total += s;
    }
    for (int j = 0; j < cols; ++j) {
      long long s = 0;
      for (int i = 0; i < rows; ++i) s += numer[static_cast<std::size_t>(i) * cols + j];
      if (!(Rational(s, denom) <= col_weights[j])) return false;
    }
    return Rational(total, denom) == Rational(1);
  }
};

// Value of a metric plus the witness realizing it: a bijection for
// assignment-based metrics, a flow for transport-based ones.
struct MetricReport {
  double value = 0.0;
  std::vector<int> assignment;  // row i matched to assignment[i]; empty for flows
  std::optional<FlowMatrix> flow;
};

inline MetricReport assignment_min_cost(const Matrix& C) {
  AssignmentResult res = assignment_min_cost_square(C);
  MetricReport rep;
  rep.value = res.cost;
  rep.assignment = std::move(res.row_to_col);
  return rep;
}

namespace detail {

// Earth mover's distance with exact rational weights. Weights are scaled to
// a common integer denominator so the transport solve is exact.
inline MetricReport emd_impl(const std::vector<Rational>& wC, const std::vector<Rational>& wD,
                             const Matrix& cost) {
  const int k = static_cast<int>(wC.size());
  const int l = static_cast<int>(wD.size());

  long long D = 1;
  for (const Rational& w : wC) D = std::lcm(D, w.den);
  for (const Rational& w : wD) D = std::lcm(D, w.den);

  std::vector<long long> supply(k), demand(l);
  for (int i = 0; i < k; ++i) supply[i] = wC[i].num * (D / wC[i].den);
  for (int j = 0; j < l; ++j) demand[j] = wD[j].num * (D / wD[j].den);

  TransportResult tr = solve_transport(supply, demand, cost);

  MetricReport rep;
  FlowMatrix fm;
  fm.rows = k;
  fm.cols = l;
  fm.denom = D;
  fm.numer.resize(static_cast<std::size_t>(k) * l);
  fm.row_weights = wC;
  fm.col_weights = wD;
  double total = 0.0;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < l; ++j) {
      long long f = tr.flow[i][j];
      fm.numer[static_cast<std::size_t>(i) * l + j] = f;
      total += static_cast<double>(f) * cost(i, j);
    }
  rep.value = total / static_cast<double>(D);
  rep.flow = std::move(fm);
  return rep;
}

// Deterministic orientation of an EMD instance: true if the transposed
// instance compares lexicographically smaller, in which case solving the
// swapped problem (and transposing the witness back) makes emd(C,D) and
// emd(D,C) run the bit-identical computation.
inline bool emd_should_swap(const std::vector<Rational>& wC, const std::vector<Rational>& wD,
                            const Matrix& cost) {
  auto cmp3 = [](long long a, long long b) { return a < b ? -1 : (a > b ? 1 : 0); };
  if (int c = cmp3(static_cast<long long>(wC.size()), static_cast<long long>(wD.size())); c != 0)
    return c > 0;
  const int k = static_cast<int>(wC.size()), l = static_cast<int>(wD.size());
  for (int i = 0; i < std::max(k, l); ++i) {
    const Rational& a = i < k ? wC[i] : Rational(0);
    const Rational& b = i < l ? wD[i] : Rational(0);
    if (a < b) return false;
    if (b < a) return true;
  }
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < l; ++j) {
      double fwd = cost(i, j), bwd = cost(j, i);
      // Only meaningful for square instances; rectangular ones were decided
      // by the size comparison above.
      if (fwd < bwd) return false;
      if (bwd < fwd) return true;
    }
  return false;
}

inline FlowMatrix transpose_flow(const FlowMatrix& f) {
  FlowMatrix t;
  t.rows = f.cols;
  t.cols = f.rows;
  t.denom = f.denom;
  t.row_weights = f.col_weights;
  t.col_weights = f.row_weights;
  t.numer.resize(f.numer.size());
  for (int i = 0; i < f.rows; ++i)
    for (int j = 0; j < f.cols; ++j)
      t.numer[static_cast<std::size_t>(j) * f.rows + i] =
          f.numer[static_cast<std::size_t>(i) * f.cols + j];
  return t;
}

}  // namespace detail

// Earth mover's distance between weighted distributions under a precomputed
// cost matrix. Both weight vectors must be positive and sum to exactly one.
inline MetricReport emd(const std::vector<Rational>& wC, const std::vector<Rational>& wD,
                        const Matrix& cost) {
  if (static_cast<int>(wC.size()) != cost.rows() || static_cast<int>(wD.size()) != cost.cols())
    throw InvalidInput("emd: weight/cost size mismatch");
  Rational sC(0), sD(0);
  for (const Rational& w : wC) {
    if (!(Rational(0) < w)) throw InvalidInput("emd: weights must be positive");
    sC = sC + w;
  }
  for (const Rational& w : wD) {
    if (!(Rational(0) < w)) throw InvalidInput("emd: weights must be positive");
    sD = sD + w;
  }
  if (sC != Rational(1) || sD != Rational(1))
    throw InvalidInput("emd: weights must sum to exactly one");

  if (detail::emd_should_swap(wC, wD, cost)) {
    MetricReport rep = detail::emd_impl(wD, wC, transpose(cost));
    rep.flow = detail::transpose_flow(*rep.flow);
    return rep;
  }
  return detail::emd_impl(wC, wD, cost);
}

// EMD between two matrices viewed as distributions of their columns with
// equal weights, ground distance Minkowski. Column counts may differ.
inline MetricReport emd_columns_report(const Matrix& P, const Matrix& Q) {
  if (P.rows() != Q.rows()) throw InvalidInput("emd_columns: dimension mismatch");
  const int mp = P.cols(), mq = Q.cols();
  Matrix cost(mp, mq);
  for (int i = 0; i < mp; ++i)
    for (int j = 0; j < mq; ++j) cost(i, j) = minkowski_dist(P.col(i), Q.col(j));
  std::vector<Rational> wp(mp, Rational(1, mp)), wq(mq, Rational(1, mq));
  return emd(wp, wq, cost);
}

inline double emd_columns(const Matrix& P, const Matrix& Q) {
  return emd_columns_report(P, Q).value;
}

namespace detail {

inline long long full_multiplicity(int n, int m) {
  long long N = 1;
  for (int t = 0; t < n - 1; ++t) N *= (m - t);
  return N;
}

inline bool wmi_should_swap(const WmiDistribution& A, const WmiDistribution& B) {
  if (A.entries.size() != B.entries.size()) return A.entries.size() > B.entries.size();
  for (std::size_t e = 0; e < A.entries.size(); ++e) {
    if (A.entries[e].key < B.entries[e].key) return false;
    if (B.entries[e].key < A.entries[e].key) return true;
  }
  return false;
}

inline MetricReport lac_impl(const WmiDistribution& WA, const WmiDistribution& WB) {
  const long long N = full_multiplicity(WA.n, WA.m);

  auto expand = [N](const WmiDistribution& W) {
    std::vector<int> owner;
    for (int e = 0; e < static_cast<int>(W.entries.size()); ++e) {
      const Rational& w = W.entries[e].weight;
      if (N % w.den != 0) throw InvalidInput("lac: weight is not a multiple of 1/N");
      long long mult = w.num * (N / w.den);
      for (long long c = 0; c < mult; ++c) owner.push_back(e);
    }
    if (static_cast<long long>(owner.size()) != N)
      throw InvalidInput("lac: weights do not sum to one");
    return owner;
  };
  std::vector<int> ea = expand(WA), eb = expand(WB);

  const int ka = static_cast<int>(WA.entries.size());
  const int kb = static_cast<int>(WB.entries.size());
  Matrix dist(ka, kb);
  for (int a = 0; a < ka; ++a)
    for (int b = 0; b < kb; ++b) dist(a, b) = bottleneck(WA.entries[a].matrix, WB.entries[b].matrix);

  Matrix C(static_cast<int>(N), static_cast<int>(N));
  for (long long r = 0; r < N; ++r)
    for (long long c = 0; c < N; ++c) C(static_cast<int>(r), static_cast<int>(c)) = dist(ea[r], eb[c]);

  return assignment_min_cost(C);
}

}  // namespace detail

// Linear assignment cost between two weighted matrices invariants of clouds
// with equal m and n: both distributions are expanded to their full
// multiplicity N and matched by an exact minimum-sum bijection of bottleneck
// distances. Zero exactly on orientation-preserving isometry classes.
inline MetricReport lac(const WmiDistribution& WA, const WmiDistribution& WB) {
  if (WA.n != WB.n) throw InvalidInput("lac: dimension mismatch");
  if (WA.m != WB.m) throw InvalidInput("lac: point count mismatch");

  if (detail::wmi_should_swap(WA, WB)) {
    MetricReport rep = detail::lac_impl(WB, WA);
    std::vector<int> inv(rep.assignment.size());
    for (int i = 0; i < static_cast<int>(rep.assignment.size()); ++i) inv[rep.assignment[i]] = i;
    rep.assignment = std::move(inv);
    return rep;
  }
  return detail::lac_impl(WA, WB);
}

// Isometry metric including reflections: the smaller of LAC against the
// invariant and against its mirror image.
inline double lac_isometry(const PointCloud& A, const PointCloud& B, const WmiOptions& opt = {}) {
  if (A.dim() != B.dim()) throw InvalidInput("lac_isometry: dimension mismatch");
  if (A.size() != B.size()) throw InvalidInput("lac_isometry: point count mismatch");
  WmiDistribution WA = wmi(center(A), opt);
  WmiDistribution WB = wmi(center(B), opt);
  double direct = lac(WA, WB).value;
  double mirrored = lac(mirror_wmi(WA), WB).value;
  return std::min(direct, mirrored);
}

// Nested EMD between weighted matrices invariants: outer transport over the
// weighted matrices, inner cost the column EMD. Cloud sizes may differ.
inline MetricReport emd_wmi(const WmiDistribution& WA, const WmiDistribution& WB) {
  if (WA.n != WB.n) throw InvalidInput("emd_wmi: dimension mismatch");
  const int ka = static_cast<int>(WA.entries.size());
  const int kb = static_cast<int>(WB.entries.size());
  Matrix cost(ka, kb);
  for (int a = 0; a < ka; ++a)
    for (int b = 0; b < kb; ++b)
      cost(a, b) = emd_columns(WA.entries[a].matrix, WB.entries[b].matrix);
  std::vector<Rational> wa, wb;
  wa.reserve(ka);
  wb.reserve(kb);
  for (const auto& e : WA.entries) wa.push_back(e.weight);
  for (const auto& e : WB.entries) wb.push_back(e.weight);
  return emd(wa, wb, cost);
}

}  // namespace isoclouds
