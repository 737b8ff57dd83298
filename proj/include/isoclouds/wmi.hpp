#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "isoclouds/point_cloud.hpp"
#include "isoclouds/rational.hpp"

namespace isoclouds {

struct WmiOptions {
  double quantum = 1e-9;  // equivalence-collapse grid for matrix entries
  double tau_dep = 1e-9;  // linear-dependence threshold, relative to r_A
};

// Canonical form of a matrix up to column re-ordering: entries quantized to
// multiples of quantum (round half to even), columns sorted lexicographically.
// The integer key doubles as an exact equality witness.
struct CanonicalForm {
  Matrix matrix;
  std::vector<long long> key;  // rows, cols, then quantized entries column-major
};

namespace detail {

inline CanonicalForm canonical_from_quantized(std::vector<std::vector<long long>> qcols, int n,
                                              int m, double quantum) {
  std::sort(qcols.begin(), qcols.end());
  CanonicalForm out;
  out.matrix = Matrix(n, m);
  out.key.reserve(2 + static_cast<std::size_t>(n) * m);
  out.key.push_back(n);
  out.key.push_back(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      out.key.push_back(qcols[i][j]);
      out.matrix(j, i) = static_cast<double>(qcols[i][j]) * quantum;
    }
  return out;
}

}  // namespace detail

inline CanonicalForm canonicalize_matrix(const Matrix& M, double quantum = 1e-9) {
  if (!M.all_finite()) throw InvalidInput("canonicalize_matrix: non-finite entry");
  const int n = M.rows(), m = M.cols();

  std::vector<std::vector<long long>> qcols(m, std::vector<long long>(n));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      double q = std::nearbyint(M(j, i) / quantum);
      if (std::abs(q) > 9.0e15)
        throw InvalidInput("canonicalize_matrix: entry too large for quantum grid");
      qcols[i][j] = static_cast<long long>(q);
    }
  return detail::canonical_from_quantized(std::move(qcols), n, m, quantum);
}

// Orthonormal basis attached to an ordered point sequence, or Degenerate when
// the sequence is linearly dependent. When defined, det(v_1,...,v_n) = +1.
struct SequenceBasis {
  bool degenerate = true;
  Matrix vectors;  // n x n, columns v_1..v_n
};

namespace detail {

inline double det_gauss(Matrix A) {
  const int n = A.rows();
  double det = 1.0;
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(A(r, c)) > std::abs(A(piv, c))) piv = r;
    if (A(piv, c) == 0.0) return 0.0;
    if (piv != c) {
      for (int k = 0; k < n; ++k) std::swap(A(c, k), A(piv, k));
      det = -det;
    }
    det *= A(c, c);
    for (int r = c + 1; r < n; ++r) {
      double f = A(r, c) / A(c, c);
      for (int k = c; k < n; ++k) A(r, k) -= f * A(c, k);
    }
  }
  return det;
}

// Residual of v against the first `count` orthonormal columns of basis.
inline std::vector<double> project_out(std::span<const double> v, const Matrix& basis, int count) {
  std::vector<double> r(v.begin(), v.end());
  for (int j = 0; j < count; ++j) {
    double c = dot(std::span<const double>(r), basis.col(j));
    for (int k = 0; k < static_cast<int>(r.size()); ++k) r[k] -= c * basis(k, j);
  }
  return r;
}

}  // namespace detail

// Gram–Schmidt over the n-1 sequence points of a centered cloud, then the
// last vector chosen orthogonal to the rest with positive determinant. Any
// normalization residual of norm <= tau_dep * r_A marks the sequence as
// linearly dependent (this includes a zero first point).
inline SequenceBasis basis_from_sequence(const CenteredCloud& c, std::span<const int> seq,
                                         double tau_dep = 1e-9) {
  const Matrix& P = c.cloud.coords();
  const int n = P.rows(), m = P.cols();
  if (static_cast<int>(seq.size()) != n - 1)
    throw InvalidInput("basis_from_sequence: sequence must have n-1 indices");
  for (std::size_t a = 0; a < seq.size(); ++a) {
    if (seq[a] < 0 || seq[a] >= m) throw InvalidInput("basis_from_sequence: index out of range");
    for (std::size_t b = a + 1; b < seq.size(); ++b)
      if (seq[a] == seq[b]) throw InvalidInput("basis_from_sequence: repeated index");
  }

  const double dep_tol = tau_dep * c.radius;
  SequenceBasis out;
  out.vectors = Matrix(n, n);

  for (int j = 0; j < n - 1; ++j) {
    std::vector<double> r = detail::project_out(P.col(seq[j]), out.vectors, j);
    double len = norm2(r);
    if (len <= dep_tol) return out;  // degenerate
    for (int k = 0; k < n; ++k) out.vectors(k, j) = r[k] / len;
  }

  // Complete with the unit vector orthogonal to v_1..v_{n-1}, seeded from the
  // standard basis vector with the largest residual.
  if (n >= 1) {
    std::vector<double> best;
    double best_len = -1.0;
    for (int e = 0; e < n; ++e) {
      std::vector<double> axis(n, 0.0);
      axis[e] = 1.0;
      std::vector<double> r = detail::project_out(axis, out.vectors, n - 1);
      double len = norm2(r);
      if (len > best_len) {
        best_len = len;
        best = std::move(r);
      }
    }
    for (int k = 0; k < n; ++k) out.vectors(k, n - 1) = best[k] / best_len;
    if (detail::det_gauss(out.vectors) < 0.0)
      for (int k = 0; k < n; ++k) out.vectors(k, n - 1) = -out.vectors(k, n - 1);
  }

  out.degenerate = false;
  return out;
}

// One collapsed matrix of a weighted matrices invariant. The matrix is the
// canonical (quantized, column-sorted) representative; the weight is an exact
// rational k/N.
struct WeightedMatrix {
  Matrix matrix;
  std::vector<long long> key;
  Rational weight;
};

struct WmiDistribution {
  std::vector<WeightedMatrix> entries;
  int n = 0;
  int m = 0;
  double quantum = 1e-9;

  Rational total_weight() const {
    Rational s(0);
    for (const auto& e : entries) s = s + e.weight;
    return s;
  }
};

namespace detail {

inline WmiDistribution collapse(std::vector<Matrix> mats, int n, int m, long long N,
                                double quantum) {
  std::map<std::vector<long long>, std::pair<Matrix, long long>> groups;
  for (Matrix& M : mats) {
    CanonicalForm cf = canonicalize_matrix(M, quantum);
    auto it = groups.find(cf.key);
    if (it == groups.end())
      groups.emplace(std::move(cf.key), std::make_pair(std::move(cf.matrix), 1LL));
    else
      ++it->second.second;
  }
  WmiDistribution out;
  out.n = n;
  out.m = m;
  out.quantum = quantum;
  out.entries.reserve(groups.size());
  for (auto& [key, mk] : groups)
    out.entries.push_back(WeightedMatrix{std::move(mk.first), key, Rational(mk.second, N)});
  return out;
}

}  // namespace detail

// Weighted matrices invariant of a planar cloud: one matrix per point p,
// writing the whole cloud in the basis (p/|p|, its +90 degree rotation).
// A point at the origin contributes the zero matrix (centered case).
inline WmiDistribution wmi_2d(const CenteredCloud& c, const WmiOptions& opt = {}) {
  const Matrix& P = c.cloud.coords();
  if (P.rows() != 2) throw InvalidInput("wmi_2d: dimension must be 2");
  const int m = P.cols();
  const double dep_tol = opt.tau_dep * c.radius;

  std::vector<Matrix> mats;
  mats.reserve(m);
  for (int i = 0; i < m; ++i) {
    double px = P(0, i), py = P(1, i);
    double len = std::hypot(px, py);
    if (len <= dep_tol) {
      mats.emplace_back(2, m);
      continue;
    }
    double v1x = px / len, v1y = py / len;
    // v2 is v1 rotated anti-clockwise by +pi/2, so det(v1, v2) = +1.
    double v2x = -v1y, v2y = v1x;
    Matrix M(2, m);
    for (int k = 0; k < m; ++k) {
      M(0, k) = P(0, k) * v1x + P(1, k) * v1y;
      M(1, k) = P(0, k) * v2x + P(1, k) * v2y;
    }
    mats.push_back(std::move(M));
  }
  return detail::collapse(std::move(mats), 2, m, m, opt.quantum);
}

// Weighted matrices invariant for any cloud in dimension n >= 2: one matrix
// per ordered sequence of n-1 distinct points (N = m(m-1)...(m-n+2) of them),
// each written in the oriented orthonormal basis the sequence defines.
// Degenerate sequences contribute the zero matrix. Equivalent matrices are
// collapsed with exact rational weights summing to one.
inline WmiDistribution wmi(const CenteredCloud& c, const WmiOptions& opt = {}) {
  const Matrix& P = c.cloud.coords();
  const int n = P.rows(), m = P.cols();
  if (n < 2) throw InvalidInput("wmi: dimension must be >= 2");
  if (n == 2) return wmi_2d(c, opt);
  if (m < n - 1) throw InvalidInput("wmi: need at least n-1 points");

  long long N = 1;
  for (int t = 0; t < n - 1; ++t) N *= (m - t);

  std::vector<Matrix> mats;
  mats.reserve(static_cast<std::size_t>(N));
  std::vector<int> seq(n - 1);
  std::vector<bool> used(m, false);

  std::function<void(int)> enumerate = [&](int depth) {
    if (depth == n - 1) {
      SequenceBasis basis = basis_from_sequence(c, seq, opt.tau_dep);
      if (basis.degenerate) {
        mats.emplace_back(n, m);
        return;
      }
      Matrix M(n, m);
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < m; ++i) M(j, i) = dot(P.col(i), basis.vectors.col(j));
      mats.push_back(std::move(M));
      return;
    }
    for (int i = 0; i < m; ++i) {
      if (used[i]) continue;
      used[i] = true;
      seq[depth] = i;
      enumerate(depth + 1);
      used[i] = false;
    }
  };
  enumerate(0);

  return detail::collapse(std::move(mats), n, m, N, opt.quantum);
}

// The invariant of any mirror image: negate the last row of every matrix and
// re-canonicalize. Weights are preserved; applying twice is the identity.
// Works on the quantized integer keys, so the involution is exact.
inline WmiDistribution mirror_wmi(const WmiDistribution& w) {
  std::map<std::vector<long long>, WeightedMatrix> groups;
  for (const auto& e : w.entries) {
    const int n = static_cast<int>(e.key[0]);
    const int m = static_cast<int>(e.key[1]);
    std::vector<std::vector<long long>> qcols(m, std::vector<long long>(n));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) {
        long long q = e.key[2 + static_cast<std::size_t>(i) * n + j];
        qcols[i][j] = (j == n - 1) ? -q : q;
      }
    CanonicalForm cf = detail::canonical_from_quantized(std::move(qcols), n, m, w.quantum);
    auto it = groups.find(cf.key);
    if (it == groups.end())
      groups.emplace(cf.key, WeightedMatrix{std::move(cf.matrix), cf.key, e.weight});
    else
      it->second.weight = it->second.weight + e.weight;
  }
  WmiDistribution out;
  out.n = w.n;
  out.m = w.m;
  out.quantum = w.quantum;
  for (auto& [key, wm] : groups) out.entries.push_back(std::move(wm));
  return out;
}

}  // namespace isoclouds
