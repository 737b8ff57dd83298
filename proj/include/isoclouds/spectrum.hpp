#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "isoclouds/matrix.hpp"

namespace isoclouds {

// Eigendecomposition of a symmetric matrix: eigenvalues sorted non-increasing
// with matching orthonormal eigenvectors in the columns of basis, and the
// minimum spectral gap min_j (lambda_j - lambda_{j+1}) with lambda_{n+1} = 0.
struct CovarianceSpectrum {
  std::vector<double> eigenvalues;
  Matrix basis;
  double gap = 0.0;

  int dim() const { return static_cast<int>(eigenvalues.size()); }
};

// Cyclic Jacobi rotations for symmetric matrices. Deterministic: fixed sweep
// order and a fixed sign convention (each eigenvector's largest-magnitude
// coordinate is made positive, ties broken by lowest index). Tiny negative
// eigenvalues from positive semi-definite inputs are clamped to zero.
inline CovarianceSpectrum eigen_sym(const Matrix& M, int max_sweeps = 100) {
  if (M.rows() != M.cols()) throw InvalidInput("eigen_sym: matrix not square");
  const int n = M.rows();

  Matrix A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = 0.5 * (M(i, j) + M(j, i));
  Matrix V = Matrix::identity(n);

  double fro = 0.0;
  for (double x : A.data()) fro += x * x;
  fro = std::sqrt(fro);
  const double off_tol = 1e-12 * std::max(fro, 1.0);

  auto off_mass = [&]() {
    double s = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) s += 2.0 * A(p, q) * A(p, q);
    return std::sqrt(s);
  };

  int sweep = 0;
  while (off_mass() > off_tol) {
    if (++sweep > max_sweeps) throw NumericalFailure("eigen_sym: no convergence");
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        double apq = A(p, q);
        if (apq == 0.0) continue;
        double theta = (A(q, q) - A(p, p)) / (2.0 * apq);
        double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (int k = 0; k < n; ++k) {
          double akp = A(k, p), akq = A(k, q);
          A(k, p) = c * akp - s * akq;
          A(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          double apk = A(p, k), aqk = A(q, k);
          A(p, k) = c * apk - s * aqk;
          A(q, k) = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          double vkp = V(k, p), vkq = V(k, q);
          V(k, p) = c * vkp - s * vkq;
          V(k, q) = s * vkp + c * vkq;
        }
      }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return A(a, a) > A(b, b); });

  CovarianceSpectrum spec;
  spec.eigenvalues.resize(n);
  spec.basis = Matrix(n, n);
  double lam_scale = n > 0 ? std::max(std::abs(A(order[0], order[0])), 1.0) : 1.0;
  for (int j = 0; j < n; ++j) {
    double lam = A(order[j], order[j]);
    if (lam < 0.0 && lam >= -1e-12 * lam_scale) lam = 0.0;
    spec.eigenvalues[j] = lam;

    int src = order[j];
    int arg = 0;
    for (int k = 1; k < n; ++k)
      if (std::abs(V(k, src)) > std::abs(V(arg, src))) arg = k;
    double sgn = V(arg, src) < 0.0 ? -1.0 : 1.0;
    for (int k = 0; k < n; ++k) spec.basis(k, j) = sgn * V(k, src);
  }

  spec.gap = spec.eigenvalues.empty() ? 0.0 : spec.eigenvalues.back();
  for (int j = 0; j + 1 < n; ++j)
    spec.gap = std::min(spec.gap, spec.eigenvalues[j] - spec.eigenvalues[j + 1]);
  return spec;
}

// Spectral norm of a symmetric matrix (largest |eigenvalue|).
inline double sym_2norm(const Matrix& M) {
  CovarianceSpectrum s = eigen_sym(M);
  double r = 0.0;
  for (double lam : s.eigenvalues) r = std::max(r, std::abs(lam));
  return r;
}

// Maximum norm: largest absolute row sum.
inline double max_row_sum_norm(const Matrix& M) {
  double r = 0.0;
  for (int i = 0; i < M.rows(); ++i) {
    double s = 0.0;
    for (int j = 0; j < M.cols(); ++j) s += std::abs(M(i, j));
    r = std::max(r, s);
  }
  return r;
}

}  // namespace isoclouds
