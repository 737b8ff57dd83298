#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "isoclouds/errors.hpp"

namespace isoclouds {

// Dense real matrix, column-major so a column can be handed out as a
// contiguous span. Columns double as points of a cloud throughout.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, fill) {
    if (rows < 0 || cols < 0) throw InvalidInput("negative matrix dimension");
  }

  // Rows listed top to bottom, in ordinary notation order.
  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    int r = static_cast<int>(rows.size());
    int c = r == 0 ? 0 : static_cast<int>(rows.begin()->size());
    Matrix M(r, c);
    int i = 0;
    for (const auto& row : rows) {
      if (static_cast<int>(row.size()) != c) throw InvalidInput("ragged row list");
      int j = 0;
      for (double x : row) M(i, j++) = x;
      ++i;
    }
    return M;
  }

  static Matrix identity(int n) {
    Matrix M(n, n);
    for (int i = 0; i < n; ++i) M(i, i) = 1.0;
    return M;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double& operator()(int r, int c) { return a_[static_cast<std::size_t>(c) * rows_ + r]; }
  double operator()(int r, int c) const { return a_[static_cast<std::size_t>(c) * rows_ + r]; }

  std::span<const double> col(int c) const {
    return {a_.data() + static_cast<std::size_t>(c) * rows_, static_cast<std::size_t>(rows_)};
  }
  std::span<double> col(int c) {
    return {a_.data() + static_cast<std::size_t>(c) * rows_, static_cast<std::size_t>(rows_)};
  }

  const std::vector<double>& data() const { return a_; }

  bool all_finite() const {
    for (double x : a_)
      if (!std::isfinite(x)) return false;
    return true;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> a_;
};

inline Matrix transpose(const Matrix& M) {
  Matrix T(M.cols(), M.rows());
  for (int j = 0; j < M.cols(); ++j)
    for (int i = 0; i < M.rows(); ++i) T(j, i) = M(i, j);
  return T;
}

inline Matrix multiply(const Matrix& A, const Matrix& B) {
  if (A.cols() != B.rows()) throw InvalidInput("matrix product shape mismatch");
  Matrix C(A.rows(), B.cols());
  for (int j = 0; j < B.cols(); ++j)
    for (int k = 0; k < A.cols(); ++k) {
      double b = B(k, j);
      for (int i = 0; i < A.rows(); ++i) C(i, j) += A(i, k) * b;
    }
  return C;
}

inline double max_abs(const Matrix& M) {
  double r = 0.0;
  for (double x : M.data()) r = std::max(r, std::abs(x));
  return r;
}

inline double dot(std::span<const double> u, std::span<const double> v) {
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

inline double norm2(std::span<const double> u) { return std::sqrt(dot(u, u)); }

// Minkowski (L-infinity) distance between vectors of equal dimension.
inline double minkowski_dist(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw InvalidInput("minkowski_dist: dimension mismatch");
  double r = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) r = std::max(r, std::abs(u[i] - v[i]));
  return r;
}

}  // namespace isoclouds
