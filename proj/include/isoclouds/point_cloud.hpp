#pragma once

#include <utility>
#include <vector>

#include "isoclouds/matrix.hpp"

namespace isoclouds {

// Finite multiset of m unlabeled points in R^n, stored as the columns of an
// n x m matrix. Duplicate points are legal; column order carries no meaning
// for any of the invariants or metrics built on top.
class PointCloud {
 public:
  explicit PointCloud(Matrix points) : pts_(std::move(points)) {
    if (pts_.rows() < 1) throw InvalidInput("point cloud needs dimension >= 1");
    if (pts_.cols() < 1) throw InvalidInput("point cloud needs at least one point");
    if (!pts_.all_finite()) throw InvalidInput("point cloud has non-finite coordinate");
  }

  static PointCloud from_points(const std::vector<std::vector<double>>& points) {
    if (points.empty()) throw InvalidInput("point cloud needs at least one point");
    int n = static_cast<int>(points.front().size());
    Matrix M(n, static_cast<int>(points.size()));
    for (int i = 0; i < static_cast<int>(points.size()); ++i) {
      if (static_cast<int>(points[i].size()) != n)
        throw InvalidInput("point cloud rows have inconsistent dimension");
      for (int j = 0; j < n; ++j) M(j, i) = points[i][j];
    }
    return PointCloud(std::move(M));
  }

  int dim() const { return pts_.rows(); }
  int size() const { return pts_.cols(); }
  std::span<const double> point(int i) const { return pts_.col(i); }
  const Matrix& coords() const { return pts_; }

 private:
  Matrix pts_;
};

// A cloud whose center of mass sits at the origin, plus its radius
// r_A = max |p| over the centered points.
struct CenteredCloud {
  PointCloud cloud;
  double radius = 0.0;
};

// Translate the center of mass to the origin. A second correction pass keeps
// the residual coordinate sums at machine-epsilon scale even for large m.
inline CenteredCloud center(const PointCloud& A) {
  int n = A.dim(), m = A.size();
  Matrix P = A.coords();
  for (int pass = 0; pass < 2; ++pass) {
    for (int j = 0; j < n; ++j) {
      double mean = 0.0;
      for (int i = 0; i < m; ++i) mean += P(j, i);
      mean /= m;
      for (int i = 0; i < m; ++i) P(j, i) -= mean;
    }
  }
  double radius = 0.0;
  for (int i = 0; i < m; ++i) radius = std::max(radius, norm2(P.col(i)));
  return CenteredCloud{PointCloud(std::move(P)), radius};
}

// cov(A) = P P^T / (n-1) for the n x m sample matrix P of a centered cloud.
// The divisor is the dimension minus one; for n = 1 it degenerates to 1.
// A positive scaling never changes eigenvectors or eigenvalue order, so
// everything downstream is insensitive to this edge choice.
inline Matrix covariance(const CenteredCloud& c) {
  const Matrix& P = c.cloud.coords();
  int n = P.rows(), m = P.cols();
  double div = n > 1 ? static_cast<double>(n - 1) : 1.0;
  Matrix C(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = j; k < n; ++k) {
      double s = 0.0;
      for (int i = 0; i < m; ++i) s += P(j, i) * P(k, i);
      s /= div;
      C(j, k) = s;
      C(k, j) = s;
    }
  return C;
}

}  // namespace isoclouds
