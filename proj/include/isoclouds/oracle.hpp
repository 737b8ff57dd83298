#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "isoclouds/metrics.hpp"
#include "isoclouds/pci.hpp"
#include "isoclouds/point_cloud.hpp"

// Independent brute-force references for the optimized algorithms, plus
// deterministic random-instance generators. Everything here is the trust
// anchor for the fast paths, so none of it shares code with them: matchings
// are enumerated, alignments solved by SVD-based Procrustes.
namespace isoclouds::oracle {

struct IsometryWitness {
  Matrix orthogonal;                // n x n, Q^T Q = I
  std::vector<double> translation;  // f(p) = Q p + t
  std::vector<int> permutation;     // point i of A maps to point permutation[i] of B
  double residual = 0.0;            // max point error after applying the map
};

// Exhaustive bottleneck distance over all k! column bijections.
inline double brute_bottleneck(const Matrix& P, const Matrix& Q) {
  if (P.rows() != Q.rows()) throw InvalidInput("brute_bottleneck: dimension mismatch");
  if (P.cols() != Q.cols()) throw InvalidInput("brute_bottleneck: column count mismatch");
  const int k = P.cols();
  if (k > 8) throw TooLarge("brute_bottleneck: capped at 8 columns");

  std::vector<double> D(static_cast<std::size_t>(k) * k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      D[static_cast<std::size_t>(i) * k + j] = minkowski_dist(P.col(i), Q.col(j));

  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double worst = 0.0;
    for (int i = 0; i < k; ++i)
      worst = std::max(worst, D[static_cast<std::size_t>(i) * k + perm[i]]);
    best = std::min(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

namespace detail {

inline Eigen::MatrixXd to_eigen(const Matrix& M) {
  Eigen::MatrixXd E(M.rows(), M.cols());
  for (int i = 0; i < M.rows(); ++i)
    for (int j = 0; j < M.cols(); ++j) E(i, j) = M(i, j);
  return E;
}

inline Matrix from_eigen(const Eigen::MatrixXd& E) {
  Matrix M(static_cast<int>(E.rows()), static_cast<int>(E.cols()));
  for (int i = 0; i < E.rows(); ++i)
    for (int j = 0; j < E.cols(); ++j) M(i, j) = E(i, j);
  return M;
}

// Best orthogonal map sending P's columns onto Q's columns in least squares
// (orthogonal Procrustes). With restrict_orientation the determinant is
// forced to +1 (Kabsch correction).
inline Eigen::MatrixXd procrustes(const Eigen::MatrixXd& P, const Eigen::MatrixXd& Q,
                                  bool restrict_orientation) {
  Eigen::MatrixXd H = Q * P.transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(H, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::MatrixXd R = svd.matrixU() * svd.matrixV().transpose();
  if (restrict_orientation && R.determinant() < 0.0) {
    Eigen::VectorXd d = Eigen::VectorXd::Ones(P.rows());
    d(P.rows() - 1) = -1.0;
    R = svd.matrixU() * d.asDiagonal() * svd.matrixV().transpose();
  }
  return R;
}

}  // namespace detail

// Ground-truth isometry detection: for every point permutation solve the
// orthogonal alignment of the centered clouds and accept the first witness
// whose max point error is within tol * r_A. Returns nothing when no
// permutation aligns. With orientation_preserving only rigid motions count.
inline std::optional<IsometryWitness> brute_isometry_check(const PointCloud& A,
                                                           const PointCloud& B,
                                                           double tol = 1e-9,
                                                           bool orientation_preserving = false) {
  if (A.dim() != B.dim()) throw InvalidInput("brute_isometry_check: dimension mismatch");
  if (A.size() != B.size()) return std::nullopt;
  const int m = A.size(), n = A.dim();
  if (m > 7) throw TooLarge("brute_isometry_check: capped at 7 points");

  CenteredCloud ca = center(A), cb = center(B);
  Eigen::MatrixXd P = detail::to_eigen(ca.cloud.coords());
  Eigen::MatrixXd Qm = detail::to_eigen(cb.cloud.coords());

  std::vector<double> mean_a(n, 0.0), mean_b(n, 0.0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      mean_a[j] += A.coords()(j, i) / m;
      mean_b[j] += B.coords()(j, i) / m;
    }

  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    Eigen::MatrixXd Qp(n, m);
    for (int i = 0; i < m; ++i) Qp.col(i) = Qm.col(perm[i]);
    Eigen::MatrixXd R = detail::procrustes(P, Qp, orientation_preserving);
    double residual = (R * P - Qp).colwise().norm().maxCoeff();
    if (residual <= tol * ca.radius) {
      IsometryWitness w;
      w.orthogonal = detail::from_eigen(R);
      w.permutation = perm;
      w.residual = residual;
      w.translation.resize(n);
      for (int j = 0; j < n; ++j) {
        double qa = 0.0;
        for (int k = 0; k < n; ++k) qa += w.orthogonal(j, k) * mean_a[k];
        w.translation[j] = mean_b[j] - qa;
      }
      return w;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

// Sorted multiset of all m(m-1)/2 pairwise Euclidean distances.
inline std::vector<double> pairwise_distance_multiset(const PointCloud& A) {
  std::vector<double> out;
  const int m = A.size();
  out.reserve(static_cast<std::size_t>(m) * (m - 1) / 2);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      double s = 0.0;
      for (int c = 0; c < A.dim(); ++c) {
        double d = A.coords()(c, i) - A.coords()(c, j);
        s += d * d;
      }
      out.push_back(std::sqrt(s));
    }
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {

// Uniform in [0,1) from raw generator bits; keeps generation reproducible
// independent of the standard library's distribution implementations.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

inline double gaussian(std::mt19937_64& rng) {
  double u1 = uniform01(rng), u2 = uniform01(rng);
  while (u1 <= 1e-300) u1 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

}  // namespace detail

// Haar-ish random rotation (det +1) from the QR factorization of a Gaussian
// matrix, deterministic for a fixed generator state.
inline Matrix random_rotation(int n, std::mt19937_64& rng) {
  Eigen::MatrixXd G(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) G(i, j) = detail::gaussian(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(G);
  Eigen::MatrixXd Q = qr.householderQ();
  Eigen::MatrixXd R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j)
    if (R(j, j) < 0.0) Q.col(j) = -Q.col(j);
  if (Q.determinant() < 0.0) Q.col(n - 1) = -Q.col(n - 1);
  return detail::from_eigen(Q);
}

inline PointCloud apply_isometry(const PointCloud& A, const Matrix& Q,
                                 const std::vector<double>& t, const std::vector<int>& perm) {
  const int n = A.dim(), m = A.size();
  if (Q.rows() != n || Q.cols() != n || static_cast<int>(t.size()) != n ||
      static_cast<int>(perm.size()) != m)
    throw InvalidInput("apply_isometry: shape mismatch");
  Matrix out(n, m);
  for (int i = 0; i < m; ++i) {
    std::span<const double> p = A.point(perm[i]);
    for (int j = 0; j < n; ++j) {
      double s = t[j];
      for (int k = 0; k < n; ++k) s += Q(j, k) * p[k];
      out(j, i) = s;
    }
  }
  return PointCloud(std::move(out));
}

// Mirror image: negate the last coordinate.
inline PointCloud reflect(const PointCloud& A) {
  Matrix M = A.coords();
  for (int i = 0; i < M.cols(); ++i) M(M.rows() - 1, i) = -M(M.rows() - 1, i);
  return PointCloud(std::move(M));
}

enum class CloudMode { Generic, Symmetric, Chiral };

namespace detail {

inline PointCloud regular_polygon(int m, double radius) {
  Matrix M(2, m);
  for (int i = 0; i < m; ++i) {
    double a = 2.0 * 3.14159265358979323846 * i / m;
    M(0, i) = radius * std::cos(a);
    M(1, i) = radius * std::sin(a);
  }
  return PointCloud(std::move(M));
}

// Rotationally symmetric 3D families: the covariance always has a repeated
// eigenvalue (or a zero one), so none of these are principally generic.
inline PointCloud symmetric_3d(int m, double radius) {
  if (m == 4) {
    Matrix M = Matrix::from_rows({{1, 1, -1, -1}, {1, -1, 1, -1}, {1, -1, -1, 1}});
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 3; ++j) M(j, i) *= radius / std::sqrt(3.0);
    return PointCloud(std::move(M));
  }
  if (m == 3 || m % 2 == 1) {
    // Pyramid: regular (m-1)-gon in the z = 0 plane plus an apex on the axis
    // (for m = 3 just the planar triangle).
    int base = (m == 3) ? 3 : m - 1;
    Matrix M(3, m);
    for (int i = 0; i < base; ++i) {
      double a = 2.0 * 3.14159265358979323846 * i / base;
      M(0, i) = radius * std::cos(a);
      M(1, i) = radius * std::sin(a);
      M(2, i) = 0.0;
    }
    if (m != 3) {
      M(0, m - 1) = 0.0;
      M(1, m - 1) = 0.0;
      M(2, m - 1) = radius;
    }
    return PointCloud(std::move(M));
  }
  // Antiprism over a regular (m/2)-gon.
  int half = m / 2;
  Matrix M(3, m);
  for (int i = 0; i < half; ++i) {
    double a = 2.0 * 3.14159265358979323846 * i / half;
    double b = a + 3.14159265358979323846 / half;
    M(0, i) = radius * std::cos(a);
    M(1, i) = radius * std::sin(a);
    M(2, i) = radius / 2.0;
    M(0, half + i) = radius * std::cos(b);
    M(1, half + i) = radius * std::sin(b);
    M(2, half + i) = -radius / 2.0;
  }
  return PointCloud(std::move(M));
}

}  // namespace detail

// Deterministic random clouds. Generic mode draws anisotropically scaled
// coordinates and resamples until the spectrum is comfortably generic
// (relative margin 1e-3) with radius at least one, so downstream 1e-9 * r_A
// tolerances are meaningful. Symmetric mode emits regular polygons and
// rotationally symmetric polytopes. Chiral mode resamples generic clouds
// until the mirror image is provably not reachable by any rigid motion.
inline PointCloud random_cloud(int n, int m, std::uint64_t seed, CloudMode mode) {
  if (n < 1 || m < 1) throw InvalidInput("random_cloud: n and m must be positive");
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);

  if (mode == CloudMode::Symmetric) {
    if (n == 2) return detail::regular_polygon(m, 2.0);
    if (n == 3) return detail::symmetric_3d(m, 2.0);
    throw InvalidInput("random_cloud: symmetric mode supports n in {2,3}");
  }

  auto draw = [&]() {
    Matrix M(n, m);
    for (int j = 0; j < n; ++j) {
      double s = 4.0 * std::pow(0.6, j);
      for (int i = 0; i < m; ++i) M(j, i) = detail::uniform(rng, -s, s);
    }
    return PointCloud(std::move(M));
  };

  for (int attempt = 0; attempt < 1000; ++attempt) {
    PointCloud A = draw();
    CenteredCloud c = center(A);
    if (c.radius < 1.0) continue;

    if (mode == CloudMode::Generic || mode == CloudMode::Chiral) {
      GenericityReport rep = is_principally_generic(eigen_sym(covariance(c)), 1e-3);
      if (!rep.is_generic) continue;
    }
    if (mode == CloudMode::Chiral) {
      if (m <= 7) {
        if (brute_isometry_check(A, reflect(A), 1e-9, /*orientation_preserving=*/true)) continue;
      } else {
        WmiDistribution W = wmi(c);
        if (lac(W, mirror_wmi(W)).value <= 1e-6) continue;
      }
    }
    return A;
  }
  throw GenerationFailure("random_cloud: resampling budget exhausted");
}

}  // namespace isoclouds::oracle
