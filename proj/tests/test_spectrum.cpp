#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace isoclouds;

namespace {

Matrix random_symmetric(int n, std::mt19937_64& rng) {
  Matrix M(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      double x = 4.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 2.0;
      M(i, j) = x;
      M(j, i) = x;
    }
  return M;
}

}  // namespace

TEST_CASE("eigen_sym on diagonal input") {
  CovarianceSpectrum s = eigen_sym(Matrix::from_rows({{10, 0}, {0, 1}}));
  REQUIRE(s.eigenvalues[0] == 10.0);
  REQUIRE(s.eigenvalues[1] == 1.0);
  REQUIRE(s.basis(0, 0) == 1.0);
  REQUIRE(s.basis(1, 0) == 0.0);
  REQUIRE(s.basis(0, 1) == 0.0);
  REQUIRE(s.basis(1, 1) == 1.0);
  REQUIRE(s.gap == 1.0);
}

TEST_CASE("eigen_sym on the identity") {
  CovarianceSpectrum s = eigen_sym(Matrix::identity(3));
  for (double l : s.eigenvalues) REQUIRE(l == 1.0);
  REQUIRE(s.gap == 0.0);
  Matrix VVt = multiply(s.basis, transpose(s.basis));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      REQUIRE(VVt(i, j) == Catch::Approx(i == j ? 1.0 : 0.0).margin(1e-9));
}

TEST_CASE("eigen_sym reconstruction residual") {
  std::mt19937_64 rng(17);
  for (int rep = 0; rep < 40; ++rep) {
    int n = 2 + static_cast<int>(rng() % 4);
    Matrix M = random_symmetric(n, rng);
    CovarianceSpectrum s = eigen_sym(M);

    double lam_scale = std::max(std::abs(s.eigenvalues[0]), 1.0);

    // Sorted non-increasing.
    for (int j = 0; j + 1 < n; ++j) REQUIRE(s.eigenvalues[j] >= s.eigenvalues[j + 1]);

    // Orthonormality.
    Matrix VVt = multiply(s.basis, transpose(s.basis));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        REQUIRE(std::abs(VVt(i, j) - (i == j ? 1.0 : 0.0)) <= 1e-9);

    // Eigen residual per column.
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        double mv = 0.0;
        for (int k = 0; k < n; ++k) mv += M(i, k) * s.basis(k, j);
        REQUIRE(std::abs(mv - s.eigenvalues[j] * s.basis(i, j)) <= 1e-9 * lam_scale);
      }
    }

    // Full reconstruction V diag(lambda) V^T.
    Matrix L(n, n);
    for (int j = 0; j < n; ++j) L(j, j) = s.eigenvalues[j];
    Matrix R = multiply(multiply(s.basis, L), transpose(s.basis));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) REQUIRE(std::abs(R(i, j) - M(i, j)) <= 1e-9 * lam_scale);
  }
}

TEST_CASE("eigen_sym is deterministic and sign-fixed") {
  std::mt19937_64 rng(23);
  Matrix M = random_symmetric(5, rng);
  CovarianceSpectrum a = eigen_sym(M);
  CovarianceSpectrum b = eigen_sym(M);
  REQUIRE(a.eigenvalues == b.eigenvalues);
  REQUIRE(a.basis == b.basis);

  // Largest-magnitude coordinate of every eigenvector is positive.
  for (int j = 0; j < 5; ++j) {
    int arg = 0;
    for (int k = 1; k < 5; ++k)
      if (std::abs(a.basis(k, j)) > std::abs(a.basis(arg, j))) arg = k;
    REQUIRE(a.basis(arg, j) > 0.0);
  }
}

TEST_CASE("eigen_sym clamps tiny negative eigenvalues of PSD input") {
  // Collinear cloud: rank-one covariance, second eigenvalue must come out
  // exactly zero, never a tiny negative.
  PointCloud A = PointCloud::from_points({{0, 0}, {1, 0.5}, {2, 1.0}, {3, 1.5}});
  CovarianceSpectrum s = eigen_sym(covariance(center(A)));
  REQUIRE(s.eigenvalues[1] >= 0.0);
  REQUIRE(s.eigenvalues[1] <= 1e-12 * s.eigenvalues[0]);
}

TEST_CASE("eigen_sym rejects non-square input") {
  REQUIRE_THROWS_AS(eigen_sym(Matrix(2, 3)), InvalidInput);
}

TEST_CASE("gap includes the distance from the smallest eigenvalue to zero") {
  CovarianceSpectrum s = eigen_sym(Matrix::from_rows({{5, 0}, {0, 2}}));
  REQUIRE(s.gap == 2.0);
}
