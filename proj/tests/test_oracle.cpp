#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace isoclouds;

TEST_CASE("brute_bottleneck") {
  REQUIRE(oracle::brute_bottleneck(testutil::trapezium().coords(), testutil::kite().coords()) ==
          1.5);
  Matrix P = testutil::trapezium().coords();
  REQUIRE(oracle::brute_bottleneck(P, P) == 0.0);
  REQUIRE_THROWS_AS(oracle::brute_bottleneck(Matrix(2, 9), Matrix(2, 9)), TooLarge);
}

TEST_CASE("brute_isometry_check") {
  SECTION("finds a witness for transformed copies") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      int n = 2 + static_cast<int>(seed % 2);
      int m = 4 + static_cast<int>(seed % 3);
      PointCloud A = oracle::random_cloud(n, m, seed, oracle::CloudMode::Generic);
      PointCloud B = testutil::random_isometry_image(A, seed + 5000);
      auto w = oracle::brute_isometry_check(A, B);
      REQUIRE(w.has_value());
      REQUIRE(w->residual <= 1e-9 * center(A).radius);

      // The witness reproduces B when applied to A pointwise.
      for (int i = 0; i < m; ++i) {
        double err = 0.0;
        for (int j = 0; j < n; ++j) {
          double fx = w->translation[j];
          for (int k = 0; k < n; ++k) fx += w->orthogonal(j, k) * A.coords()(k, i);
          err = std::max(err, std::abs(fx - B.coords()(j, w->permutation[i])));
        }
        REQUIRE(err <= 1e-8 * center(A).radius);
      }
    }
  }

  SECTION("trapezium and kite are not isometric") {
    REQUIRE_FALSE(oracle::brute_isometry_check(testutil::trapezium(), testutil::kite()).has_value());
  }

  SECTION("chiral cloud vs mirror: rigid motions fail, reflections succeed") {
    PointCloud A = oracle::random_cloud(3, 5, 21, oracle::CloudMode::Chiral);
    PointCloud M = oracle::reflect(A);
    REQUIRE_FALSE(oracle::brute_isometry_check(A, M, 1e-9, true).has_value());
    auto w = oracle::brute_isometry_check(A, M, 1e-9, false);
    REQUIRE(w.has_value());
  }

  SECTION("size cap") {
    PointCloud A = oracle::random_cloud(2, 8, 3, oracle::CloudMode::Generic);
    REQUIRE_THROWS_AS(oracle::brute_isometry_check(A, A), TooLarge);
  }
}

TEST_CASE("pairwise_distance_multiset") {
  std::vector<double> t = oracle::pairwise_distance_multiset(testutil::trapezium());
  std::vector<double> expect{std::sqrt(2.0), std::sqrt(2.0), 2.0, std::sqrt(10.0), std::sqrt(10.0),
                             4.0};
  REQUIRE(t.size() == expect.size());
  for (std::size_t i = 0; i < t.size(); ++i) REQUIRE(t[i] == Catch::Approx(expect[i]).margin(1e-12));

  std::vector<double> k = oracle::pairwise_distance_multiset(testutil::kite());
  for (std::size_t i = 0; i < t.size(); ++i) REQUIRE(t[i] == Catch::Approx(k[i]).margin(1e-12));

  std::vector<double> two =
      oracle::pairwise_distance_multiset(PointCloud::from_points({{0, 0}, {3, 4}}));
  REQUIRE(two == std::vector<double>{5.0});
}

TEST_CASE("random_cloud modes") {
  SECTION("generic mode is principally generic and reproducible") {
    PointCloud A = oracle::random_cloud(3, 6, 77, oracle::CloudMode::Generic);
    PointCloud B = oracle::random_cloud(3, 6, 77, oracle::CloudMode::Generic);
    REQUIRE(A.coords() == B.coords());
    REQUIRE(is_principally_generic(eigen_sym(covariance(center(A)))).is_generic);
  }

  SECTION("symmetric polygons have equal covariance eigenvalues") {
    for (int m = 3; m <= 8; ++m) {
      PointCloud A = oracle::random_cloud(2, m, 1, oracle::CloudMode::Symmetric);
      CovarianceSpectrum s = eigen_sym(covariance(center(A)));
      REQUIRE(s.eigenvalues[0] == Catch::Approx(s.eigenvalues[1]).epsilon(1e-9));
      REQUIRE_FALSE(is_principally_generic(s).is_generic);
    }
  }

  SECTION("symmetric 3d families are never principally generic") {
    for (int m = 3; m <= 9; ++m) {
      PointCloud A = oracle::random_cloud(3, m, 1, oracle::CloudMode::Symmetric);
      REQUIRE_FALSE(is_principally_generic(eigen_sym(covariance(center(A)))).is_generic);
    }
  }

  SECTION("chiral mode emits clouds with no rigid motion onto their mirror") {
    PointCloud A = oracle::random_cloud(2, 6, 9, oracle::CloudMode::Chiral);
    REQUIRE_FALSE(
        oracle::brute_isometry_check(A, oracle::reflect(A), 1e-9, true).has_value());
  }

  SECTION("bad arguments") {
    REQUIRE_THROWS_AS(oracle::random_cloud(0, 4, 1, oracle::CloudMode::Generic), InvalidInput);
  }
}

TEST_CASE("completeness cross-validation at small scale") {
  // sm_clouds vanishes exactly when the Procrustes oracle finds an isometry.
  std::mt19937_64 rng(131);
  int checked_equal = 0, checked_distinct = 0;
  for (int rep = 0; rep < 12; ++rep) {
    int m = 4 + static_cast<int>(rng() % 3);
    PointCloud A = oracle::random_cloud(2, m, rng(), oracle::CloudMode::Generic);
    bool make_copy = rep % 2 == 0;
    PointCloud B = make_copy ? testutil::random_isometry_image(A, rng())
                             : oracle::random_cloud(2, m, rng(), oracle::CloudMode::Generic);
    bool oracle_iso = oracle::brute_isometry_check(A, B).has_value();
    double sm = sm_clouds(A, B);
    double la = lac_isometry(A, B);
    if (oracle_iso) {
      ++checked_equal;
      REQUIRE(sm <= 1e-9 * center(A).radius);
      REQUIRE(la <= 1e-9 * center(A).radius + 1e-9);
    } else {
      ++checked_distinct;
      REQUIRE(sm > 1e-8);
      REQUIRE(la > 1e-8);
    }
  }
  REQUIRE(checked_equal > 0);
  REQUIRE(checked_distinct > 0);
}
