#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "helpers.hpp"

using namespace isoclouds;

namespace {

Matrix random_columns(int n, int k, std::mt19937_64& rng) {
  Matrix M(n, k);
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < n; ++i)
      M(i, j) = 4.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 2.0;
  return M;
}

Matrix shuffle_columns(const Matrix& M, std::mt19937_64& rng) {
  std::vector<int> perm(M.cols());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  Matrix R(M.rows(), M.cols());
  for (int j = 0; j < M.cols(); ++j)
    for (int i = 0; i < M.rows(); ++i) R(i, j) = M(i, perm[j]);
  return R;
}

}  // namespace

TEST_CASE("bottleneck between the trapezium and kite coordinate matrices") {
  Matrix P = testutil::trapezium().coords();
  Matrix Q = testutil::kite().coords();
  REQUIRE(bottleneck(P, Q) == 1.5);
}

TEST_CASE("bottleneck of a cloud against its own permutation is zero") {
  std::mt19937_64 rng(31);
  for (int rep = 0; rep < 10; ++rep) {
    Matrix P = random_columns(3, 6, rng);
    REQUIRE(bottleneck(P, shuffle_columns(P, rng)) == 0.0);
  }
}

TEST_CASE("bottleneck equals the exhaustive minimum over all bijections") {
  std::mt19937_64 rng(37);
  for (int rep = 0; rep < 100; ++rep) {
    int n = 1 + static_cast<int>(rng() % 3);
    int k = 2 + static_cast<int>(rng() % 5);
    Matrix P = random_columns(n, k, rng);
    Matrix Q = random_columns(n, k, rng);
    REQUIRE(bottleneck(P, Q) == oracle::brute_bottleneck(P, Q));
  }
}

TEST_CASE("bottleneck result is a member of the pairwise distance multiset") {
  std::mt19937_64 rng(41);
  for (int rep = 0; rep < 25; ++rep) {
    Matrix P = random_columns(3, 6, rng);
    Matrix Q = random_columns(3, 6, rng);
    double d = bottleneck(P, Q);
    bool member = false;
    for (int i = 0; i < 6 && !member; ++i)
      for (int j = 0; j < 6 && !member; ++j)
        if (minkowski_dist(P.col(i), Q.col(j)) == d) member = true;
    REQUIRE(member);
  }
}

TEST_CASE("bottleneck metric properties") {
  std::mt19937_64 rng(43);
  SECTION("exact symmetry") {
    for (int rep = 0; rep < 25; ++rep) {
      Matrix P = random_columns(2, 5, rng);
      Matrix Q = random_columns(2, 5, rng);
      REQUIRE(bottleneck(P, Q) == bottleneck(Q, P));
    }
  }
  SECTION("triangle inequality on sampled triples") {
    for (int rep = 0; rep < 25; ++rep) {
      Matrix P = random_columns(2, 5, rng);
      Matrix Q = random_columns(2, 5, rng);
      Matrix R = random_columns(2, 5, rng);
      REQUIRE(bottleneck(P, R) <= bottleneck(P, Q) + bottleneck(Q, R) + 1e-12);
    }
  }
  SECTION("zero only for equal column multisets") {
    for (int rep = 0; rep < 25; ++rep) {
      Matrix P = random_columns(2, 5, rng);
      Matrix Q = random_columns(2, 5, rng);
      if (bottleneck(P, Q) == 0.0) {
        // Random continuous draws collide with probability zero.
        FAIL("distinct random clouds reported as equal");
      }
    }
  }
}

TEST_CASE("bottleneck input validation") {
  REQUIRE_THROWS_AS(bottleneck(Matrix(2, 3), Matrix(2, 4)), InvalidInput);
  REQUIRE_THROWS_AS(bottleneck(Matrix(2, 3), Matrix(3, 3)), InvalidInput);
}
