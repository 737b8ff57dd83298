#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "isoclouds/isoclouds.hpp"

namespace testutil {

using namespace isoclouds;

// Trapezium and kite with identical pairwise distance multisets; both are
// already centered at the origin with diagonal covariance.
inline PointCloud trapezium() {
  return PointCloud::from_points({{2, -0.5}, {1, 0.5}, {-1, 0.5}, {-2, -0.5}});
}

inline PointCloud kite() {
  return PointCloud::from_points({{2.5, 0}, {-0.5, 1}, {-0.5, -1}, {-1.5, 0}});
}

// Vertices (+-l1, +-l2) of a rectangle.
inline PointCloud rect_cloud(double l1, double l2) {
  return PointCloud::from_points({{l1, l2}, {l1, -l2}, {-l1, l2}, {-l1, -l2}});
}

// Regular m-gon of a given circumradius, first vertex on the x axis.
inline PointCloud regular_polygon(int m, double r) {
  std::vector<std::vector<double>> pts;
  for (int i = 0; i < m; ++i) {
    double a = 2.0 * M_PI * i / m;
    pts.push_back({r * std::cos(a), r * std::sin(a)});
  }
  return PointCloud::from_points(pts);
}

// A 4-point planar cloud with no reflection symmetry.
inline PointCloud chiral_quad() {
  return PointCloud::from_points({{3.0, 0.1}, {0.4, 1.7}, {-2.2, 0.6}, {-0.9, -2.3}});
}

inline PointCloud random_isometry_image(const PointCloud& A, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Matrix Q = oracle::random_rotation(A.dim(), rng);
  std::vector<double> t(A.dim());
  for (double& x : t) x = 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
  std::vector<int> perm(A.size());
  for (int i = 0; i < A.size(); ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  return oracle::apply_isometry(A, Q, t, perm);
}

}  // namespace testutil
