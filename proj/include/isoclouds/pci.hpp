#pragma once

#include <tuple>

#include "isoclouds/bottleneck.hpp"
#include "isoclouds/point_cloud.hpp"
#include "isoclouds/spectrum.hpp"

namespace isoclouds {

// Genericity verdict for a covariance spectrum. A cloud is principally
// generic when all consecutive eigenvalue gaps and the smallest eigenvalue
// clear a relative threshold, so principal directions are unique up to sign.
struct GenericityReport {
  bool is_generic = false;
  double gap = 0.0;
  double lambda_min = 0.0;
  double threshold = 0.0;
};

inline GenericityReport is_principally_generic(const CovarianceSpectrum& s,
                                               double rel_tol = 1e-9) {
  GenericityReport r;
  r.gap = s.gap;
  r.lambda_min = s.eigenvalues.empty() ? 0.0 : s.eigenvalues.back();
  double lam1 = s.eigenvalues.empty() ? 0.0 : s.eigenvalues.front();
  r.threshold = rel_tol * std::max(lam1, 1.0);
  r.is_generic = r.gap > r.threshold && r.lambda_min > r.threshold;
  return r;
}

// Principal Coordinates Matrix: row j holds the projections of every point
// onto the j-th principal direction. Columns are unordered and row signs are
// ambiguous; that equivalence class is the cloud's principal-coordinates
// invariant.
struct Pcm {
  Matrix matrix;
  CovarianceSpectrum basis_used;
};

inline Pcm pcm(const CenteredCloud& c, const CovarianceSpectrum& s, double rel_tol = 1e-9) {
  GenericityReport rep = is_principally_generic(s, rel_tol);
  if (!rep.is_generic)
    throw NotGeneric("cloud is not principally generic; use the weighted matrices invariant");
  const Matrix& P = c.cloud.coords();
  int n = P.rows(), m = P.cols();
  Matrix M(n, m);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < m; ++i) M(j, i) = dot(P.col(i), s.basis.col(j));
  return Pcm{std::move(M), s};
}

// Negates row j of M for every set bit j of mask: the action of a sign
// string in {+1,-1}^n on matrix rows.
inline Matrix apply_sign_mask(const Matrix& M, unsigned mask) {
  Matrix R = M;
  for (int j = 0; j < M.rows(); ++j)
    if (mask & (1u << j))
      for (int i = 0; i < M.cols(); ++i) R(j, i) = -R(j, i);
  return R;
}

// Symmetrized metric on matrices: bottleneck distance minimized over all 2^n
// row-sign strings. Exhaustive over the sign group; n stays small.
inline double sm_matrices(const Matrix& P, const Matrix& Q) {
  if (P.rows() != Q.rows() || P.cols() != Q.cols())
    throw InvalidInput("sm_matrices: shape mismatch");
  double best = bottleneck(P, Q);
  for (unsigned mask = 1; mask < (1u << P.rows()); ++mask)
    best = std::min(best, bottleneck(apply_sign_mask(P, mask), Q));
  return best;
}

// Symmetrized metric on principally generic clouds: zero exactly when the
// clouds are isometric.
inline double sm_clouds(const PointCloud& A, const PointCloud& B, double rel_tol = 1e-9) {
  if (A.dim() != B.dim()) throw InvalidInput("sm_clouds: dimension mismatch");
  if (A.size() != B.size()) throw InvalidInput("sm_clouds: point count mismatch");
  CenteredCloud ca = center(A), cb = center(B);
  Pcm pa = pcm(ca, eigen_sym(covariance(ca)), rel_tol);
  Pcm pb = pcm(cb, eigen_sym(covariance(cb)), rel_tol);
  return sm_matrices(pa.matrix, pb.matrix);
}

// Covariance perturbation diagnostic: the 2-norm and max norm of
// cov(A) - cov(B) against the bound n * m * W_inf(A,B) * (r_A + r_B),
// all computed on the internally centered clouds.
struct CovPerturbationBound {
  double lhs_2norm = 0.0;
  double lhs_maxnorm = 0.0;
  double bound = 0.0;
};

inline CovPerturbationBound cov_perturbation_bound(const PointCloud& A, const PointCloud& B) {
  if (A.dim() != B.dim()) throw InvalidInput("cov_perturbation_bound: dimension mismatch");
  if (A.size() != B.size()) throw InvalidInput("cov_perturbation_bound: point count mismatch");
  CenteredCloud ca = center(A), cb = center(B);
  int n = A.dim(), m = A.size();

  double w_inf = bottleneck(ca.cloud.coords(), cb.cloud.coords());
  Matrix Ca = covariance(ca), Cb = covariance(cb);
  Matrix E(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) E(i, j) = Ca(i, j) - Cb(i, j);

  CovPerturbationBound out;
  out.lhs_2norm = sym_2norm(E);
  out.lhs_maxnorm = max_row_sum_norm(E);
  out.bound = n * (m * w_inf * (ca.radius + cb.radius));
  return out;
}

}  // namespace isoclouds
