// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Eigenvalues>

#include "hpcalc/funcalc.hpp"
#include "hpcalc/rng.hpp"

namespace hpcalc::testing {

// Independent oracle: f(A) = V diag(f(lambda_i)) V^{-1} for diagonalizable A.
template <class F>
Matrix eigen_oracle(const Matrix& A, F&& f) {
  Eigen::ComplexEigenSolver<Matrix> es(A);
  Vector fl(es.eigenvalues().size());
  for (Index i = 0; i < fl.size(); ++i) fl(i) = f(es.eigenvalues()(i));
  return es.eigenvectors() * fl.asDiagonal() *
         es.eigenvectors().fullPivLu().inverse();
}

// Random matrix with spectrum shifted so min Re sigma(A) ~= omegaTarget.
inline Matrix random_matrix_with_abscissa(RandomStream& rs, Index n,
                                          double omegaTarget) {
  Matrix A = rs.gaussian_matrix(n, n);
  Eigen::ComplexEigenSolver<Matrix> es(A);
  const double minRe = es.eigenvalues().real().minCoeff();
  A.diagonal().array() += Complex(omegaTarget - minRe);
  return A;
}

// Brute-force lower bound of the l^p operator norm over random directions.
// For entrywise-nonnegative matrices the maximizer can be taken nonnegative
// (|A x| <= A |x| coordinatewise), so sampling that orthant is exhaustive.
inline double brute_force_lp_norm(const Matrix& M, double p, long samples,
                                  std::uint64_t seed,
                                  bool nonnegativeDomain = false) {
  RandomStream rs(seed);
  auto lp = [&](const Vector& v) {
    double s = 0.0;
    for (Index i = 0; i < v.size(); ++i) s += std::pow(std::abs(v(i)), p);
    return std::pow(s, 1.0 / p);
  };
  double best = 0.0;
  for (long i = 0; i < samples; ++i) {
    Vector x = rs.gaussian_vector(M.cols());
    if (nonnegativeDomain) x = x.cwiseAbs().cast<Complex>();
    const double nx = lp(x);
    if (nx == 0.0) continue;
    best = std::max(best, lp(M * x) / nx);
  }
  return best;
}

inline double rel_error(const Matrix& got, const Matrix& want) {
  return (got - want).norm() / std::max(1e-300, want.norm());
}

}  // namespace hpcalc::testing
