// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "hpcalc/half_plane_function.hpp"
#include "hpcalc/quadrature.hpp"
#include "hpcalc/spaces.hpp"

namespace hpcalc {

// (lambda I - A)^{-1}. Throws SpectrumHit when lambda is an eigenvalue.
MatrixOperator resolvent(const MatrixOperator& A, Complex lambda);

struct ResolventInfo {
  MatrixOperator R;
  double conditionEstimate = 0.0;
  bool illConditioned = false;  // condition estimate above 1e12
};
ResolventInfo resolvent_info(const MatrixOperator& A, Complex lambda);

struct HalfPlaneTypeEntry {
  double alpha = 0.0;
  double supNorm = 0.0;  // grid maximum, refined until stable
  double argmaxT = 0.0;
  bool normExact = true;
};

struct HalfPlaneTypeReport {
  double omega = 0.0;
  std::vector<HalfPlaneTypeEntry> entries;
  bool pass = false;
  Complex witnessEigenvalue;  // populated when the spectrum obstructs
};

// Checks sigma(A) in the closed half-plane Re z >= omega and reports
// sup_t ||R(alpha+it, A)|| for each alpha in the grid.
HalfPlaneTypeReport half_plane_type_check(const MatrixOperator& A, double omega,
                                          const std::vector<double>& alphaGrid,
                                          std::vector<double> tGrid = {});

struct CalcResult {
  MatrixOperator op;
  double errorBound = 0.0;
  QuadratureStats stats;
  double delta = 0.0;  // the line actually used
};

// Line-integral calculus f(A) for f decaying on the half-plane (f in the
// class E). Throws TailBoundFailure when f has no decay, AbscissaError when
// the line cannot be placed between f's abscissa and the spectrum.
CalcResult dunford_eval(const MatrixOperator& A, const HalfPlaneFunction& f,
                        const QuadratureConfig& quad = {});

// f(A) = (mu I - A)^2 (ef)(A) with e(z) = (mu - z)^{-2}; defined for every
// bounded f on the half-plane and independent of mu.
CalcResult regularized_eval(const MatrixOperator& A, const HalfPlaneFunction& f,
                            double mu, const QuadratureConfig& quad = {});

// e^{-tA} (scaling-and-squaring Pade kernel).
MatrixOperator semigroup_exp(const MatrixOperator& A, double t);

// f^{(m)}(A) = -(m!/2pi) int f(alpha+it) R(alpha+it,A)^{m+1} dt, m >= 1.
CalcResult derivative_calculus_eval(const MatrixOperator& A,
                                    const HalfPlaneFunction& f, int m,
                                    double alpha,
                                    const QuadratureConfig& quad = {});

}  // namespace hpcalc
