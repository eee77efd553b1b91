// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hpcalc/funcalc.hpp"
#include "hpcalc/gaussian.hpp"

namespace hpcalc {

// One instance attaining a reported ratio; carries enough data to
// re-evaluate the ratio from scratch.
struct ConditionWitness {
  double recordedRatio = 0.0;
  std::vector<double> params;  // alpha per slot, or time for semigroup families
  std::vector<Vector> xs;
  std::vector<Vector> ys;
  std::vector<int> functionIndex;  // corpus index per slot, when applicable
};

struct ConditionReport {
  std::string conditionName;
  int m = 1;
  double omega = 0.0;
  double constantLowerBound = 0.0;
  std::vector<ConditionWitness> witnesses;
  double quadratureErrorBound = 0.0;
  std::string verdict = "consistent";  // or "violatedWithWitness"
  std::uint64_t seed = 0;
  bool exact = false;
};

QuadratureConfig condition_quadrature_defaults();

// Geometric schedule of distances omega - alpha in [1e-3, 1e3].
std::vector<double> alpha_schedule(double omega);

struct GfsIntegral {
  double value = 0.0;
  double errorBound = 0.0;
};

// int_R |< R(alpha+it,A)^{m+1} x, y >| dt, m >= 1.
GfsIntegral gfs_integral(const MatrixOperator& A, double alpha, int m,
                         const Vector& x, const Vector& y,
                         const QuadratureConfig& quad = condition_quadrature_defaults());

// sup over sampled (alpha, x, y) of (omega-alpha)^m gfs_integral / (|x||y|).
ConditionReport gfs_constant(const MatrixOperator& A, double omega, int m,
                             int trialBudget,
                             const QuadratureConfig& quad = condition_quadrature_defaults(),
                             std::uint64_t seed = 2024);

// Weak-gamma variant: families (alpha_k, x_k, y_k), summed integrals over
// the product of the Gaussian norms of both families.
ConditionReport wgfs_constant(const MatrixOperator& A, double omega, int m,
                              int familyBudget, const GaussianConfig& cfg,
                              const QuadratureConfig& quad = condition_quadrature_defaults());

// Functions bounded on R_alpha used by the calculus estimators; the witness
// schedule e^{-tz} e^{t alpha} with t = 1/(omega-alpha) is included.
using FunctionCorpus =
    std::function<std::vector<HalfPlaneFunction>(double alpha, double omega)>;
std::vector<HalfPlaneFunction> standard_function_corpus(double alpha,
                                                        double omega);

// sup over corpus and alpha of (omega-alpha)^m ||f^{(m)}(A)|| / ||f||_Hinf.
ConditionReport strong_m_calc_constant(const MatrixOperator& A, double omega,
                                       int m, const FunctionCorpus& corpus,
                                       const QuadratureConfig& quad = condition_quadrature_defaults());

// gamma-bound of the family {(omega-alpha)^m f^{(m)}(A)}.
ConditionReport gamma_strong_m_calc_constant(const MatrixOperator& A,
                                             double omega, int m,
                                             const FunctionCorpus& corpus,
                                             const GaussianConfig& cfg,
                                             const QuadratureConfig& quad = condition_quadrature_defaults());

struct SquareFunctionReport {
  ConditionReport primal;
  ConditionReport adjoint;
};

// ||(sum_k int (omega-alpha_k)|R(alpha_k+it,A)x_k|^2 dt)^{1/2}|| over the
// square function of (x_k); the adjoint constant uses A^T on the dual space.
SquareFunctionReport square_function_condition(const MatrixOperator& A,
                                               double omega, int familyBudget,
                                               const GaussianConfig& cfg,
                                               const QuadratureConfig& quad = condition_quadrature_defaults());

// gamma-bound estimate of {e^{omega t} T_t : t in grid}, refined until the
// estimate stabilizes; detects exponential blow-up.
ConditionReport gamma_type_check(const MatrixOperator& A, double omega,
                                 std::vector<double> timeGrid,
                                 const GaussianConfig& cfg);

// Recomputes the ratio a stored witness claims, using the same estimator
// path (standard corpus for the calculus conditions).
double reevaluate_witness(const MatrixOperator& A, const ConditionReport& report,
                          const ConditionWitness& w, const GaussianConfig& cfg,
                          const QuadratureConfig& quad = condition_quadrature_defaults());

}  // namespace hpcalc
