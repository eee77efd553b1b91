// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "hpcalc/conditions.hpp"

namespace hpcalc {

// A reproducible construction with closed-form expected values.
struct CorpusCase {
  std::string id;
  std::vector<std::pair<std::string, double>> params;
  std::vector<std::pair<std::string, double>> expected;
  double tolerance = 1e-12;
};

// Right-translation semigroup discretized on [0, 2] with h = 1/n, shifts
// S_{t_i}, t_i = (i-1)/n, and witnesses f_i = chi_{[0,1/n]}. The two
// square-function values are exact on the grid: 1 and n^{1/2-1/p}.
struct ShiftSemigroupCase {
  CorpusCase meta;
  SpaceDescriptor space;
  std::vector<MatrixOperator> shifts;
  std::vector<Vector> witnesses;  // f_i = chi_{[0,1/n]} for every slot
  // reversed witnesses x_k = chi_{cell n-1-k}; the slot-ordered shifts move
  // them all onto one cell, which is the obstruction direction for p > 2
  std::vector<Vector> pileupWitnesses;
  double shiftedValue = 0.0;
  double unshiftedValue = 0.0;
  double expectedShifted = 1.0;
  double expectedUnshifted = 0.0;
};
ShiftSemigroupCase shift_semigroup_case(int n, double p);

// Diagonal phase group T_t (sum gamma_k (x) x_k) = sum e^{-it xi_k}
// gamma_k (x) x_k on the truncated Gaussian space with n coordinates.
struct MultiplierGroup {
  std::vector<double> xi;
  SpaceDescriptor base;

  Index coordinates() const { return static_cast<Index>(xi.size()); }
  Vector phases(double t) const;
  std::vector<Vector> apply(double t, const std::vector<Vector>& tuple) const;
  // block-diagonal representation on the product Hilbert space (Hilbert base)
  MatrixOperator product_operator(double t) const;
};
MultiplierGroup multiplier_group_case(std::vector<double> xi,
                                      const SpaceDescriptor& base);

// Monte-Carlo estimate of ||T_t|| in the truncated Gaussian-sum norm.
Estimate multiplier_norm_estimate(const MultiplierGroup& g, double t,
                                  const GaussianConfig& cfg);

// max_{t,s in grid} |phases(t) phases(s) - phases(t+s)| (group law).
double multiplier_group_law_error(const MultiplierGroup& g,
                                  const std::vector<double>& times);

struct MultiplierCalcCheck {
  Vector appliedMultiplier;   // from summing b against the group action
  Vector expectedMultiplier;  // (Lb)(i xi_k) = bhat(xi_k)
  double maxAbsError = 0.0;
  double opNormLowerBound = 0.0;  // of f(A) on the truncated Gaussian space
  double hinfNorm = 0.0;          // ||Lb||_{Hinf(R_0)}
  double normRatio = 0.0;         // opNormLowerBound / hinfNorm
};
MultiplierCalcCheck multiplier_calculus_case(const MultiplierGroup& g,
                                             const LaplaceDensity& b,
                                             const GaussianConfig& cfg);

// Sectorial diagonal operator: verifies (-alpha) * gfs_integral <=
// C pi |x| |y| with C = sup ||lambda R(lambda, A)|| over Re lambda < 0.
struct SectorialCase {
  MatrixOperator A;
  double sectorConstant = 0.0;
  struct Sample {
    double alpha = 0.0;
    double lhs = 0.0;
    double bound = 0.0;
  };
  std::vector<Sample> samples;
  bool holds = false;
  double minMargin = 0.0;  // min over samples of bound - lhs
};
SectorialCase sectorial_case(const Vector& diagonal,
                             const SpaceDescriptor& space, int budget,
                             const QuadratureConfig& quad = condition_quadrature_defaults(),
                             std::uint64_t seed = 77);

// R(alpha+it, A) x = -int_0^inf e^{its} e^{alpha s} T_s x ds, by quadrature.
struct LaplaceResolventCheck {
  Vector viaIntegral;
  Vector viaSolve;
  double relError = 0.0;
  double quadErrorBound = 0.0;
};
LaplaceResolventCheck laplace_resolvent_case(const MatrixOperator& A,
                                             double alpha, double t,
                                             const Vector& x,
                                             const QuadratureConfig& quad = condition_quadrature_defaults());

}  // namespace hpcalc
