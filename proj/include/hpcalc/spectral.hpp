// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <string>
#include <vector>

#include "hpcalc/conditions.hpp"

namespace hpcalc {

struct GrowthBound {
  double value = 0.0;     // exact: min Re sigma(A)
  double fitValue = 0.0;  // decay exponent fitted from log||T_t||
  bool consistent = true; // fit agrees with the exact value
};

// Growth bound omega(A); exact for matrices, with a norm-sampling fit as a
// consistency check.
GrowthBound growth_bound(const MatrixOperator& A,
                         std::vector<double> timeGrid = {});

struct S0Bound {
  double value = 0.0;      // exact: min Re sigma(A)
  double scanValue = 0.0;  // largest alpha the resolvent scan certifies
  bool consistent = true;
};

// Abscissa of uniform boundedness of the resolvent.
S0Bound s0_bound(const MatrixOperator& A, int scanSteps = 24);

struct GammaAbscissae {
  double omegaGamma = 0.0;
  double s0Gamma = 0.0;
  bool omegaGammaNegInf = false;
  bool s0GammaNegInf = false;
  bool exact = false;  // Hilbert collapse
};

// gamma-bounded analogues via bisection on gamma_type_check /
// gamma_bound_estimate of the resolvent family.
GammaAbscissae gamma_abscissae(const MatrixOperator& A,
                               const GaussianConfig& cfg);

struct BoundsReport {
  double omega = 0.0;
  double s0 = 0.0;
  double omegaGamma = 0.0;
  double s0Gamma = 0.0;
  bool omegaGammaNegInf = false;
  bool s0GammaNegInf = false;
  double fitOmega = 0.0;
  bool orderingOk = true;       // omegaGamma <= omega <= s0Gamma <= s0
  double lInftyMeansBound = 0.0;  // int ||e^{omega' s} T_s|| ds at the probe
  double lInftyProbe = 0.0;       // omega' < omega(A) that the bound certifies
  std::map<std::string, std::string> methods;
};

// Collects all four abscissae and checks the ordering chain, including the
// L^infty-means certificate for omega(A) <= s0^gamma(A).
BoundsReport gearhart_pruss_report(const MatrixOperator& A,
                                   const GaussianConfig& cfg);

// Reconstructs e^{-delta t} T_t through the Dunford-Riesz disc contour
// around sigma(A + delta); returns the reconstruction error against
// semigroup_exp. Requires the spectrum of A + delta inside Re z > 0.
double disc_contour_semigroup_error(const MatrixOperator& A, double delta,
                                    double t, int nodes = 256);

}  // namespace hpcalc
