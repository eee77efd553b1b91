// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace hpcalc {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr double kPi = 3.14159265358979323846;

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SpectrumHit : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AbscissaError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct TailBoundFailure : std::domain_error {
  using std::domain_error::domain_error;
};

}  // namespace hpcalc
