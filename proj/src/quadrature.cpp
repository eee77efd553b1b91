// SPDX-License-Identifier: Apache-2.0

#include "hpcalc/quadrature.hpp"

namespace hpcalc {

FilonMoments filon_moments(double freq, double h) {
  const double theta = freq * h;
  FilonMoments m;
  if (std::abs(theta) < 0.5) {
    // Taylor expansions; the closed forms cancel catastrophically here.
    const double t2 = theta * theta;
    const double t4 = t2 * t2;
    const double t6 = t4 * t2;
    m.m0 = 2.0 * h * (1.0 - t2 / 6.0 + t4 / 120.0 - t6 / 5040.0);
    m.m1 = Complex(0.0, -2.0 * h * h) *
           (theta / 3.0 - theta * t2 / 30.0 + theta * t4 / 840.0 -
            theta * t6 / 45360.0);
    m.m2 = 2.0 * h * h * h * (1.0 / 3.0 - t2 / 10.0 + t4 / 168.0 - t6 / 6480.0);
  } else {
    const double s = std::sin(theta);
    const double c = std::cos(theta);
    m.m0 = 2.0 * s / freq;
    m.m1 = Complex(0.0, -2.0) * (s - theta * c) / (freq * freq);
    m.m2 = 2.0 * ((theta * theta - 2.0) * s + 2.0 * theta * c) /
           (freq * freq * freq);
  }
  return m;
}

}  // namespace hpcalc
