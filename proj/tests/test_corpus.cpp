// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hpcalc/corpus.hpp"
#include "test_support.hpp"

using namespace hpcalc;

namespace {

GaussianConfig fast_cfg(std::uint64_t seed = 3) {
  GaussianConfig cfg;
  cfg.sampleCount = 4000;
  cfg.batches = 10;
  cfg.seed = seed;
  cfg.restarts = 3;
  cfg.searchBudget = 40;
  return cfg;
}

}  // namespace

TEST_CASE("shift semigroup case: exact grid values") {
  for (int n : {4, 16, 64}) {
    for (double p : {4.0, 4.0 / 3.0}) {
      const ShiftSemigroupCase c = shift_semigroup_case(n, p);
      CHECK(c.shiftedValue == doctest::Approx(1.0).epsilon(1e-13));
      CHECK(c.unshiftedValue ==
            doctest::Approx(std::pow(n, 0.5 - 1.0 / p)).epsilon(1e-13));
      // expected values regenerate from the closed forms
      CHECK(c.meta.expected[0].second == doctest::Approx(c.shiftedValue));
      CHECK(c.meta.expected[1].second == doctest::Approx(c.unshiftedValue));
    }
    // p = 2: both sides 1, no obstruction
    const ShiftSemigroupCase c2 = shift_semigroup_case(n, 2.0);
    CHECK(c2.shiftedValue == doctest::Approx(1.0));
    CHECK(c2.unshiftedValue == doctest::Approx(1.0));
  }
  CHECK_THROWS(shift_semigroup_case(12, 4.0));
  CHECK_THROWS(shift_semigroup_case(16, 0.5));
}

TEST_CASE("shift family gamma lower bound grows with n at p=4") {
  double prev = 0.0;
  for (int n : {4, 16, 64}) {
    const ShiftSemigroupCase c = shift_semigroup_case(n, 4.0);
    const GammaBound gb = gamma_bound_estimate(
        c.shifts,
        {GaussianSum{c.witnesses, c.space},
         GaussianSum{c.pileupWitnesses, c.space}},
        fast_cfg(37));
    CHECK(gb.lowerBound > prev);
    prev = gb.lowerBound;
  }
  CHECK(prev > 2.0);  // n = 64 pile-up reaches ~ 64^{1/4}/K

  // p = 2: shifts are contractions on L^2, ratio stays near 1
  const ShiftSemigroupCase c2 = shift_semigroup_case(16, 2.0);
  const GammaBound g2 = gamma_bound_estimate(
      c2.shifts,
      {GaussianSum{c2.witnesses, c2.space},
       GaussianSum{c2.pileupWitnesses, c2.space}},
      fast_cfg(38));
  CHECK(g2.lowerBound <= 1.0 + 0.05);
}

TEST_CASE("multiplier group: identity, norm one, group law") {
  const auto base = SpaceDescriptor::hilbert(3);
  const MultiplierGroup g = multiplier_group_case({1.0, 2.0, 5.0}, base);

  CHECK((g.phases(0.0) - Vector::Ones(3)).cwiseAbs().maxCoeff() == 0.0);

  RandomStream rs(61);
  for (int trial = 0; trial < 3; ++trial) {
    const double t = 4.0 * rs.uniform() - 2.0;
    const Estimate est = multiplier_norm_estimate(g, t, fast_cfg(70 + trial));
    CHECK(std::abs(est.value - 1.0) <
          2.0 * (est.ciHigh - est.ciLow) + 0.02);
  }

  std::vector<double> grid;
  for (int i = 0; i <= 6; ++i) grid.push_back(-1.0 + i / 3.0);
  CHECK(multiplier_group_law_error(g, grid) < 1e-12);

  CHECK_THROWS(multiplier_group_case({1.0, 1.0}, base));
}

TEST_CASE("multiplier group: Hilbert gamma bound of the group is 1") {
  const auto base = SpaceDescriptor::hilbert(2);
  const MultiplierGroup g = multiplier_group_case({0.5, 3.0, -2.0}, base);
  std::vector<MatrixOperator> family;
  for (double t : {0.0, 0.3, 1.1, 4.0})
    family.push_back(g.product_operator(t));
  const GammaBound gb = gamma_bound_estimate(family, {}, fast_cfg());
  CHECK(gb.exact);
  CHECK(gb.lowerBound == doctest::Approx(1.0));
}

TEST_CASE("multiplier calculus: exponential density closed forms") {
  const auto base = SpaceDescriptor::hilbert(2);
  const MultiplierGroup g = multiplier_group_case({1.0, 2.0, 5.0}, base);
  LaplaceDensity b;
  b.tStart = 0.0;
  b.tStep = 0.002;
  b.samples = Vector(20000);  // support [0, 40]
  for (Index i = 0; i < b.samples.size(); ++i)
    b.samples(i) = std::exp(-b.node(i));
  const MultiplierCalcCheck chk = multiplier_calculus_case(g, b, fast_cfg());
  // the two routes are the same discrete sum
  CHECK(chk.maxAbsError < 1e-12);
  // against the continuous closed form 1/(1 + i xi)
  for (size_t k = 0; k < g.xi.size(); ++k) {
    const Complex want = 1.0 / Complex(1.0, g.xi[k]);
    CHECK(std::abs(chk.expectedMultiplier(static_cast<Index>(k)) - want) < 1e-4);
  }
  CHECK(chk.normRatio <= 1.0 + 1e-9);
  CHECK(chk.normRatio > 0.5);

  // zero density annihilates
  LaplaceDensity z = b;
  z.samples.setZero();
  const MultiplierCalcCheck zchk = multiplier_calculus_case(g, z, fast_cfg());
  CHECK(zchk.appliedMultiplier.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("multiplier calculus: norm bound on random densities") {
  const auto base = SpaceDescriptor::seq_lattice(2, 4.0);
  const MultiplierGroup g = multiplier_group_case({0.7, -1.3, 4.0}, base);
  RandomStream rs(62);
  for (int trial = 0; trial < 20; ++trial) {
    LaplaceDensity b;
    b.tStart = 0.0;
    b.tStep = 0.01;
    b.samples = Vector(1200);
    const double r1 = 0.5 + rs.uniform(), r2 = 0.5 + 2.0 * rs.uniform();
    const Complex c1(rs.normal(), rs.normal()), c2(rs.normal(), rs.normal());
    for (Index i = 0; i < b.samples.size(); ++i) {
      const double t = b.node(i);
      b.samples(i) = c1 * std::exp(-r1 * t) + c2 * std::exp(-r2 * t) * t;
    }
    const MultiplierCalcCheck chk =
        multiplier_calculus_case(g, b, fast_cfg(80 + trial));
    CHECK(chk.normRatio <= 1.0 + 0.03);  // MC slack on the lattice estimate
  }
}

TEST_CASE("multiplier gamma lower bounds recorded across n") {
  const auto base = SpaceDescriptor::seq_lattice(2, 4.0);
  RandomStream rs(63);
  for (int n : {2, 4, 8}) {
    std::vector<double> xi;
    for (int k = 0; k < n; ++k) xi.push_back(k + rs.uniform());
    const MultiplierGroup g = multiplier_group_case(xi, base);
    // gamma-bound lower bound of {T_t} on sampled times via tuples
    double best = 0.0;
    for (double t : {0.4, 1.0, 2.7}) {
      const Estimate est = multiplier_norm_estimate(g, t, fast_cfg(90 + n));
      best = std::max(best, est.value);
    }
    MESSAGE("multiplier group norm lower bound, n=", n, ": ", best);
    CHECK(best > 1.0 - 0.05);
    CHECK(std::isfinite(best));
  }
}

TEST_CASE("sectorial case: remark bound holds with margin") {
  Vector d(3);
  d << Complex(1.0), Complex(2.0, 0.7), Complex(0.5, -0.3);
  const SectorialCase c =
      sectorial_case(d, SpaceDescriptor::hilbert(3), 12);
  CHECK(c.holds);
  CHECK(c.minMargin > 0.0);
  CHECK(c.sectorConstant >= 1.0);

  // alpha -> 0^-: the left side vanishes
  const auto nearZero = std::min_element(
      c.samples.begin(), c.samples.end(),
      [](const auto& a, const auto& b) { return -a.alpha < -b.alpha; });
  CHECK(nearZero->lhs < 0.05 * nearZero->bound);
}

TEST_CASE("sectorial scalar: asymptote from below") {
  Vector d(1);
  d << Complex(1.0);
  const auto space = SpaceDescriptor::hilbert(1);
  const MatrixOperator A(Matrix(d.asDiagonal()), space);
  const Vector one = Vector::Ones(1);
  double prev = 0.0;
  for (double alpha : {-1.0, -10.0, -100.0, -1000.0}) {
    const double lhs = (-alpha) * gfs_integral(A, alpha, 1, one, one).value;
    CHECK(lhs > prev);          // increases toward the asymptote
    CHECK(lhs < kPi * (1.0 + 1e-9));  // never exceeds C pi with C = 1
    prev = lhs;
  }
  CHECK(prev > 0.99 * kPi);
}

TEST_CASE("laplace resolvent case: scalar value and decay in t") {
  const auto space = SpaceDescriptor::hilbert(1);
  Matrix m(1, 1);
  m(0, 0) = 1.0;
  const MatrixOperator A(m, space);
  const Vector one = Vector::Ones(1);

  // -int_0^inf e^{-2s} ds = -1/2 = R(-1, (1))
  const LaplaceResolventCheck c = laplace_resolvent_case(A, -1.0, 0.0, one);
  CHECK(std::abs(c.viaIntegral(0) - Complex(-0.5)) < 1e-6);
  CHECK(c.relError < 1e-6);

  // both sides decay like 1/t
  const LaplaceResolventCheck cT = laplace_resolvent_case(A, -1.0, 40.0, one);
  CHECK(cT.relError < 1e-3);
  CHECK(std::abs(cT.viaSolve(0)) < 2.0 / 40.0);

  // zero vector stays zero
  const Vector zero = Vector::Zero(1);
  const LaplaceResolventCheck cz = laplace_resolvent_case(A, -1.0, 1.0, zero);
  CHECK(cz.viaIntegral.norm() == 0.0);

  // multi-dimensional non-normal instance
  RandomStream rs(64);
  const Matrix M = hpcalc::testing::random_matrix_with_abscissa(rs, 3, 1.0);
  const MatrixOperator B(M, SpaceDescriptor::hilbert(3));
  const Vector x = rs.gaussian_vector(3);
  const LaplaceResolventCheck cb = laplace_resolvent_case(B, -0.5, 2.0, x);
  CHECK(cb.relError < 1e-5);
}
