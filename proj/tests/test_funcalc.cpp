// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "test_support.hpp"

using namespace hpcalc;
using hpcalc::testing::eigen_oracle;
using hpcalc::testing::rel_error;

namespace {

MatrixOperator diag_op(std::initializer_list<Complex> d) {
  const Index n = static_cast<Index>(d.size());
  Matrix m = Matrix::Zero(n, n);
  Index i = 0;
  for (Complex v : d) m(i, i) = v, ++i;
  return MatrixOperator(std::move(m), SpaceDescriptor::hilbert(n));
}

}  // namespace

TEST_CASE("resolvent: diagonal and Jordan block") {
  const MatrixOperator A = diag_op({Complex(1.0), Complex(2.0)});
  const Matrix R = resolvent(A, Complex(0.0)).entries;
  CHECK(std::abs(R(0, 0) + 1.0) < 1e-14);
  CHECK(std::abs(R(1, 1) + 0.5) < 1e-14);

  // J(1;2): hand inverse of (0 - J) gives [[-1, 1], [0, -1]]
  Matrix J(2, 2);
  J << Complex(1.0), Complex(1.0), Complex(0.0), Complex(1.0);
  const MatrixOperator Jop(J, SpaceDescriptor::hilbert(2));
  const Matrix RJ = resolvent(Jop, Complex(0.0)).entries;
  Matrix want(2, 2);
  want << Complex(-1.0), Complex(1.0), Complex(0.0), Complex(-1.0);
  CHECK((RJ - want).cwiseAbs().maxCoeff() < 1e-14);
  // definition check: (lambda I - A) R = I
  CHECK(((Complex(0.0) * Matrix::Identity(2, 2) - J) * RJ -
         Matrix::Identity(2, 2))
            .cwiseAbs()
            .maxCoeff() < 1e-12);

  CHECK_THROWS_AS(resolvent(A, Complex(1.0)), SpectrumHit);
}

TEST_CASE("half-plane type check") {
  const MatrixOperator A = diag_op({Complex(1.0), Complex(2.0)});
  const auto rep = half_plane_type_check(A, 1.0, {0.0, 0.5, -1.0});
  CHECK(rep.pass);
  for (const auto& e : rep.entries) {
    if (e.alpha == 0.0) CHECK(e.supNorm == doctest::Approx(1.0).epsilon(1e-6));
  }

  const MatrixOperator B = diag_op({Complex(-1.0)});
  const auto repB = half_plane_type_check(B, 0.0, {-2.0});
  CHECK_FALSE(repB.pass);
  CHECK(repB.witnessEigenvalue.real() == doctest::Approx(-1.0));

  // generator of a semigroup of type omega passes at that omega
  RandomStream rs(17);
  const MatrixOperator C(
      testing::random_matrix_with_abscissa(rs, 4, 0.5),
      SpaceDescriptor::hilbert(4));
  CHECK(half_plane_type_check(C, 0.5, {0.0, -1.0}).pass);
}

TEST_CASE("dunford: regularizer reproduces the squared resolvent") {
  const MatrixOperator A = diag_op({Complex(1.0), Complex(2.0)});
  const double mu = -1.0;
  const HalfPlaneFunction e =
      HalfPlaneFunction::rational_fn(RationalFn::simple(Complex(mu), 2), 0.0);
  QuadratureConfig quad;
  quad.tolerance = 1e-10;
  const CalcResult res = dunford_eval(A, e, quad);
  Matrix want = Matrix::Zero(2, 2);
  want(0, 0) = Complex(0.25);  // (mu-1)^{-2}
  want(1, 1) = Complex(1.0 / 9.0);
  CHECK((res.op.entries - want).cwiseAbs().maxCoeff() < 1e-8);

  const Matrix R = resolvent(A, Complex(mu)).entries;
  CHECK((res.op.entries - R * R).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("dunford: zero function and decay guard") {
  const MatrixOperator A = diag_op({Complex(1.0), Complex(2.0)});
  const HalfPlaneFunction z = HalfPlaneFunction::rational_fn(
      RationalFn::simple(Complex(-1.0), 2, Complex(0.0)), 0.0);
  const CalcResult res = dunford_eval(A, z);
  CHECK(res.op.entries.cwiseAbs().maxCoeff() < 1e-12);

  const HalfPlaneFunction c = HalfPlaneFunction::constant(Complex(1.0), 0.0);
  CHECK_THROWS_AS(dunford_eval(A, c), TailBoundFailure);

  QuadratureConfig quad;
  quad.abscissa = 5.0;  // outside (alpha, omega)
  const HalfPlaneFunction e =
      HalfPlaneFunction::rational_fn(RationalFn::simple(Complex(-1.0), 2), 0.0);
  CHECK_THROWS_AS(dunford_eval(A, e, quad), AbscissaError);
}

TEST_CASE("dunford: exponential-rational against the eigen oracle") {
  RandomStream rs(31);
  for (int trial = 0; trial < 3; ++trial) {
    const Matrix M = testing::random_matrix_with_abscissa(rs, 5, 1.0);
    const MatrixOperator A(M, SpaceDescriptor::hilbert(5));
    // f(z) = e^{-z} (mu - z)^{-2}
    const Complex mu(-1.0);
    std::vector<ExpTerm> terms = {ExpTerm{1.0, RationalFn::simple(mu, 2)}};
    const HalfPlaneFunction f = HalfPlaneFunction::exp_rational(terms, 0.0);
    QuadratureConfig quad;
    quad.tolerance = 1e-9;
    const CalcResult res = dunford_eval(A, f, quad);
    const Matrix want = eigen_oracle(M, [&](Complex z) {
      return std::exp(-z) / ((mu - z) * (mu - z));
    });
    CHECK(rel_error(res.op.entries, want) < 1e-6);
  }
}

TEST_CASE("dunford: value independent of the line abscissa") {
  const MatrixOperator A = diag_op({Complex(1.0), Complex(3.0)});
  const HalfPlaneFunction f =
      HalfPlaneFunction::rational_fn(RationalFn::simple(Complex(-2.0), 2), -1.0);
  QuadratureConfig q1, q2;
  q1.tolerance = q2.tolerance = 1e-10;
  q1.abscissa = -0.5;
  q2.abscissa = 0.75;
  const CalcResult r1 = dunford_eval(A, f, q1);
  const CalcResult r2 = dunford_eval(A, f, q2);
  CHECK((r1.op.entries - r2.op.entries).cwiseAbs().maxCoeff() <
        10.0 * (r1.errorBound + r2.errorBound) + 1e-9);
}

TEST_CASE("dunford: multiplicativity on the decaying class") {
  RandomStream rs(57);
  const Matrix M = testing::random_matrix_with_abscissa(rs, 4, 1.0);
  const MatrixOperator A(M, SpaceDescriptor::hilbert(4));
  const RationalFn fr = RationalFn::simple(Complex(-1.0), 2);
  const RationalFn gr = RationalFn::simple(Complex(-2.0, 1.0), 2);
  const HalfPlaneFunction f = HalfPlaneFunction::rational_fn(fr, 0.0);
  const HalfPlaneFunction g = HalfPlaneFunction::rational_fn(gr, 0.0);
  const HalfPlaneFunction fg =
      HalfPlaneFunction::rational_fn(fr.times(gr), 0.0);
  QuadratureConfig quad;
  quad.tolerance = 1e-9;
  const Matrix lhs = dunford_eval(A, fg, quad).op.entries;
  const Matrix rhs =
      dunford_eval(A, f, quad).op.entries * dunford_eval(A, g, quad).op.entries;
  CHECK(rel_error(lhs, rhs) < 1e-6);
}

TEST_CASE("regularized: unital and matches the exponential") {
  const MatrixOperator A = diag_op({Complex(1.0), Complex(2.0)});
  QuadratureConfig quad;
  quad.tolerance = 1e-10;
  const HalfPlaneFunction one = HalfPlaneFunction::constant(Complex(1.0), 0.0);
  const CalcResult id = regularized_eval(A, one, -1.0, quad);
  CHECK((id.op.entries - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-8);

  const double t = 0.7;
  const HalfPlaneFunction et =
      HalfPlaneFunction::exponential(t, Complex(1.0), 0.0);
  const CalcResult sg = regularized_eval(A, et, -1.0, quad);
  const Matrix want = semigroup_exp(A, t).entries;
  CHECK(rel_error(sg.op.entries, want) < 1e-7);
}

TEST_CASE("regularized: independent of the regularizer pole") {
  RandomStream rs(91);
  const Matrix M = testing::random_matrix_with_abscissa(rs, 4, 1.0);
  const MatrixOperator A(M, SpaceDescriptor::hilbert(4));
  const HalfPlaneFunction f =
      HalfPlaneFunction::exponential(0.5, Complex(1.0), 0.0);
  QuadratureConfig quad;
  quad.tolerance = 1e-11;
  const CalcResult r1 = regularized_eval(A, f, -2.0, quad);
  const CalcResult r2 = regularized_eval(A, f, -5.0, quad);
  CHECK((r1.op.entries - r2.op.entries).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("semigroup exponential") {
  const MatrixOperator A = diag_op({Complex(1.0), Complex(2.0)});
  CHECK((semigroup_exp(A, 0.0).entries - Matrix::Identity(2, 2))
            .cwiseAbs()
            .maxCoeff() < 1e-15);
  const Matrix T1 = semigroup_exp(A, 1.0).entries;
  CHECK(std::abs(T1(0, 0) - std::exp(-1.0)) < 1e-12);
  CHECK(std::abs(T1(1, 1) - std::exp(-2.0)) < 1e-12);
  CHECK_THROWS(semigroup_exp(A, -1.0));

  RandomStream rs(5);
  for (int trial = 0; trial < 5; ++trial) {
    const MatrixOperator B(rs.gaussian_matrix(4, 4),
                           SpaceDescriptor::hilbert(4));
    const double s = 0.4, t = 1.1;
    const Matrix lhs = semigroup_exp(B, s + t).entries;
    const Matrix rhs = semigroup_exp(B, s).entries * semigroup_exp(B, t).entries;
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() <
          1e-9 * std::max(1.0, lhs.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("derivative calculus: scalar exponential") {
  const MatrixOperator A = diag_op({Complex(1.0)});
  const HalfPlaneFunction f =
      HalfPlaneFunction::exponential(1.0, Complex(1.0), -1.0);
  QuadratureConfig quad;
  quad.tolerance = 1e-8;
  const CalcResult res = derivative_calculus_eval(A, f, 1, -1.0, quad);
  CHECK(std::abs(res.op.entries(0, 0) - Complex(-std::exp(-1.0))) < 1e-6);
}

TEST_CASE("derivative calculus: constants vanish") {
  const MatrixOperator A = diag_op({Complex(1.0), Complex(2.0)});
  const HalfPlaneFunction c = HalfPlaneFunction::constant(Complex(3.0), -1.0);
  for (int m : {1, 2}) {
    const CalcResult res = derivative_calculus_eval(A, c, m, -0.5);
    CHECK(res.op.entries.cwiseAbs().maxCoeff() < 1e-7);
  }
  CHECK_THROWS(derivative_calculus_eval(A, c, 0, -0.5));
}

TEST_CASE("derivative calculus: m = 1 matches the symbolic derivative") {
  RandomStream rs(123);
  QuadratureConfig quad;
  quad.tolerance = 1e-9;
  for (int trial = 0; trial < 5; ++trial) {
    const Matrix M = testing::random_matrix_with_abscissa(rs, 4, 1.0);
    const MatrixOperator A(M, SpaceDescriptor::hilbert(4));
    // random bounded rational: pole location and multiplicity vary
    const double re = -1.0 - rs.uniform();
    const double im = 2.0 * rs.uniform() - 1.0;
    const int mult = 1 + static_cast<int>(rs.raw() % 2);
    const HalfPlaneFunction f = HalfPlaneFunction::rational_fn(
        RationalFn::simple(Complex(re, im), mult), 0.0);
    const Matrix viaPowers =
        derivative_calculus_eval(A, f, 1, 0.0, quad).op.entries;
    const Matrix viaSymbolic = dunford_eval(A, f.derivative(), quad).op.entries;
    CHECK(rel_error(viaPowers, viaSymbolic) < 1e-6);
  }
}

TEST_CASE("derivative calculus: m = 2 against the eigen oracle") {
  const MatrixOperator A = diag_op({Complex(1.0), Complex(2.0)});
  const Complex mu(-1.0);
  const HalfPlaneFunction f =
      HalfPlaneFunction::rational_fn(RationalFn::simple(mu, 2), 0.0);
  QuadratureConfig quad;
  quad.tolerance = 1e-10;
  const CalcResult res = derivative_calculus_eval(A, f, 2, 0.0, quad);
  // d^2/dz^2 (mu - z)^{-2} = 6 (mu - z)^{-4}
  const Matrix want = eigen_oracle(
      A.entries, [&](Complex z) { return 6.0 / std::pow(mu - z, 4); });
  CHECK(rel_error(res.op.entries, want) < 1e-7);
}
