// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hpcalc/corpus.hpp"
#include "test_support.hpp"

using namespace hpcalc;

namespace {

GaussianConfig fast_cfg(std::uint64_t seed = 1) {
  GaussianConfig cfg;
  cfg.sampleCount = 10000;
  cfg.batches = 20;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_CASE("gaussian norm: single vector recovers the norm") {
  RandomStream rs(8);
  for (const auto& space :
       {SpaceDescriptor::hilbert(4), SpaceDescriptor::seq_lattice(4, 4.0)}) {
    const Vector x = rs.gaussian_vector(4);
    const Estimate est = gaussian_norm({{x}, space}, fast_cfg());
    const double want = vector_norm(x, space);
    CHECK(est.ciLow <= want * 1.02);
    CHECK(est.ciHigh >= want * 0.98);
    CHECK(std::abs(est.value - want) < 0.05 * want);
  }
}

TEST_CASE("gaussian norm: Hilbert orthogonality identity") {
  RandomStream rs(9);
  const auto space = SpaceDescriptor::hilbert(5);
  std::vector<Vector> xs;
  double sumsq = 0.0;
  for (int k = 0; k < 3; ++k) {
    xs.push_back(rs.gaussian_vector(5));
    sumsq += xs.back().squaredNorm();
  }
  const Estimate est = gaussian_norm({xs, space}, fast_cfg());
  CHECK(std::abs(est.value - std::sqrt(sumsq)) < 0.02 * std::sqrt(sumsq));
}

TEST_CASE("gaussian norm: deterministic given the seed") {
  RandomStream rs(10);
  const auto space = SpaceDescriptor::seq_lattice(3, 3.0);
  const std::vector<Vector> xs = {rs.gaussian_vector(3), rs.gaussian_vector(3)};
  const Estimate a = gaussian_norm({xs, space}, fast_cfg(77));
  const Estimate b = gaussian_norm({xs, space}, fast_cfg(77));
  CHECK(a.value == b.value);  // bit identical
  CHECK(a.ciLow == b.ciLow);
  const Estimate c = gaussian_norm({xs, space}, fast_cfg(78));
  CHECK(a.value != c.value);
}

TEST_CASE("square function norm: shift-case closed forms") {
  // values from the right-translation construction: 1 and n^{1/2-1/p}
  for (int n : {4, 16}) {
    for (double p : {4.0, 4.0 / 3.0, 2.0}) {
      const auto c = shift_semigroup_case(n, p);
      CHECK(c.shiftedValue == doctest::Approx(1.0).epsilon(1e-13));
      CHECK(c.unshiftedValue ==
            doctest::Approx(std::pow(n, 0.5 - 1.0 / p)).epsilon(1e-13));
    }
  }
  // single vector: its lattice norm
  const auto space = SpaceDescriptor::seq_lattice(3, 3.0);
  RandomStream rs(12);
  const Vector x = rs.gaussian_vector(3);
  CHECK(square_function_norm({x}, space) ==
        doctest::Approx(vector_norm(x, space)));
  CHECK_THROWS(square_function_norm({x}, SpaceDescriptor::hilbert(3)));
}

TEST_CASE("gamma space norm: Hilbert examples") {
  // f(t) = 1_{[0,1]}(t) x
  RandomStream rs(13);
  const Vector x = rs.gaussian_vector(3);
  SampledFunction f;
  f.tStart = 0.0;
  f.tStep = 0.01;
  f.tCount = 100;
  f.branches = 1;
  f.space = SpaceDescriptor::hilbert(3);
  f.values = Matrix(3, 100);
  for (Index j = 0; j < 100; ++j) f.values.col(j) = x;
  const GammaNorm g = gamma_space_norm(f);
  CHECK_FALSE(g.surrogate);
  CHECK(g.value == doctest::Approx(x.norm()).epsilon(1e-12));

  // orthonormal branch functions: (sum ||x_k||^2)^{1/2}
  SampledFunction fb;
  fb.tStart = 0.0;
  fb.tStep = 0.5;
  fb.tCount = 2;
  fb.branches = 2;
  fb.space = SpaceDescriptor::hilbert(3);
  fb.values = Matrix::Zero(3, 4);
  const Vector x1 = rs.gaussian_vector(3), x2 = rs.gaussian_vector(3);
  // h_1 lives on cell 0 of branch 0, h_2 on cell 1 of branch 1, both L2-normalized
  fb.values.col(0 * 2 + 0) = x1 / std::sqrt(0.5);
  fb.values.col(1 * 2 + 1) = x2 / std::sqrt(0.5);
  const GammaNorm gb = gamma_space_norm(fb);
  CHECK(gb.value == doctest::Approx(std::sqrt(x1.squaredNorm() + x2.squaredNorm()))
                        .epsilon(1e-12));
}

TEST_CASE("gamma space norm: exponential branches give 1/sqrt(2) factor") {
  // psi(t,k) = sqrt(-a_k) e^{a_k t} x_k on R_+ x {1..N}
  RandomStream rs(14);
  const Index dim = 3;
  const int N = 2;
  const double a[2] = {-1.0, -2.5};
  const Vector x1 = rs.gaussian_vector(dim), x2 = rs.gaussian_vector(dim);
  SampledFunction psi;
  psi.tStart = 0.0;
  psi.tStep = 1e-3;
  psi.tCount = 20000;  // [0, 20]
  psi.branches = N;
  psi.space = SpaceDescriptor::hilbert(dim);
  psi.values = Matrix::Zero(dim, psi.cols());
  for (Index j = 0; j < psi.tCount; ++j) {
    const double t = psi.cellMid(j);
    psi.values.col(j * N + 0) = std::sqrt(-a[0]) * std::exp(a[0] * t) * x1;
    psi.values.col(j * N + 1) = std::sqrt(-a[1]) * std::exp(a[1] * t) * x2;
  }
  const double want =
      std::sqrt(0.5 * (x1.squaredNorm() + x2.squaredNorm()));
  CHECK(gamma_space_norm(psi).value == doctest::Approx(want).epsilon(1e-4));
}

TEST_CASE("fourier transform: zero, mass, and linearity") {
  SampledFunction f;
  f.tStart = -1.0;
  f.tStep = 0.125;
  f.tCount = 16;
  f.branches = 1;
  f.space = SpaceDescriptor::hilbert(2);
  f.values = Matrix::Zero(2, 16);
  const SampledFunction zero = fourier_transform(f);
  CHECK(zero.values.cwiseAbs().maxCoeff() == 0.0);

  RandomStream rs(15);
  for (Index j = 0; j < 16; ++j) f.values.col(j) = rs.gaussian_vector(2);
  // hat f(0) = int f; put a frequency cell centered at 0
  const SampledFunction ft = fourier_transform(f, -0.005, 0.01, 1);
  Vector mass = Vector::Zero(2);
  for (Index j = 0; j < 16; ++j) mass += f.tStep * f.values.col(j);
  CHECK((ft.values.col(0) - mass).norm() < 1e-4 * (1.0 + mass.norm()));
}

TEST_CASE("fourier transform: Plancherel factor sqrt(2 pi) on a fine grid") {
  // f = chi_{[0,1]} x
  const Index dim = 2;
  RandomStream rs(16);
  const Vector x = rs.gaussian_vector(dim);
  SampledFunction f;
  f.tStart = 0.0;
  f.tStep = 1e-3;
  f.tCount = 1000;
  f.branches = 1;
  f.space = SpaceDescriptor::hilbert(dim);
  f.values = Matrix(dim, 1000);
  for (Index j = 0; j < 1000; ++j) f.values.col(j) = x;
  const SampledFunction ft = fourier_transform(f, -200.0, 0.05, 8000);
  const double ratio = gamma_space_norm(ft).value / gamma_space_norm(f).value;
  CHECK(ratio == doctest::Approx(std::sqrt(2.0 * kPi)).epsilon(0.01));
}

TEST_CASE("gamma bound: Hilbert exactness and identity family") {
  Matrix d1 = Matrix::Zero(2, 2), d2 = Matrix::Zero(2, 2);
  d1(0, 0) = 1.0;
  d1(1, 1) = 1.0;
  d2(0, 0) = 2.0;
  d2(1, 1) = 2.0;
  const auto h2 = SpaceDescriptor::hilbert(2);
  const GammaBound gb = gamma_bound_estimate(
      {MatrixOperator(d1, h2), MatrixOperator(d2, h2)}, {}, fast_cfg());
  CHECK(gb.exact);
  CHECK(gb.lowerBound == doctest::Approx(2.0));

  // identity family on a lattice: ratio 1 within MC slack
  const auto l4 = SpaceDescriptor::seq_lattice(3, 4.0);
  const GammaBound gi = gamma_bound_estimate(
      {MatrixOperator(Matrix::Identity(3, 3), l4)}, {}, fast_cfg());
  CHECK_FALSE(gi.exact);
  CHECK(gi.lowerBound == doctest::Approx(1.0).epsilon(0.05));
  CHECK_THROWS(gamma_bound_estimate({}, {}, fast_cfg()));
}

TEST_CASE("wgamma pairing ratio") {
  const auto h1 = SpaceDescriptor::hilbert(1);
  const MatrixOperator I1(Matrix::Identity(1, 1), h1);
  const Vector e1 = Vector::Ones(1);
  const double r = wgamma_pairing_ratio({I1}, {e1}, {e1}, fast_cfg());
  CHECK(r == doctest::Approx(1.0).epsilon(0.05));

  const MatrixOperator Z(Matrix::Zero(1, 1), h1);
  CHECK(wgamma_pairing_ratio({Z}, {e1}, {e1}, fast_cfg()) == 0.0);

  // weak bound never beats the strong bound (MC slack allowed)
  RandomStream rs(18);
  const auto l3 = SpaceDescriptor::seq_lattice(3, 3.0);
  std::vector<MatrixOperator> fam;
  for (int k = 0; k < 2; ++k)
    fam.emplace_back(rs.gaussian_matrix(3, 3), l3);
  const std::vector<Vector> xs = {rs.gaussian_vector(3), rs.gaussian_vector(3)};
  const std::vector<Vector> ys = {rs.gaussian_vector(3), rs.gaussian_vector(3)};
  const double weak = wgamma_pairing_ratio(fam, xs, ys, fast_cfg());
  GaussianConfig strongCfg = fast_cfg();
  strongCfg.searchBudget = 400;
  const double strong =
      gamma_bound_estimate(fam, {GaussianSum{xs, l3}}, strongCfg).lowerBound;
  CHECK(weak <= strong * 1.15);
}

TEST_CASE("K-convexity ratio") {
  RandomStream rs(19);
  // Hilbert: self-duality gives 1
  const auto h3 = SpaceDescriptor::hilbert(3);
  std::vector<Vector> xs = {rs.gaussian_vector(3), rs.gaussian_vector(3)};
  CHECK(kconvexity_ratio({xs, h3}, fast_cfg()) ==
        doctest::Approx(1.0).epsilon(0.06));

  // N = 1 on a lattice: the norming functional is the witness
  const auto l4 = SpaceDescriptor::seq_lattice(4, 4.0);
  const std::vector<Vector> single = {rs.gaussian_vector(4)};
  CHECK(kconvexity_ratio({single, l4}, fast_cfg()) ==
        doctest::Approx(1.0).epsilon(0.06));

  // random lattice family: finite, recorded
  std::vector<Vector> fam = {rs.gaussian_vector(4), rs.gaussian_vector(4),
                             rs.gaussian_vector(4)};
  const double k = kconvexity_ratio({fam, l4}, fast_cfg());
  CHECK(std::isfinite(k));
  CHECK(k > 0.0);
  MESSAGE("K-convexity lower bound on l^4_4 family: ", k);
}

TEST_CASE("contraction principle holds within MC slack") {
  RandomStream rs(20);
  const auto l3 = SpaceDescriptor::seq_lattice(4, 3.0);
  int violations = 0;
  for (int trial = 0; trial < 50; ++trial) {
    RandomStream tr = rs.substream("cp", trial);
    const int N = 1 + static_cast<int>(tr.raw() % 4);
    std::vector<Vector> xs, scaled;
    for (int k = 0; k < N; ++k) {
      xs.push_back(tr.gaussian_vector(4));
      // |alpha_k| <= 1
      const Complex a = std::exp(Complex(0.0, 2.0 * kPi * tr.uniform())) *
                        tr.uniform();
      scaled.push_back(a * xs.back());
    }
    const Estimate full = gaussian_norm({xs, l3}, fast_cfg(500 + trial));
    const Estimate down = gaussian_norm({scaled, l3}, fast_cfg(500 + trial));
    const double ciw = (full.ciHigh - full.ciLow) + (down.ciHigh - down.ciLow);
    if (down.value > full.value + 3.0 * ciw) ++violations;
  }
  CHECK(violations == 0);
}

TEST_CASE("Khintchine-Maurey sandwich is recorded for fixed p") {
  RandomStream rs(21);
  const auto l4 = SpaceDescriptor::seq_lattice(4, 4.0);
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    RandomStream tr = rs.substream("km", trial);
    const int N = 1 + static_cast<int>(tr.raw() % 3);
    std::vector<Vector> xs;
    for (int k = 0; k < N; ++k) xs.push_back(tr.gaussian_vector(4));
    GaussianConfig cfg = fast_cfg(900 + trial);
    cfg.sampleCount = 4000;
    const double g = gaussian_norm({xs, l4}, cfg).value;
    const double s = square_function_norm(xs, l4);
    const double ratio = g / s;
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  MESSAGE("Gaussian/square-function ratio on l^4: [", lo, ", ", hi, "]");
  CHECK(lo > 0.1);
  CHECK(hi < 10.0);
  CHECK(lo <= hi);
}
