// SPDX-License-Identifier: Apache-2.0

#include "hpcalc/corpus.hpp"

#include <algorithm>
#include <cmath>

namespace hpcalc {

ShiftSemigroupCase shift_semigroup_case(int n, double p) {
  if (n < 1 || (n & (n - 1)) != 0)
    throw std::invalid_argument("n must be a positive power of 2");
  if (p < 1.0) throw std::invalid_argument("p must be >= 1");

  ShiftSemigroupCase out;
  const double h = 1.0 / n;
  const Index cells = 2 * n;  // grid on [0, 2]
  out.space = SpaceDescriptor::func_lattice(0.0, h, cells, p);

  for (int i = 1; i <= n; ++i) {
    // shift by (i-1) cells: (S_t f)(x) = f(x - t), zero fill on the left
    Matrix S = Matrix::Zero(cells, cells);
    const int k = i - 1;
    for (Index r = k; r < cells; ++r) S(r, r - k) = 1.0;
    out.shifts.emplace_back(std::move(S), out.space);
    out.witnesses.push_back(Vector::Unit(cells, 0));
    out.pileupWitnesses.push_back(Vector::Unit(cells, n - 1 - k));
  }

  std::vector<Vector> shifted(out.shifts.size());
  for (size_t i = 0; i < out.shifts.size(); ++i)
    shifted[i] = out.shifts[i].entries * out.witnesses[i];
  out.shiftedValue = square_function_norm(shifted, out.space);
  out.unshiftedValue = square_function_norm(out.witnesses, out.space);
  out.expectedShifted = 1.0;
  out.expectedUnshifted = std::pow(static_cast<double>(n), 0.5 - 1.0 / p);

  out.meta.id = "nogtype";
  out.meta.params = {{"n", static_cast<double>(n)}, {"p", p}};
  out.meta.expected = {{"shifted", out.expectedShifted},
                       {"unshifted", out.expectedUnshifted}};
  out.meta.tolerance = 1e-12;
  return out;
}

MultiplierGroup multiplier_group_case(std::vector<double> xi,
                                      const SpaceDescriptor& base) {
  std::vector<double> sorted = xi;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("multiplier frequencies must be distinct");
  if (xi.empty()) throw std::invalid_argument("empty frequency list");
  return MultiplierGroup{std::move(xi), base};
}

Vector MultiplierGroup::phases(double t) const {
  Vector ph(coordinates());
  for (Index k = 0; k < ph.size(); ++k)
    ph(k) = std::exp(Complex(0.0, -t * xi[k]));
  return ph;
}

std::vector<Vector> MultiplierGroup::apply(
    double t, const std::vector<Vector>& tuple) const {
  if (tuple.size() != xi.size())
    throw DimensionMismatch("tuple length must match the frequency list");
  const Vector ph = phases(t);
  std::vector<Vector> out(tuple.size());
  for (size_t k = 0; k < tuple.size(); ++k) out[k] = ph(k) * tuple[k];
  return out;
}

MatrixOperator MultiplierGroup::product_operator(double t) const {
  if (base.kind != SpaceKind::Hilbert)
    throw std::invalid_argument(
        "product-space representation needs a Hilbert base");
  const Index d = base.dim;
  const Index n = coordinates();
  Matrix M = Matrix::Zero(n * d, n * d);
  const Vector ph = phases(t);
  for (Index k = 0; k < n; ++k)
    M.block(k * d, k * d, d, d) = ph(k) * Matrix::Identity(d, d);
  return MatrixOperator(std::move(M), SpaceDescriptor::hilbert(n * d));
}

Estimate multiplier_norm_estimate(const MultiplierGroup& g, double t,
                                  const GaussianConfig& cfg) {
  RandomStream base(cfg.seed);
  const Index n = g.coordinates();

  double bestRatio = -1.0;
  std::vector<Vector> bestTuple;
  const long searchSamples = std::max<long>(500, cfg.sampleCount / 10);
  const int tuples = std::max(4, cfg.restarts);
  for (int trial = 0; trial < tuples; ++trial) {
    RandomStream rs = base.substream("multiplier.tuple", trial);
    std::vector<Vector> tuple(n);
    for (Index k = 0; k < n; ++k) tuple[k] = rs.gaussian_vector(g.base.dim);
    const std::vector<Vector> phased = g.apply(t, tuple);
    RandomStream ev = base.substream("multiplier.eval", trial);
    double num = 0.0, den = 0.0;
    for (long i = 0; i < searchSamples; ++i) {
      const Vector gam = ev.gaussian_vector(n);
      Vector a = Vector::Zero(g.base.dim);
      Vector b = Vector::Zero(g.base.dim);
      for (Index k = 0; k < n; ++k) {
        a += gam(k) * phased[k];
        b += gam(k) * tuple[k];
      }
      const double na = vector_norm(a, g.base);
      const double nb = vector_norm(b, g.base);
      num += na * na;
      den += nb * nb;
    }
    const double r = den > 0.0 ? std::sqrt(num / den) : 0.0;
    if (r > bestRatio) {
      bestRatio = r;
      bestTuple = tuple;
    }
  }

  GaussianConfig fin = cfg;
  fin.seed = base.substream("multiplier.final").seed();
  const Estimate den = gaussian_norm({bestTuple, g.base}, fin);
  const Estimate num = gaussian_norm({g.apply(t, bestTuple), g.base}, fin);
  Estimate est;
  est.value = den.value > 0.0 ? num.value / den.value : 0.0;
  // first-order ci propagation for the ratio
  const double relNum = (num.ciHigh - num.ciLow) / std::max(num.value, 1e-300);
  const double relDen = (den.ciHigh - den.ciLow) / std::max(den.value, 1e-300);
  const double rel = 0.5 * std::sqrt(relNum * relNum + relDen * relDen);
  est.ciLow = est.value * (1.0 - rel);
  est.ciHigh = est.value * (1.0 + rel);
  est.exact = false;
  est.seed = cfg.seed;
  est.samples = num.samples;
  return est;
}

double multiplier_group_law_error(const MultiplierGroup& g,
                                  const std::vector<double>& times) {
  double err = 0.0;
  for (double t : times) {
    for (double s : times) {
      const Vector lhs = g.phases(t).cwiseProduct(g.phases(s));
      const Vector rhs = g.phases(t + s);
      err = std::max(err, (lhs - rhs).cwiseAbs().maxCoeff());
    }
  }
  return err;
}

MultiplierCalcCheck multiplier_calculus_case(const MultiplierGroup& g,
                                             const LaplaceDensity& b,
                                             const GaussianConfig& cfg) {
  MultiplierCalcCheck out;
  const Index n = g.coordinates();

  // route 1: sum the sampled density against the group action on the
  // canonical tuple
  out.appliedMultiplier = Vector::Zero(n);
  for (Index j = 0; j < b.samples.size(); ++j) {
    const Vector ph = g.phases(b.node(j));
    out.appliedMultiplier += b.tStep * b.samples(j) * ph;
  }

  // route 2: evaluate Lb on the imaginary axis
  const HalfPlaneFunction f = HalfPlaneFunction::laplace_of_density(b, 0.0);
  out.expectedMultiplier = Vector::Zero(n);
  for (Index k = 0; k < n; ++k)
    out.expectedMultiplier(k) = f.eval(Complex(0.0, g.xi[k]));
  out.maxAbsError =
      (out.appliedMultiplier - out.expectedMultiplier).cwiseAbs().maxCoeff();

  // operator norm of f(A) on the truncated Gaussian space
  if (g.base.kind == SpaceKind::Hilbert) {
    out.opNormLowerBound = out.appliedMultiplier.cwiseAbs().maxCoeff();
  } else {
    RandomStream base(cfg.seed);
    const long samples = std::max<long>(1000, cfg.sampleCount / 5);
    double best = 0.0;
    for (int trial = 0; trial < std::max(4, cfg.restarts); ++trial) {
      RandomStream rs = base.substream("multcalc.tuple", trial);
      std::vector<Vector> tuple(n);
      for (Index k = 0; k < n; ++k) tuple[k] = rs.gaussian_vector(g.base.dim);
      RandomStream ev = base.substream("multcalc.eval", trial);
      double num = 0.0, den = 0.0;
      for (long i = 0; i < samples; ++i) {
        const Vector gam = ev.gaussian_vector(n);
        Vector a = Vector::Zero(g.base.dim);
        Vector bb = Vector::Zero(g.base.dim);
        for (Index k = 0; k < n; ++k) {
          a += gam(k) * out.appliedMultiplier(k) * tuple[k];
          bb += gam(k) * tuple[k];
        }
        num += std::pow(vector_norm(a, g.base), 2);
        den += std::pow(vector_norm(bb, g.base), 2);
      }
      if (den > 0.0) best = std::max(best, std::sqrt(num / den));
    }
    out.opNormLowerBound = best;
  }

  out.hinfNorm = f.hinf_norm(0.0);
  out.normRatio =
      out.hinfNorm > 0.0 ? out.opNormLowerBound / out.hinfNorm : 0.0;
  return out;
}

SectorialCase sectorial_case(const Vector& diagonal,
                             const SpaceDescriptor& space, int budget,
                             const QuadratureConfig& quad,
                             std::uint64_t seed) {
  for (Index i = 0; i < diagonal.size(); ++i)
    if (!(diagonal(i).real() > 0.0))
      throw std::invalid_argument("sectorial case needs Re a_i > 0");
  SectorialCase out;
  out.A = MatrixOperator(Matrix(diagonal.asDiagonal()), space);

  // C = sup_{Re lambda < 0} ||lambda R(lambda, A)||; diagonal, so the norm
  // is max_i |lambda| / |lambda - a_i| in every lattice exponent
  double C = 0.0;
  const double s = diagonal.cwiseAbs().maxCoeff();
  for (int round = 0, rays = 64, radii = 48; round < 3;
       ++round, rays *= 2, radii *= 2) {
    C = 0.0;
    for (int iphi = 0; iphi <= rays; ++iphi) {
      const double phi =
          kPi / 2.0 + kPi * static_cast<double>(iphi) / rays;
      for (int ir = 0; ir <= radii; ++ir) {
        const double r =
            s * std::pow(10.0, -3.0 + 6.0 * static_cast<double>(ir) / radii);
        const Complex lam = r * std::exp(Complex(0.0, phi));
        double v = 0.0;
        for (Index i = 0; i < diagonal.size(); ++i)
          v = std::max(v, std::abs(lam) / std::abs(lam - diagonal(i)));
        C = std::max(C, v);
      }
    }
  }
  out.sectorConstant = C;

  RandomStream rng(seed);
  const std::vector<double> alphas = {-1e-3 * s, -0.01 * s, -0.1 * s,
                                      -s,        -10.0 * s, -100.0 * s};
  const int perAlpha = std::max(1, budget / static_cast<int>(alphas.size()));
  out.holds = true;
  out.minMargin = std::numeric_limits<double>::infinity();
  for (double alpha : alphas) {
    for (int trial = 0; trial < perAlpha; ++trial) {
      Vector x = rng.gaussian_vector(diagonal.size());
      Vector y = rng.gaussian_vector(diagonal.size());
      x /= vector_norm(x, space);
      y /= vector_norm(y, space.dual());
      const GfsIntegral gi = gfs_integral(out.A, alpha, 1, x, y, quad);
      SectorialCase::Sample sample;
      sample.alpha = alpha;
      sample.lhs = (-alpha) * gi.value;
      sample.bound = C * kPi;  // |x| = |y| = 1
      out.samples.push_back(sample);
      const double margin = sample.bound - sample.lhs;
      out.minMargin = std::min(out.minMargin, margin);
      if (sample.lhs > sample.bound + (-alpha) * gi.errorBound + 1e-9)
        out.holds = false;
    }
  }
  return out;
}

LaplaceResolventCheck laplace_resolvent_case(const MatrixOperator& A,
                                             double alpha, double t,
                                             const Vector& x,
                                             const QuadratureConfig& quad) {
  const double omega = min_real_spectrum(A);
  if (!(alpha < omega))
    throw AbscissaError("alpha must lie strictly below the growth bound");
  const double rate = omega - alpha;

  auto integrand = [&](double s) -> Vector {
    const MatrixOperator Ts = semigroup_exp(A, s);
    return Vector(std::exp(Complex(0.0, t * s)) * std::exp(alpha * s) *
                  (Ts.entries * x));
  };

  // truncate where the exponential envelope is negligible
  double T = 1.0 / rate;
  for (int i = 0; i < 60; ++i) {
    const double amp = integrand(T).norm() / rate;
    if (amp <= 0.05 * quad.tolerance || T > 1e6) break;
    T *= 2.0;
  }

  QuadratureStats st;
  LaplaceResolventCheck out;
  out.viaIntegral =
      -adaptive_simpson(integrand, 0.0, T, quad.tolerance, st, 48,
                        quad.maxPanels);
  out.quadErrorBound = st.errorBound + integrand(T).norm() / rate;
  out.viaSolve = resolvent(A, Complex(alpha, t)).entries * x;
  out.relError = (out.viaIntegral - out.viaSolve).norm() /
                 std::max(1e-300, out.viaSolve.norm());
  return out;
}

}  // namespace hpcalc
