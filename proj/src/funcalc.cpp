// SPDX-License-Identifier: Apache-2.0

#include "hpcalc/funcalc.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/LU>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

namespace hpcalc {

namespace {

double spectrum_distance(const MatrixOperator& A, Complex lambda) {
  const Vector eig = spectrum(A);
  double d = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < eig.size(); ++i)
    d = std::min(d, std::abs(eig(i) - lambda));
  return d;
}

Matrix resolvent_raw(const Matrix& A, Complex lambda) {
  const Index n = A.rows();
  Matrix M = -A;
  M.diagonal().array() += lambda;
  return Eigen::PartialPivLU<Matrix>(M).solve(Matrix::Identity(n, n));
}

}  // namespace

MatrixOperator resolvent(const MatrixOperator& A, Complex lambda) {
  const double scale = std::max(1.0, A.entries.norm());
  if (spectrum_distance(A, lambda) <= 1e-14 * scale)
    throw SpectrumHit("lambda is (numerically) in the spectrum");
  return MatrixOperator(resolvent_raw(A.entries, lambda), A.space);
}

ResolventInfo resolvent_info(const MatrixOperator& A, Complex lambda) {
  ResolventInfo info{resolvent(A, lambda), 0.0, false};
  const Index n = A.entries.rows();
  Matrix M = -A.entries;
  M.diagonal().array() += lambda;
  Eigen::JacobiSVD<Matrix> svd(M);
  const double smin = svd.singularValues()(n - 1);
  info.conditionEstimate =
      smin > 0.0 ? svd.singularValues()(0) / smin
                 : std::numeric_limits<double>::infinity();
  info.illConditioned = info.conditionEstimate > 1e12;
  return info;
}

HalfPlaneTypeReport half_plane_type_check(const MatrixOperator& A, double omega,
                                          const std::vector<double>& alphaGrid,
                                          std::vector<double> tGrid) {
  HalfPlaneTypeReport rep;
  rep.omega = omega;

  const Vector eig = spectrum(A);
  const double scale = std::max(1.0, A.entries.norm());
  for (Index i = 0; i < eig.size(); ++i) {
    if (eig(i).real() < omega - 1e-12 * scale) {
      rep.pass = false;
      rep.witnessEigenvalue = eig(i);
      return rep;
    }
  }
  rep.pass = true;

  if (tGrid.empty()) {
    const double tmax = 4.0 * (1.0 + eig.imag().cwiseAbs().maxCoeff() +
                               A.entries.norm());
    for (int i = 0; i <= 64; ++i)
      tGrid.push_back(-tmax + 2.0 * tmax * i / 64.0);
  }

  for (double alpha : alphaGrid) {
    if (alpha >= omega)
      throw AbscissaError("alpha grid must lie strictly below omega");
    std::vector<double> ts = tGrid;
    HalfPlaneTypeEntry entry;
    entry.alpha = alpha;
    double prev = -1.0;
    for (int round = 0; round < 6; ++round) {
      double best = 0.0, argbest = 0.0;
      bool exact = true;
      for (double t : ts) {
        const MatrixOperator R(resolvent_raw(A.entries, Complex(alpha, t)),
                               A.space);
        const NormEstimate ne = operator_norm(R, 4);
        exact = exact && ne.exact;
        if (ne.value > best) {
          best = ne.value;
          argbest = t;
        }
      }
      entry.supNorm = best;
      entry.argmaxT = argbest;
      entry.normExact = exact;
      if (prev >= 0.0 && best <= prev * 1.001) break;
      prev = best;
      // refine: double density and extend the range
      std::vector<double> next;
      const double lo = ts.front() * 2.0, hi = ts.back() * 2.0;
      for (size_t i = 0; i + 1 < ts.size(); ++i) {
        next.push_back(ts[i]);
        next.push_back(0.5 * (ts[i] + ts[i + 1]));
      }
      next.push_back(ts.back());
      next.push_back(lo);
      next.push_back(hi);
      std::sort(next.begin(), next.end());
      ts = std::move(next);
    }
    rep.entries.push_back(entry);
  }
  return rep;
}

namespace {

// shared engine for the Dunford-type line integrals:
//   sum over components of  e^{-freq*delta} int e^{-i freq t}
//        smooth(delta+it) R(delta+it,A)^{power} dt
Matrix integrate_components(const Matrix& A,
                            const std::vector<LineComponent>& comps,
                            double delta, int power,
                            const QuadratureConfig& quad,
                            QuadratureStats& st) {
  const Index n = A.rows();
  const double bNorm = (A - delta * Matrix::Identity(n, n)).norm();

  Matrix total = Matrix::Zero(n, n);
  for (const auto& c : comps) {
    auto S = [&](double t) -> Matrix {
      const Complex z(delta, t);
      Matrix M = -A;
      M.diagonal().array() += z;
      Eigen::PartialPivLU<Matrix> lu(M);
      Matrix R = lu.solve(Matrix::Identity(n, n));
      for (int k = 1; k < power; ++k) R = lu.solve(R);
      return (std::exp(c.logScale - c.freq * delta) * c.smooth(z)) * R;
    };
    const double T0 =
        std::max({2.0 * (bNorm + 1.0), 2.0 * c.scaleHint, quad.truncation});
    const double decayTotal = c.decay + static_cast<double>(power);
    if (c.freq > 1e-9) {
      total += oscillatory_line_integral(S, c.freq, T0, decayTotal,
                                         quad.tolerance, st, quad.maxPanels);
    } else if (c.oscHint > 1e-12) {
      total += truncated_line_integral(S, T0, decayTotal, quad.tolerance, st,
                                       quad.maxPanels);
    } else {
      total += decaying_line_integral(S, T0, decayTotal, quad.tolerance, st,
                                      quad.maxPanels);
    }
  }
  return total;
}

double resolve_delta(const MatrixOperator& A, double alpha,
                     const QuadratureConfig& quad, double* omegaOut) {
  const double omega = min_real_spectrum(A);
  if (omegaOut) *omegaOut = omega;
  if (!(alpha < omega))
    throw AbscissaError("function abscissa must lie strictly below the spectrum");
  double delta = quad.abscissa;
  if (std::isnan(delta)) delta = 0.5 * (alpha + omega);
  if (!(delta > alpha && delta < omega))
    throw AbscissaError("integration line must lie in (alpha, omega)");
  return delta;
}

}  // namespace

CalcResult dunford_eval(const MatrixOperator& A, const HalfPlaneFunction& f,
                        const QuadratureConfig& quad) {
  if (f.decay_order() <= 0.0)
    throw TailBoundFailure("function has no decay: not in the E class");
  CalcResult res;
  res.delta = resolve_delta(A, f.domain_abscissa(), quad, nullptr);
  Matrix I = integrate_components(A.entries, f.line_components(), res.delta, 1,
                                  quad, res.stats);
  res.op = MatrixOperator(Matrix(-I / (2.0 * kPi)), A.space);
  res.errorBound = res.stats.errorBound / (2.0 * kPi);
  return res;
}

CalcResult regularized_eval(const MatrixOperator& A, const HalfPlaneFunction& f,
                            double mu, const QuadratureConfig& quad) {
  if (!(mu < f.domain_abscissa()))
    throw AbscissaError("regularizer pole must lie left of the function domain");
  const RationalFn e = RationalFn::simple(Complex(mu), 2);

  std::vector<LineComponent> comps = f.line_components();
  for (auto& c : comps) {
    auto base = c.smooth;
    c.smooth = [base, e](Complex z) { return base(z) * e.eval(z); };
    c.decay += 2.0;
    c.scaleHint = std::max(c.scaleHint, 1.0 + std::abs(mu));
  }

  CalcResult res;
  res.delta = resolve_delta(A, f.domain_abscissa(), quad, nullptr);
  Matrix I = integrate_components(A.entries, comps, res.delta, 1, quad,
                                  res.stats);
  const Matrix efA = -I / (2.0 * kPi);
  // e(A)^{-1} = (mu I - A)^2 exactly
  Matrix muIA = -A.entries;
  muIA.diagonal().array() += Complex(mu);
  res.op = MatrixOperator(Matrix(muIA * muIA * efA), A.space);
  const double amp = (muIA * muIA).norm();
  res.errorBound = amp * res.stats.errorBound / (2.0 * kPi);
  return res;
}

MatrixOperator semigroup_exp(const MatrixOperator& A, double t) {
  if (t < 0.0) throw std::invalid_argument("semigroup time must be >= 0");
  Matrix e = (-t * A.entries).exp();
  return MatrixOperator(std::move(e), A.space);
}

CalcResult derivative_calculus_eval(const MatrixOperator& A,
                                    const HalfPlaneFunction& f, int m,
                                    double alpha,
                                    const QuadratureConfig& quad) {
  if (m < 1)
    throw std::invalid_argument("derivative order must be >= 1 (the m = 0 tail is not integrable)");
  if (alpha < f.domain_abscissa())
    throw AbscissaError("integration line left of the function domain");
  if (!(alpha < min_real_spectrum(A)))
    throw AbscissaError("integration line must lie strictly below the spectrum");
  CalcResult res;
  res.delta = alpha;
  Matrix I = integrate_components(A.entries, f.line_components(), alpha, m + 1,
                                  quad, res.stats);
  double mfact = 1.0;
  for (int k = 2; k <= m; ++k) mfact *= k;
  res.op = MatrixOperator(Matrix(-(mfact / (2.0 * kPi)) * I), A.space);
  res.errorBound = mfact * res.stats.errorBound / (2.0 * kPi);
  return res;
}

}  // namespace hpcalc
