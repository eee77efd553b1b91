// SPDX-License-Identifier: Apache-2.0

#include "hpcalc/half_plane_function.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/FFT>

namespace hpcalc {

int Poly::degree() const { return static_cast<int>(coeff.size()) - 1; }

bool Poly::is_zero() const {
  return coeff.size() == 1 && coeff[0] == Complex(0.0);
}

Complex Poly::eval(Complex z) const {
  Complex acc(0.0);
  for (auto it = coeff.rbegin(); it != coeff.rend(); ++it) acc = acc * z + *it;
  return acc;
}

void Poly::trim() {
  while (coeff.size() > 1 && coeff.back() == Complex(0.0)) coeff.pop_back();
  if (coeff.empty()) coeff.push_back(Complex(0.0));
}

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<Complex> c(std::max(a.coeff.size(), b.coeff.size()), Complex(0.0));
  for (size_t i = 0; i < a.coeff.size(); ++i) c[i] += a.coeff[i];
  for (size_t i = 0; i < b.coeff.size(); ++i) c[i] += b.coeff[i];
  return Poly(std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (Complex(-1.0) * b); }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  std::vector<Complex> c(a.coeff.size() + b.coeff.size() - 1, Complex(0.0));
  for (size_t i = 0; i < a.coeff.size(); ++i)
    for (size_t j = 0; j < b.coeff.size(); ++j) c[i + j] += a.coeff[i] * b.coeff[j];
  return Poly(std::move(c));
}

Poly operator*(Complex s, const Poly& a) {
  std::vector<Complex> c = a.coeff;
  for (auto& x : c) x *= s;
  return Poly(std::move(c));
}

Poly derivative(const Poly& p) {
  if (p.degree() < 1) return Poly();
  std::vector<Complex> c(p.coeff.size() - 1);
  for (size_t i = 1; i < p.coeff.size(); ++i)
    c[i - 1] = static_cast<double>(i) * p.coeff[i];
  return Poly(std::move(c));
}

std::vector<Complex> poly_roots(const Poly& p) {
  const int n = p.degree();
  if (n < 1) return {};
  Matrix companion = Matrix::Zero(n, n);
  const Complex lead = p.coeff.back();
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -p.coeff[i] / lead;
  for (int i = 1; i < n; ++i) companion(i, i - 1) = Complex(1.0);
  Eigen::ComplexEigenSolver<Matrix> es(companion, false);
  std::vector<Complex> roots(es.eigenvalues().data(),
                             es.eigenvalues().data() + n);
  return roots;
}

RationalFn RationalFn::constant(Complex c) {
  RationalFn r;
  r.num = Poly::constant(c);
  return r;
}

RationalFn RationalFn::simple(Complex q, int k, Complex numScale) {
  RationalFn r;
  r.num = Poly::constant(numScale);
  r.poles = {{q, k}};
  return r;
}

RationalFn RationalFn::from_coeffs(const Poly& num, const Poly& den) {
  if (den.is_zero()) throw std::invalid_argument("zero denominator");
  RationalFn r;
  r.num = num;
  r.scale = den.lead();
  for (Complex q : poly_roots(den)) r.poles.push_back({q, 1});
  return r;
}

Complex RationalFn::eval(Complex z) const {
  Complex den = scale;
  for (const auto& [q, m] : poles)
    for (int i = 0; i < m; ++i) den *= (z - q);
  return num.eval(z) / den;
}

RationalFn RationalFn::derivative() const {
  // f = p / (s prod (z-q_j)^{m_j})
  // f' = [p' Q - p W] / (s prod (z-q_j)^{m_j+1}),
  // Q = prod (z-q_j), W = sum_j m_j prod_{l != j} (z-q_l)
  Poly Q = Poly::constant(Complex(1.0));
  for (const auto& [q, m] : poles) Q = Q * Poly::linear_from_root(q);
  Poly W;
  for (size_t j = 0; j < poles.size(); ++j) {
    Poly part = Poly::constant(Complex(static_cast<double>(poles[j].second)));
    for (size_t l = 0; l < poles.size(); ++l)
      if (l != j) part = part * Poly::linear_from_root(poles[l].first);
    W = W + part;
  }
  RationalFn d;
  d.num = hpcalc::derivative(num) * Q - num * W;
  d.scale = scale;
  d.poles = poles;
  for (auto& [q, m] : d.poles) {
    (void)q;
    ++m;
  }
  if (poles.empty()) d.poles.clear();
  return d;
}

RationalFn RationalFn::times(const RationalFn& other) const {
  RationalFn r;
  r.num = num * other.num;
  r.scale = scale * other.scale;
  r.poles = poles;
  r.poles.insert(r.poles.end(), other.poles.begin(), other.poles.end());
  return r;
}

int RationalFn::denominator_degree() const {
  int d = 0;
  for (const auto& [q, m] : poles) {
    (void)q;
    d += m;
  }
  return d;
}

int RationalFn::degree_drop() const {
  if (num.is_zero()) return 1 << 20;  // identically zero decays arbitrarily fast
  return denominator_degree() - num.degree();
}

Complex RationalFn::infinity_limit() const {
  const int drop = degree_drop();
  if (drop > 0) return Complex(0.0);
  if (drop < 0) throw std::domain_error("rational part unbounded at infinity");
  return num.lead() / scale;
}

double RationalFn::max_pole_real() const {
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& [q, mult] : poles) {
    (void)mult;
    m = std::max(m, q.real());
  }
  return m;
}

double RationalFn::pole_scale(double alpha) const {
  double s = 1.0;
  for (const auto& [q, mult] : poles) {
    (void)mult;
    s = std::max(s, std::abs(q.imag()) + std::abs(alpha - q.real()));
  }
  return s;
}

namespace {

double term_decay_order(const ExpTerm& t) {
  const int drop = t.r.degree_drop();
  return drop >= (1 << 19) ? 1e9 : static_cast<double>(drop) - 1.0;
}

void validate_terms(const std::vector<ExpTerm>& terms, double alpha) {
  for (const auto& t : terms) {
    if (t.shift < 0.0)
      throw std::invalid_argument("exponential shift must be >= 0");
    if (t.r.degree_drop() < 0)
      throw std::domain_error("rational part unbounded on the half-plane");
    if (!t.r.poles.empty() && t.r.max_pole_real() >= alpha)
      throw AbscissaError("pole on or right of the domain abscissa");
  }
}

}  // namespace

HalfPlaneFunction HalfPlaneFunction::rational_fn(RationalFn r, double alpha) {
  HalfPlaneFunction f;
  f.variant_ = Variant::Rational;
  f.terms_ = {ExpTerm{0.0, std::move(r)}};
  f.alpha_ = alpha;
  validate_terms(f.terms_, alpha);
  f.decayOrder_ = std::max(0.0, term_decay_order(f.terms_[0]));
  return f;
}

HalfPlaneFunction HalfPlaneFunction::rational(const Poly& num, const Poly& den,
                                              double alpha) {
  return rational_fn(RationalFn::from_coeffs(num, den), alpha);
}

HalfPlaneFunction HalfPlaneFunction::exp_rational(std::vector<ExpTerm> terms,
                                                  double alpha) {
  if (terms.empty()) terms.push_back(ExpTerm{0.0, RationalFn::constant(0.0)});
  HalfPlaneFunction f;
  f.variant_ = Variant::ExpRational;
  f.terms_ = std::move(terms);
  f.alpha_ = alpha;
  validate_terms(f.terms_, alpha);
  double d = 1e9;
  for (const auto& t : f.terms_) d = std::min(d, term_decay_order(t));
  f.decayOrder_ = std::max(0.0, d);
  return f;
}

HalfPlaneFunction HalfPlaneFunction::laplace_of_density(LaplaceDensity density,
                                                        double alpha) {
  if (density.samples.size() == 0)
    throw std::invalid_argument("empty density");
  if (!(density.tStep > 0.0)) throw std::invalid_argument("density step <= 0");
  if (density.tStart < 0.0)
    throw std::invalid_argument("density support must lie in [0, inf)");
  HalfPlaneFunction f;
  f.variant_ = Variant::LaplaceDensityV;
  f.density_ = std::move(density);
  f.alpha_ = alpha;
  f.decayOrder_ = 0.0;  // L^1 density gives boundedness only
  return f;
}

HalfPlaneFunction HalfPlaneFunction::constant(Complex value, double alpha) {
  return rational_fn(RationalFn::constant(value), alpha);
}

HalfPlaneFunction HalfPlaneFunction::exponential(double t, Complex scale,
                                                 double alpha,
                                                 double logScale) {
  if (t < 0.0) throw std::invalid_argument("exponential shift must be >= 0");
  return exp_rational({ExpTerm{t, RationalFn::constant(scale), logScale}},
                      alpha);
}

Complex HalfPlaneFunction::eval(Complex z) const {
  if (variant_ == Variant::LaplaceDensityV) {
    Complex acc(0.0);
    for (Index j = 0; j < density_.samples.size(); ++j)
      acc += density_.samples(j) * std::exp(-z * density_.node(j));
    return density_.tStep * acc;
  }
  Complex acc(0.0);
  for (const auto& t : terms_)
    acc += std::exp(Complex(t.logScale) - t.shift * z) * t.r.eval(z);
  return acc;
}

HalfPlaneFunction HalfPlaneFunction::derivative(int m) const {
  HalfPlaneFunction f = *this;
  for (int k = 0; k < m; ++k) {
    if (f.variant_ == Variant::LaplaceDensityV) {
      for (Index j = 0; j < f.density_.samples.size(); ++j)
        f.density_.samples(j) *= -f.density_.node(j);
    } else {
      // d/dz [e^{-sz} r] = e^{-sz} (r' - s r)
      std::vector<ExpTerm> next;
      next.reserve(f.terms_.size());
      for (const auto& t : f.terms_) {
        RationalFn dr = t.r.derivative();
        if (t.shift != 0.0) {
          RationalFn sr = RationalFn::constant(Complex(-t.shift)).times(t.r);
          // dr and sr have different denominators; keep them as two terms
          next.push_back(ExpTerm{t.shift, std::move(dr), t.logScale});
          next.push_back(ExpTerm{t.shift, std::move(sr), t.logScale});
        } else {
          next.push_back(ExpTerm{t.shift, std::move(dr), t.logScale});
        }
      }
      f.terms_ = std::move(next);
    }
    // derivatives gain one order of decay
  }
  if (f.variant_ != Variant::LaplaceDensityV) {
    double d = 1e9;
    for (const auto& t : f.terms_) d = std::min(d, term_decay_order(t));
    f.decayOrder_ = std::max(0.0, d);
  }
  return f;
}

namespace {

// max of |g| over an adaptively refined grid on [lo, hi] plus golden-section
// polish around the best point.
double grid_max(const std::function<double(double)>& g, double lo, double hi,
                int coarse, double relTol) {
  double best = -1.0, bestY = lo;
  int n = coarse;
  double prev = -1.0;
  for (int round = 0; round < 6; ++round) {
    for (int i = 0; i <= n; ++i) {
      const double y = lo + (hi - lo) * static_cast<double>(i) / n;
      const double v = g(y);
      if (v > best) {
        best = v;
        bestY = y;
      }
    }
    if (prev >= 0.0 && best <= prev * (1.0 + relTol)) break;
    prev = best;
    n *= 2;
  }
  // golden polish
  const double step = (hi - lo) / n;
  double a = bestY - step, b = bestY + step;
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = g(c), fd = g(d);
  for (int it = 0; it < 80; ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = g(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = g(d);
    }
  }
  return std::max({best, fc, fd});
}

}  // namespace

double HalfPlaneFunction::hinf_norm(double alpha, double relTol) const {
  if (alpha < alpha_)
    throw AbscissaError("hinf_norm requested left of the domain abscissa");
  auto modulus = [&](double y) { return std::abs(eval(Complex(alpha, y))); };

  if (variant_ == Variant::LaplaceDensityV) {
    // On a uniform sample grid, |f(alpha+iy)| is periodic in y with period
    // 2*pi/tStep; an oversampled DFT of the (damped) samples covers one full
    // period exactly, then a golden polish sharpens the best peak.
    const Index ns = density_.samples.size();
    Index M = 4096;
    while (M < 8 * ns) M *= 2;
    Eigen::FFT<double> fft;
    std::vector<Complex> padded(static_cast<size_t>(M), Complex(0.0));
    for (Index j = 0; j < ns; ++j)
      padded[static_cast<size_t>(j)] =
          density_.tStep * density_.samples(j) *
          std::exp(-alpha * density_.node(j));
    std::vector<Complex> spectrumOut(static_cast<size_t>(M));
    fft.fwd(spectrumOut, padded);
    double best = 0.0;
    Index argbest = 0;
    for (Index mIdx = 0; mIdx < M; ++mIdx) {
      const double v = std::abs(spectrumOut[static_cast<size_t>(mIdx)]);
      if (v > best) {
        best = v;
        argbest = mIdx;
      }
    }
    const double dy = 2.0 * kPi / (M * density_.tStep);
    const double y0 = argbest * dy;
    const double lo = y0 - dy, hi = y0 + dy;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = modulus(c), fd = modulus(d);
    for (int it = 0; it < 60; ++it) {
      if (fc > fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - gr * (b - a);
        fc = modulus(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + gr * (b - a);
        fd = modulus(d);
      }
    }
    return std::max({best, fc, fd});
  }
  double scale = 1.0;
  double asymptote = 0.0;
  for (const auto& t : terms_) {
    scale = std::max(scale, t.r.pole_scale(alpha));
    asymptote +=
        std::exp(t.logScale - t.shift * alpha) * std::abs(t.r.infinity_limit());
  }
  const double Y = 50.0 * scale;
  const double gm = grid_max(modulus, -Y, Y, 512, relTol);
  return std::max(gm, asymptote);
}

bool HalfPlaneFunction::decay_consistent(double alpha, double factor) const {
  if (decayOrder_ <= 0.0) return true;
  // compare |f| |z|^{1+s} at moderate and large |z| on the boundary
  double ref = 0.0;
  for (double y : {1.0, 2.0, 5.0, 10.0}) {
    const Complex z(alpha, y);
    ref = std::max(ref, std::abs(eval(z)) * std::pow(std::abs(z), 1.0 + decayOrder_));
  }
  for (double y : {1e2, 1e3, 1e4, 1e5}) {
    const Complex z(alpha, y);
    const double v = std::abs(eval(z)) * std::pow(std::abs(z), 1.0 + decayOrder_);
    if (v > factor * (ref + 1e-300)) return false;
  }
  return true;
}

std::vector<LineComponent> HalfPlaneFunction::line_components() const {
  std::vector<LineComponent> out;
  if (variant_ == Variant::LaplaceDensityV) {
    // chunk the density so each component's residual oscillation is small
    const double chunkWidth = 0.5;
    const Index n = density_.samples.size();
    Index j = 0;
    while (j < n) {
      const double t0 = density_.node(j);
      Index k = j;
      while (k < n && density_.node(k) < t0 + chunkWidth) ++k;
      const double center = 0.5 * (density_.node(j) + density_.node(k - 1));
      LaplaceDensity chunk;
      chunk.tStart = density_.tStart + static_cast<double>(j) * density_.tStep;
      chunk.tStep = density_.tStep;
      chunk.samples = density_.samples.segment(j, k - j);
      LineComponent c;
      c.freq = center;
      c.decay = 0.0;
      c.oscHint = 0.5 * chunkWidth;
      c.scaleHint = 1.0 + density_.max_node();
      c.smooth = [chunk, center](Complex z) {
        Complex acc(0.0);
        for (Index i = 0; i < chunk.samples.size(); ++i) {
          const double tt = chunk.tStart + (static_cast<double>(i) + 0.5) * chunk.tStep;
          acc += chunk.samples(i) * std::exp(-(tt - center) * z);
        }
        return chunk.tStep * acc;
      };
      out.push_back(std::move(c));
      j = k;
    }
    return out;
  }
  for (const auto& t : terms_) {
    LineComponent c;
    c.freq = t.shift;
    c.decay = std::max(0.0, static_cast<double>(t.r.degree_drop()));
    c.scaleHint = t.r.pole_scale(alpha_);
    c.logScale = t.logScale;
    RationalFn r = t.r;
    c.smooth = [r](Complex z) { return r.eval(z); };
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace hpcalc
