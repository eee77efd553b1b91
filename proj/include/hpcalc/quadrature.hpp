// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include "hpcalc/types.hpp"

namespace hpcalc {

struct QuadratureConfig {
  double tolerance = 1e-9;  // absolute, in the Frobenius/abs metric
  double truncation = 0.0;  // 0 => choose from the decay bound
  int maxPanels = 60000;
  double abscissa = std::numeric_limits<double>::quiet_NaN();  // NaN => midpoint
};

struct QuadratureStats {
  double errorBound = 0.0;
  long evaluations = 0;
  long panels = 0;
  bool budgetExhausted = false;

  void merge(const QuadratureStats& o) {
    errorBound += o.errorBound;
    evaluations += o.evaluations;
    panels += o.panels;
    budgetExhausted = budgetExhausted || o.budgetExhausted;
  }
};

inline double norm_of(double x) { return std::abs(x); }
inline double norm_of(const Complex& x) { return std::abs(x); }
template <class Derived>
double norm_of(const Eigen::MatrixBase<Derived>& m) {
  return m.norm();
}

namespace detail {

template <class V, class F>
V adsimp_rec(F& f, double a, double m, double b, const V& fa, const V& fm,
             const V& fb, const V& whole, double tol, int depth, int maxPanels,
             QuadratureStats& st) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  V flm = f(lm);
  V frm = f(rm);
  st.evaluations += 2;
  V left = ((m - a) / 6.0) * (fa + 4.0 * flm + fm);
  V right = ((b - m) / 6.0) * (fm + 4.0 * frm + fb);
  V sum = left + right;
  V diff = sum - whole;
  const double err = norm_of(diff) / 15.0;
  if (err <= tol || depth <= 0 || st.panels >= maxPanels) {
    st.errorBound += err;
    st.panels += 2;
    if (depth <= 0 || st.panels >= maxPanels) st.budgetExhausted |= (err > tol);
    V corrected = sum + (1.0 / 15.0) * diff;
    return corrected;
  }
  V l = adsimp_rec<V>(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1,
                      maxPanels, st);
  V r = adsimp_rec<V>(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1,
                      maxPanels, st);
  V total = l + r;
  return total;
}

}  // namespace detail

// Adaptive Simpson for a smooth V-valued integrand on [a, b]; absolute
// tolerance in norm_of.
template <class F>
auto adaptive_simpson(F&& f, double a, double b, double tol,
                      QuadratureStats& st, int maxDepth = 48,
                      int maxPanels = 60000) {
  using V = std::decay_t<decltype(f(a))>;
  if (a == b) {
    V fa = f(a);
    V zero = 0.0 * fa;
    return zero;
  }
  V fa = f(a);
  V fm = f(0.5 * (a + b));
  V fb = f(b);
  st.evaluations += 3;
  V whole = ((b - a) / 6.0) * (fa + 4.0 * fm + fb);
  return detail::adsimp_rec<V>(f, a, 0.5 * (a + b), b, fa, fm, fb, whole, tol,
                               maxDepth, maxPanels, st);
}

// Integral over the whole real line of a smooth integrand decaying like
// |t|^{-decay} with decay >= 2. Core on [-coreRadius, coreRadius], tails via
// the substitution t = 1/u so no truncation level has to be guessed.
template <class F>
auto decaying_line_integral(F&& f, double coreRadius, double decay, double tol,
                            QuadratureStats& st, int maxPanels = 60000) {
  using V = std::decay_t<decltype(f(0.0))>;
  const double T0 = std::max(coreRadius, 1.0);
  V core = adaptive_simpson(f, -T0, T0, 0.5 * tol, st, 48, maxPanels);

  auto upper = [&](double u) -> V { return (1.0 / (u * u)) * f(1.0 / u); };
  auto lower = [&](double u) -> V { return (1.0 / (u * u)) * f(-1.0 / u); };

  // pick u_min so the analytic remainder below it is negligible
  const double d = std::max(decay, 2.0);
  double uMin = 1.0 / (16.0 * T0);
  double rem = 0.0;
  for (int i = 0; i < 12; ++i) {
    rem = (norm_of(upper(uMin)) + norm_of(lower(uMin))) * uMin /
          (d - 1.0 + 1e-9);
    st.evaluations += 2;
    if (rem <= 0.05 * tol || uMin <= 1e-12) break;
    uMin *= 0.1;
  }
  st.errorBound += rem;

  V tails = adaptive_simpson(upper, uMin, 1.0 / T0, 0.2 * tol, st, 48, maxPanels)
          + adaptive_simpson(lower, uMin, 1.0 / T0, 0.2 * tol, st, 48, maxPanels);
  V total = core + tails;
  return total;
}

// Whole-line integral of an integrand that decays like |t|^{-decay} but may
// carry mild residual oscillation, so the 1/t substitution is not available.
// Truncates where the power-law tail estimate drops below tol.
template <class F>
auto truncated_line_integral(F&& f, double coreRadius, double decay, double tol,
                             QuadratureStats& st, int maxPanels = 60000) {
  using V = std::decay_t<decltype(f(0.0))>;
  double T = std::max(coreRadius, 1.0);
  double tail = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 48; ++i) {
    tail = (norm_of(f(T)) + norm_of(f(-T))) * T / std::max(1.0, decay - 1.0);
    st.evaluations += 2;
    if (tail <= 0.1 * tol || T > 1e9) break;
    T *= 2.0;
  }
  st.errorBound += tail;
  V out = adaptive_simpson(f, -T, T, 0.8 * tol, st, 52, maxPanels);
  return out;
}

// Moments int_{-h}^{h} u^k e^{-i freq u} du for k = 0, 1, 2, evaluated
// stably near freq*h = 0.
struct FilonMoments {
  Complex m0, m1, m2;
};
FilonMoments filon_moments(double freq, double halfWidth);

namespace detail {

template <class V, class F>
V filon_panel(F& f, double freq, double a, double b, const V& fa, const V& fm,
              const V& fb) {
  const double h = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  const FilonMoments mo = filon_moments(freq, h);
  const V c0 = fm;
  const V c1 = (1.0 / (2.0 * h)) * (fb - fa);
  const V c2 = (1.0 / (2.0 * h * h)) * (fa - 2.0 * fm + fb);
  const Complex rot = std::exp(Complex(0.0, -freq * mid));
  V out = rot * (mo.m0 * c0 + mo.m1 * c1 + mo.m2 * c2);
  return out;
}

template <class V, class F>
V filon_rec(F& f, double freq, double a, double m, double b, const V& fa,
            const V& fm, const V& fb, const V& whole, double tol, int depth,
            int maxPanels, QuadratureStats& st) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  V flm = f(lm);
  V frm = f(rm);
  st.evaluations += 2;
  V left = filon_panel<V>(f, freq, a, m, fa, flm, fm);
  V right = filon_panel<V>(f, freq, m, b, fm, frm, fb);
  V sum = left + right;
  const double err = norm_of(V(sum - whole)) / 10.0;
  if (err <= tol || depth <= 0 || st.panels >= maxPanels) {
    st.errorBound += err;
    st.panels += 2;
    if (depth <= 0 || st.panels >= maxPanels) st.budgetExhausted |= (err > tol);
    return sum;
  }
  V l = filon_rec<V>(f, freq, a, lm, m, fa, flm, fm, left, 0.5 * tol,
                     depth - 1, maxPanels, st);
  V r = filon_rec<V>(f, freq, m, rm, b, fm, frm, fb, right, 0.5 * tol,
                     depth - 1, maxPanels, st);
  V total = l + r;
  return total;
}

}  // namespace detail

// Adaptive Filon quadrature of int_a^b e^{-i freq t} S(t) dt where S is the
// smooth (non-oscillatory) factor. Panel size adapts to S, not to the phase.
template <class F>
auto filon_integral(F&& f, double freq, double a, double b, double tol,
                    QuadratureStats& st, int maxDepth = 44,
                    int maxPanels = 60000) {
  using V = std::decay_t<decltype(f(a))>;
  V fa = f(a);
  V fm = f(0.5 * (a + b));
  V fb = f(b);
  st.evaluations += 3;
  V whole = detail::filon_panel<V>(f, freq, a, b, fa, fm, fb);
  return detail::filon_rec<V>(f, freq, a, 0.5 * (a + b), b, fa, fm, fb, whole,
                              tol, maxDepth, maxPanels, st);
}

// Whole-line integral of e^{-i freq t} S(t) dt, |freq| > 0, with S decaying
// like |t|^{-decay}, decay >= 1. The truncation point comes from the
// integration-by-parts tail bound 2 ||S(T)|| / |freq|.
template <class F>
auto oscillatory_line_integral(F&& f, double freq, double coreRadius,
                               double decay, double tol, QuadratureStats& st,
                               int maxPanels = 60000) {
  using V = std::decay_t<decltype(f(0.0))>;
  const double afreq = std::abs(freq);
  double T = std::max(coreRadius, 1.0);
  double tailBound = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 60; ++i) {
    tailBound = 2.0 * (norm_of(f(T)) + norm_of(f(-T))) / afreq;
    st.evaluations += 2;
    if (tailBound <= 0.1 * tol || T > 1e12) break;
    T *= 2.0;
  }
  st.errorBound += tailBound;

  V total = filon_integral(f, freq, -coreRadius, coreRadius, 0.4 * tol, st, 44,
                           maxPanels);
  // geometric panels outward; each gets its own adaptive refinement
  double lo = coreRadius;
  while (lo < T) {
    const double hi = std::min(2.0 * lo, T);
    total = total + filon_integral(f, freq, lo, hi, 0.3 * tol / (1.0 + std::log2(hi / coreRadius)), st, 44, maxPanels);
    total = total + filon_integral(f, freq, -hi, -lo, 0.3 * tol / (1.0 + std::log2(hi / coreRadius)), st, 44, maxPanels);
    lo = hi;
  }
  (void)decay;
  return total;
}

}  // namespace hpcalc
