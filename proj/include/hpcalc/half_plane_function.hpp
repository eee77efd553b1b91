// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "hpcalc/types.hpp"

namespace hpcalc {

// Polynomial with ascending complex coefficients.
struct Poly {
  std::vector<Complex> coeff;

  Poly() : coeff{Complex(0.0)} {}
  explicit Poly(std::vector<Complex> c) : coeff(std::move(c)) { trim(); }
  static Poly constant(Complex c) { return Poly({c}); }
  // (z - root)
  static Poly linear_from_root(Complex root) { return Poly({-root, Complex(1.0)}); }

  int degree() const;
  bool is_zero() const;
  Complex eval(Complex z) const;
  Complex lead() const { return coeff.back(); }
  void trim();
};

Poly operator+(const Poly& a, const Poly& b);
Poly operator-(const Poly& a, const Poly& b);
Poly operator*(const Poly& a, const Poly& b);
Poly operator*(Complex s, const Poly& a);
Poly derivative(const Poly& p);

// Roots via the companion matrix; leading coefficient must be nonzero.
std::vector<Complex> poly_roots(const Poly& p);

// Rational function kept with a factored denominator so derivatives do not
// lose the pole locations: num(z) / (scale * prod_j (z - pole_j)^{mult_j}).
struct RationalFn {
  Poly num;
  std::vector<std::pair<Complex, int>> poles;
  Complex scale = Complex(1.0);

  static RationalFn constant(Complex c);
  // 1 / (z - q)^k, or with a numerator polynomial
  static RationalFn simple(Complex q, int k, Complex numScale = Complex(1.0));
  static RationalFn from_coeffs(const Poly& num, const Poly& den);

  Complex eval(Complex z) const;
  RationalFn derivative() const;
  RationalFn times(const RationalFn& other) const;
  int denominator_degree() const;
  int degree_drop() const;  // deg(den) - deg(num); negative for polynomials
  Complex infinity_limit() const;
  double max_pole_real() const;
  double pole_scale(double alpha) const;  // distance/extent of poles from the line
};

// A term exp(logScale - shift z) * r(z) with shift >= 0. The real logScale
// keeps normalized exponentials like e^{-t z} e^{t alpha} representable when
// e^{t alpha} alone would overflow.
struct ExpTerm {
  double shift = 0.0;
  RationalFn r;
  double logScale = 0.0;
};

// Sampled L^1 density b on [tStart, tStart + count*tStep), one value per
// cell midpoint; represents f(z) = sum_j tStep * b_j * e^{-z t_j}.
struct LaplaceDensity {
  double tStart = 0.0;
  double tStep = 1.0;
  Vector samples;

  double node(Index j) const { return tStart + (static_cast<double>(j) + 0.5) * tStep; }
  double max_node() const { return samples.size() ? node(samples.size() - 1) : 0.0; }
  double l1_norm() const { return tStep * samples.cwiseAbs().sum(); }
};

// One oscillatory component of a function restricted to a vertical line
// z = delta + it: full term = e^{-freq*delta} e^{-i freq t} smooth(delta+it).
struct LineComponent {
  double freq = 0.0;
  std::function<Complex(Complex)> smooth;
  double decay = 0.0;      // smooth = O(|z|^{-decay})
  double oscHint = 0.0;    // residual oscillation of `smooth` (rad per unit t)
  double scaleHint = 1.0;  // extent of the smooth part's structure on the line
  double logScale = 0.0;   // prefactor exp(logScale - freq*delta)
};

// Bounded holomorphic function on the half-plane Re z > domainAbscissa,
// with exact derivatives and enough structure for the line integrals.
class HalfPlaneFunction {
 public:
  enum class Variant { Rational, ExpRational, LaplaceDensityV };

  static HalfPlaneFunction rational(const Poly& num, const Poly& den, double alpha);
  static HalfPlaneFunction rational_fn(RationalFn r, double alpha);
  static HalfPlaneFunction exp_rational(std::vector<ExpTerm> terms, double alpha);
  static HalfPlaneFunction laplace_of_density(LaplaceDensity density, double alpha = 0.0);
  static HalfPlaneFunction constant(Complex value, double alpha);
  // scale * exp(logScale - t z)
  static HalfPlaneFunction exponential(double t, Complex scale, double alpha,
                                       double logScale = 0.0);

  Variant variant() const { return variant_; }
  double domain_abscissa() const { return alpha_; }
  // s with f = O(|z|^{-(1+s)}) on the half-plane; 0 means merely bounded.
  double decay_order() const { return decayOrder_; }

  Complex eval(Complex z) const;
  HalfPlaneFunction derivative(int m = 1) const;

  // sup |f| on the boundary line Re z = alpha, certified to an adaptively
  // refined grid (maximum principle gives the half-plane sup).
  double hinf_norm(double alpha, double relTol = 1e-8) const;

  // Boundary-sampling check that |f(z)| |z|^{1+s} stays bounded.
  bool decay_consistent(double alpha, double factor = 50.0) const;

  std::vector<LineComponent> line_components() const;

  const std::vector<ExpTerm>& terms() const { return terms_; }
  const LaplaceDensity& density() const { return density_; }

 private:
  HalfPlaneFunction() = default;

  Variant variant_ = Variant::Rational;
  std::vector<ExpTerm> terms_;
  LaplaceDensity density_;
  double alpha_ = 0.0;
  double decayOrder_ = 0.0;
};

}  // namespace hpcalc
