// SPDX-License-Identifier: Apache-2.0

#include "hpcalc/spaces.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace hpcalc {

namespace {

void check_space(const SpaceDescriptor& s) {
  if (s.dim < 1) throw std::invalid_argument("space dimension must be >= 1");
  if (s.kind != SpaceKind::Hilbert && s.p < 1.0)
    throw std::invalid_argument("lattice exponent must be >= 1");
  if (s.kind == SpaceKind::FuncLattice && !(s.gridStep > 0.0))
    throw std::invalid_argument("grid step must be > 0");
}

double lp_norm(const Vector& x, double p, double weight) {
  if (std::isinf(p)) return x.cwiseAbs().maxCoeff();
  if (p == 2.0) return std::sqrt(weight) * x.norm();
  if (p == 1.0) return weight * x.cwiseAbs().sum();
  double s = 0.0;
  for (Index i = 0; i < x.size(); ++i) s += std::pow(std::abs(x(i)), p);
  return std::pow(weight * s, 1.0 / p);
}

Complex unit_phase(Complex z) {
  const double a = std::abs(z);
  return a == 0.0 ? Complex(1.0, 0.0) : z / a;
}

}  // namespace

SpaceDescriptor SpaceDescriptor::hilbert(Index n) {
  SpaceDescriptor s;
  s.kind = SpaceKind::Hilbert;
  s.dim = n;
  s.p = 2.0;
  check_space(s);
  return s;
}

SpaceDescriptor SpaceDescriptor::seq_lattice(Index n, double p) {
  SpaceDescriptor s;
  s.kind = SpaceKind::SeqLattice;
  s.dim = n;
  s.p = p;
  check_space(s);
  return s;
}

SpaceDescriptor SpaceDescriptor::func_lattice(double start, double h, Index n,
                                              double p) {
  SpaceDescriptor s;
  s.kind = SpaceKind::FuncLattice;
  s.dim = n;
  s.p = p;
  s.gridStart = start;
  s.gridStep = h;
  check_space(s);
  return s;
}

double conjugate_exponent(double p) {
  if (p == 1.0) return std::numeric_limits<double>::infinity();
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

SpaceDescriptor SpaceDescriptor::dual() const {
  SpaceDescriptor d = *this;
  if (kind != SpaceKind::Hilbert) d.p = conjugate_exponent(p);
  return d;
}

bool SpaceDescriptor::operator==(const SpaceDescriptor& o) const {
  if (kind != o.kind || dim != o.dim) return false;
  if (kind == SpaceKind::Hilbert) return true;
  if (p != o.p) return false;
  if (kind == SpaceKind::FuncLattice)
    return gridStart == o.gridStart && gridStep == o.gridStep;
  return true;
}

double vector_norm(const Vector& x, const SpaceDescriptor& space) {
  if (x.size() != space.dim)
    throw DimensionMismatch("vector length does not match space dimension");
  switch (space.kind) {
    case SpaceKind::Hilbert:
      return x.norm();
    case SpaceKind::SeqLattice:
      return lp_norm(x, space.p, 1.0);
    case SpaceKind::FuncLattice:
      if (std::isinf(space.p)) return x.cwiseAbs().maxCoeff();
      return lp_norm(x, space.p, space.gridStep);
  }
  return 0.0;
}

Complex duality_pair(const Vector& x, const Vector& y,
                     const SpaceDescriptor& space) {
  if (x.size() != y.size() || x.size() != space.dim)
    throw DimensionMismatch("pairing length mismatch");
  const Complex s = (x.array() * y.array()).sum();
  return space.kind == SpaceKind::FuncLattice ? space.gridStep * s : s;
}

Vector dual_witness(const Vector& x, const SpaceDescriptor& space) {
  const double nx = vector_norm(x, space);
  if (nx == 0.0) return Vector::Zero(x.size());
  Vector y(x.size());
  const double p = space.kind == SpaceKind::Hilbert ? 2.0 : space.p;
  if (std::isinf(p)) {
    // support the max coordinate only
    Index imax = 0;
    x.cwiseAbs().maxCoeff(&imax);
    y.setZero();
    y(imax) = std::conj(unit_phase(x(imax)));
    if (space.kind == SpaceKind::FuncLattice) y(imax) /= space.gridStep;
    return y;
  }
  for (Index i = 0; i < x.size(); ++i) {
    const double a = std::abs(x(i));
    y(i) = std::conj(unit_phase(x(i))) *
           (p == 1.0 ? 1.0 : std::pow(a, p - 1.0) / std::pow(nx, p - 1.0));
  }
  // FuncLattice: the weight in the pairing is already the weight in the
  // dual norm, so the same coordinates work for any h.
  return y;
}

MatrixOperator::MatrixOperator(Matrix m, SpaceDescriptor s)
    : entries(std::move(m)), space(s) {
  if (entries.rows() != entries.cols())
    throw DimensionMismatch("operator matrix must be square");
  if (entries.rows() != space.dim)
    throw DimensionMismatch("operator dimension does not match space");
}

MatrixOperator adjoint(const MatrixOperator& A) {
  return MatrixOperator(A.entries.transpose(), A.space.dual());
}

Vector spectrum(const MatrixOperator& A) {
  Eigen::ComplexEigenSolver<Matrix> es(A.entries, /*computeEigenvectors=*/false);
  return es.eigenvalues();
}

double min_real_spectrum(const MatrixOperator& A) {
  return spectrum(A).real().minCoeff();
}

namespace {

// One Boyd/Higham ascent pass for ||A||_{p->p}; every iterate yields a valid
// lower bound, so we track the best ratio seen.
double lp_ascent(const Matrix& A, double p, Vector x, int maxIter = 60) {
  const double q = conjugate_exponent(p);
  double best = 0.0;
  double nx = lp_norm(x, p, 1.0);
  if (nx == 0.0) return 0.0;
  x /= nx;
  for (int it = 0; it < maxIter; ++it) {
    Vector y = A * x;
    const double ny = lp_norm(y, p, 1.0);
    best = std::max(best, ny);
    if (ny == 0.0) break;
    // dual vector of y in l^p
    Vector u(y.size());
    for (Index i = 0; i < y.size(); ++i)
      u(i) = unit_phase(y(i)) * std::pow(std::abs(y(i)) / ny, p - 1.0);
    Vector z = A.adjoint() * u;
    const double nz = lp_norm(z, q, 1.0);
    if (nz <= best * (1.0 + 1e-12)) break;  // stationary
    // next iterate: dual of z in l^q
    Vector xn(z.size());
    for (Index i = 0; i < z.size(); ++i)
      xn(i) = unit_phase(z(i)) * std::pow(std::abs(z(i)) / nz, q - 1.0);
    const double nxn = lp_norm(xn, p, 1.0);
    if (nxn == 0.0) break;
    x = xn / nxn;
  }
  return best;
}

}  // namespace

NormEstimate operator_norm(const MatrixOperator& A, int restarts,
                           std::uint64_t seed) {
  const Matrix& M = A.entries;
  switch (A.space.kind) {
    case SpaceKind::Hilbert: {
      Eigen::JacobiSVD<Matrix> svd(M);
      return {svd.singularValues()(0), true};
    }
    case SpaceKind::SeqLattice:
    case SpaceKind::FuncLattice: {
      // A uniform grid weight cancels between domain and codomain, so the
      // FuncLattice operator norm equals the plain l^p one.
      const double p = A.space.p;
      if (p == 1.0) return {M.cwiseAbs().colwise().sum().maxCoeff(), true};
      if (std::isinf(p)) return {M.cwiseAbs().rowwise().sum().maxCoeff(), true};
      if (p == 2.0) {
        Eigen::JacobiSVD<Matrix> svd(M);
        return {svd.singularValues()(0), true};
      }
      RandomStream rng(seed ^ 0x6f70726e6d7275ull);
      double best = 0.0;
      // deterministic starts: columns of max column-sum, then random
      Index jmax = 0;
      M.cwiseAbs().colwise().sum().maxCoeff(&jmax);
      best = std::max(best, lp_ascent(M, p, Vector::Unit(M.cols(), jmax)));
      best = std::max(best, lp_ascent(M, p, Vector::Ones(M.cols())));
      for (int r = 0; r < restarts; ++r)
        best = std::max(best, lp_ascent(M, p, rng.gaussian_vector(M.cols())));
      return {best, false};
    }
  }
  return {0.0, false};
}

}  // namespace hpcalc
