// SPDX-License-Identifier: Apache-2.0

#include "hpcalc/gaussian.hpp"

#include <algorithm>
#include <cmath>

namespace hpcalc {

namespace {

double space_norm_sq(const Vector& v, const SpaceDescriptor& space) {
  const double n = vector_norm(v, space);
  return n * n;
}

Matrix stack_columns(const std::vector<Vector>& xs) {
  Matrix X(xs.front().size(), static_cast<Index>(xs.size()));
  for (size_t k = 0; k < xs.size(); ++k) X.col(static_cast<Index>(k)) = xs[k];
  return X;
}

}  // namespace

Estimate gaussian_norm(const GaussianSum& s, const GaussianConfig& cfg) {
  if (s.vectors.empty()) throw std::invalid_argument("empty Gaussian sum");
  for (const auto& v : s.vectors)
    if (v.size() != s.space.dim)
      throw DimensionMismatch("Gaussian sum vector dimension mismatch");
  const int B = std::max(2, cfg.batches);
  const long perBatch = std::max<long>(1, cfg.sampleCount / B);
  const Matrix X = stack_columns(s.vectors);
  const Index N = X.cols();

  RandomStream base(cfg.seed);
  std::vector<double> batchMean(B, 0.0);
  for (int b = 0; b < B; ++b) {
    RandomStream rs = base.substream("gaussian_norm.batch", b);
    double acc = 0.0;
    for (long i = 0; i < perBatch; ++i) {
      const Vector g = rs.gaussian_vector(N);
      acc += space_norm_sq(X * g, s.space);
    }
    batchMean[b] = acc / static_cast<double>(perBatch);
  }
  double mean = 0.0;
  for (double m : batchMean) mean += m;
  mean /= B;
  double var = 0.0;
  for (double m : batchMean) var += (m - mean) * (m - mean);
  var /= (B - 1);
  const double se = std::sqrt(var / B);

  Estimate est;
  est.value = std::sqrt(mean);
  est.ciLow = std::sqrt(std::max(0.0, mean - 2.0 * se));
  est.ciHigh = std::sqrt(mean + 2.0 * se);
  est.exact = false;
  est.seed = cfg.seed;
  est.samples = perBatch * B;
  return est;
}

double square_function_norm(const std::vector<Vector>& xs,
                            const SpaceDescriptor& space) {
  if (!space.is_lattice())
    throw std::invalid_argument(
        "square function needs a lattice space; use gaussian_norm on Hilbert");
  if (xs.empty()) throw std::invalid_argument("empty family");
  RealVector g = RealVector::Zero(space.dim);
  for (const auto& x : xs) {
    if (x.size() != space.dim) throw DimensionMismatch("family dimension mismatch");
    g += x.cwiseAbs2().real();
  }
  const Vector gc = g.cwiseSqrt().cast<Complex>();
  return vector_norm(gc, space);
}

GammaNorm gamma_space_norm(const SampledFunction& f) {
  if (f.values.cols() != f.cols() || f.values.rows() != f.space.dim)
    throw DimensionMismatch("sampled function shape mismatch");
  GammaNorm out;
  if (f.space.kind == SpaceKind::Hilbert) {
    out.value = std::sqrt(f.tStep) * f.values.norm();
    out.surrogate = false;
    return out;
  }
  RealVector g = RealVector::Zero(f.space.dim);
  for (Index c = 0; c < f.values.cols(); ++c)
    g += f.values.col(c).cwiseAbs2().real();
  g *= f.tStep;
  const Vector gc = g.cwiseSqrt().cast<Complex>();
  out.value = vector_norm(gc, f.space);
  out.surrogate = true;
  return out;
}

SampledFunction fourier_transform(const SampledFunction& f, double freqStart,
                                  double freqStep, Index freqCount) {
  SampledFunction out;
  out.tStart = freqStart;
  out.tStep = freqStep;
  out.tCount = freqCount;
  out.branches = f.branches;
  out.space = f.space;
  out.values = Matrix::Zero(f.space.dim, freqCount * f.branches);

  const double h = f.tStep;
  for (Index m = 0; m < freqCount; ++m) {
    const double tau = out.cellMid(m);
    // exact integral of e^{-i tau s} over one cell, referenced to its left edge
    Complex cellKernel;
    if (std::abs(tau * h) < 1e-8) {
      cellKernel = Complex(h) * (1.0 - Complex(0.0, 0.5 * tau * h));
    } else {
      cellKernel = (1.0 - std::exp(Complex(0.0, -tau * h))) / Complex(0.0, tau);
    }
    for (Index j = 0; j < f.tCount; ++j) {
      const Complex w = std::exp(Complex(0.0, -tau * f.cellLeft(j))) * cellKernel;
      for (Index k = 0; k < f.branches; ++k)
        out.values.col(m * f.branches + k) += w * f.values.col(j * f.branches + k);
    }
  }
  return out;
}

SampledFunction fourier_transform(const SampledFunction& f) {
  const double W = kPi / (2.0 * f.tStep);
  const Index count = std::min<Index>(4096, std::max<Index>(512, 4 * f.tCount));
  const double step = 2.0 * W / static_cast<double>(count);
  return fourier_transform(f, -W, step, count);
}

namespace {

// mean of ||X g||^2 and ||Y g||^2 over common Gaussian draws
std::pair<double, double> paired_second_moments(const Matrix& X, const Matrix& Y,
                                                const SpaceDescriptor& sx,
                                                const SpaceDescriptor& sy,
                                                long samples, RandomStream rs) {
  double ax = 0.0, ay = 0.0;
  for (long i = 0; i < samples; ++i) {
    const Vector g = rs.gaussian_vector(X.cols());
    ax += space_norm_sq(X * g, sx);
    ay += space_norm_sq(Y * g, sy);
  }
  return {ax / samples, ay / samples};
}

double family_ratio(const std::vector<MatrixOperator>& family,
                    const std::vector<int>& assign,
                    const std::vector<Vector>& xs, long samples,
                    RandomStream rs) {
  const SpaceDescriptor& space = family.front().space;
  Matrix X = stack_columns(xs);
  Matrix TX(X.rows(), X.cols());
  for (Index k = 0; k < X.cols(); ++k)
    TX.col(k) = family[assign[k]].entries * X.col(k);
  auto [den, num] = paired_second_moments(X, TX, space, space, samples, rs);
  if (den <= 0.0) return 0.0;
  return std::sqrt(num / den);
}

}  // namespace

GammaBound gamma_bound_estimate(const std::vector<MatrixOperator>& family,
                                const std::vector<GaussianSum>& trials,
                                const GaussianConfig& cfg) {
  if (family.empty()) throw std::invalid_argument("empty operator family");
  const SpaceDescriptor space = family.front().space;
  for (const auto& T : family)
    if (!(T.space == space))
      throw std::invalid_argument("family members live on different spaces");

  GammaBound out;
  if (space.kind == SpaceKind::Hilbert) {
    // gamma-boundedness and uniform boundedness coincide on Hilbert spaces
    double best = 0.0;
    for (const auto& T : family)
      best = std::max(best, operator_norm(T).value);
    out.lowerBound = best;
    out.exact = true;
    return out;
  }

  RandomStream base(cfg.seed);
  const long searchSamples = std::max<long>(500, cfg.sampleCount / 10);

  double bestRatio = -1.0;
  std::vector<int> bestAssign;
  std::vector<Vector> bestVectors;

  auto consider = [&](const std::vector<int>& assign,
                      const std::vector<Vector>& xs, RandomStream rs) {
    const double r = family_ratio(family, assign, xs, searchSamples, rs);
    if (r > bestRatio) {
      bestRatio = r;
      bestAssign = assign;
      bestVectors = xs;
    }
    return r;
  };

  // supplied trials first (explicit witnesses)
  for (size_t t = 0; t < trials.size(); ++t) {
    const auto& tr = trials[t];
    if (tr.vectors.empty()) continue;
    std::vector<int> assign(tr.vectors.size());
    for (size_t k = 0; k < assign.size(); ++k)
      assign[k] = static_cast<int>(k % family.size());
    consider(assign, tr.vectors, base.substream("gamma_bound.trial", t));
  }

  // single-operator probes: for N = 1 the Gaussian factor cancels, so the
  // ratio is the exact directional norm ||T x|| / ||x||
  for (size_t k = 0; k < family.size(); ++k) {
    RandomStream rs = base.substream("gamma_bound.single", k);
    for (int j = 0; j < 2; ++j) {
      const std::vector<int> assign = {static_cast<int>(k)};
      const std::vector<Vector> xs = {rs.gaussian_vector(space.dim)};
      consider(assign, xs, base.substream("gamma_bound.single.eval", 97 * k + j));
    }
  }

  // random restarts + coordinate ascent; restart 0 continues from the best
  // probe found so far
  const int N = static_cast<int>(std::min<size_t>(family.size(), 4));
  for (int r = 0; r < cfg.restarts; ++r) {
    RandomStream rs = base.substream("gamma_bound.restart", r);
    std::vector<int> assign(N);
    std::vector<Vector> xs(N);
    if (r == 0 && !bestVectors.empty()) {
      for (int k = 0; k < N; ++k) {
        assign[k] = bestAssign[k % bestAssign.size()];
        xs[k] = bestVectors[k % bestVectors.size()];
      }
    } else {
      for (int k = 0; k < N; ++k) {
        assign[k] = static_cast<int>(rs.raw() % family.size());
        xs[k] = rs.gaussian_vector(space.dim);
      }
    }
    RandomStream evalStream = base.substream("gamma_bound.eval", r);
    double cur = family_ratio(family, assign, xs, searchSamples, evalStream);
    if (cur > bestRatio) {
      bestRatio = cur;
      bestAssign = assign;
      bestVectors = xs;
    }
    double sigma = 0.5;
    for (int step = 0; step < cfg.searchBudget / std::max(1, cfg.restarts); ++step) {
      std::vector<int> na = assign;
      std::vector<Vector> nx = xs;
      if (rs.uniform() < 0.25) {
        na[rs.raw() % N] = static_cast<int>(rs.raw() % family.size());
      } else {
        const int k = static_cast<int>(rs.raw() % N);
        nx[k] = nx[k] + sigma * rs.gaussian_vector(space.dim);
      }
      const double cand = family_ratio(family, na, nx, searchSamples, evalStream);
      if (cand > cur) {
        cur = cand;
        assign = std::move(na);
        xs = std::move(nx);
        if (cur > bestRatio) {
          bestRatio = cur;
          bestAssign = assign;
          bestVectors = xs;
        }
      } else {
        sigma = std::max(0.05, sigma * 0.9);
      }
    }
  }

  if (bestVectors.empty()) {
    bestVectors = {Vector::Unit(space.dim, 0)};
    bestAssign = {0};
  }

  // final evaluation of the best witness at full sample count
  GaussianSum wx{bestVectors, space};
  GaussianSum wtx{bestVectors, space};
  for (size_t k = 0; k < bestVectors.size(); ++k)
    wtx.vectors[k] = family[bestAssign[k]].entries * bestVectors[k];
  GaussianConfig fin = cfg;
  out.denominator = gaussian_norm(wx, fin);
  out.numerator = gaussian_norm(wtx, fin);
  out.lowerBound = out.denominator.value > 0.0
                       ? out.numerator.value / out.denominator.value
                       : 0.0;
  out.exact = false;
  out.witnessVectors = bestVectors;
  out.witnessAssignment = bestAssign;
  return out;
}

double wgamma_pairing_ratio(const std::vector<MatrixOperator>& ops,
                            const std::vector<Vector>& xs,
                            const std::vector<Vector>& ys,
                            const GaussianConfig& cfg) {
  if (ops.size() != xs.size() || xs.size() != ys.size())
    throw DimensionMismatch("family sizes differ");
  if (ops.empty()) throw std::invalid_argument("empty family");
  const SpaceDescriptor space = ops.front().space;
  double pairing = 0.0;
  for (size_t k = 0; k < ops.size(); ++k)
    pairing += std::abs(duality_pair(Vector(ops[k].entries * xs[k]), ys[k], space));

  const Estimate gx = gaussian_norm({xs, space}, cfg);
  GaussianConfig cfgDual = cfg;
  cfgDual.seed = RandomStream(cfg.seed).substream("wgamma.dual").seed();
  const Estimate gy = gaussian_norm({ys, space.dual()}, cfgDual);
  if (gx.value <= 0.0 || gy.value <= 0.0) return 0.0;
  return pairing / (gx.value * gy.value);
}

double kconvexity_ratio(const GaussianSum& xs, const GaussianConfig& cfg) {
  if (xs.vectors.empty()) throw std::invalid_argument("empty family");
  const SpaceDescriptor space = xs.space;
  const SpaceDescriptor dualSpace = space.dual();
  const size_t N = xs.vectors.size();

  const Estimate gx = gaussian_norm(xs, cfg);

  RandomStream base(cfg.seed);
  GaussianConfig cfgDual = cfg;
  cfgDual.seed = base.substream("kconv.dual").seed();

  auto objective = [&](const std::vector<Vector>& ys) {
    Complex pairing(0.0);
    for (size_t k = 0; k < N; ++k)
      pairing += duality_pair(xs.vectors[k], ys[k], space);
    const Estimate gy = gaussian_norm({ys, dualSpace}, cfgDual);
    return gy.value > 0.0 ? std::abs(pairing) / gy.value : 0.0;
  };

  // analytic starts: conjugates (optimal on Hilbert) and per-vector norming
  // functionals weighted by their norms
  std::vector<Vector> conj(N), witness(N);
  for (size_t k = 0; k < N; ++k) {
    conj[k] = xs.vectors[k].conjugate();
    witness[k] = vector_norm(xs.vectors[k], space) *
                 dual_witness(xs.vectors[k], space);
  }
  double best = std::max(objective(conj), objective(witness));
  std::vector<Vector> cur = conj;
  if (objective(witness) > objective(conj)) cur = witness;

  RandomStream rs = base.substream("kconv.search");
  double curVal = best;
  double sigma = 0.3;
  const double vecScale = gx.value / std::sqrt(static_cast<double>(N));
  for (int step = 0; step < cfg.searchBudget; ++step) {
    std::vector<Vector> cand = cur;
    const size_t k = rs.raw() % N;
    cand[k] = cand[k] + (sigma * vecScale) * rs.gaussian_vector(space.dim);
    const double v = objective(cand);
    if (v > curVal) {
      curVal = v;
      cur = std::move(cand);
      best = std::max(best, v);
    } else {
      sigma = std::max(0.02, sigma * 0.92);
    }
  }
  return best > 0.0 ? gx.value / best : std::numeric_limits<double>::infinity();
}

}  // namespace hpcalc
