// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "hpcalc/rng.hpp"
#include "hpcalc/spaces.hpp"

namespace hpcalc {

struct GaussianConfig {
  long sampleCount = 10000;  // M
  std::uint64_t seed = 12345;
  int batches = 20;
  int searchBudget = 200;        // adversarial search steps
  int restarts = 4;              // random restarts of the search
  double blowupThreshold = 1e3;  // witnessed lower bound treated as blow-up
};

// A finite Gaussian sum sum_k gamma_k (x) x_k, identified with its vectors.
struct GaussianSum {
  std::vector<Vector> vectors;
  SpaceDescriptor space;
};

struct Estimate {
  double value = 0.0;
  double ciLow = 0.0;
  double ciHigh = 0.0;
  bool exact = false;
  std::uint64_t seed = 0;
  long samples = 0;
};

// Monte-Carlo estimate of (E || sum_k gamma_k x_k ||^2)^{1/2} with standard
// complex Gaussians; deterministic given the seed, ci from batch means.
Estimate gaussian_norm(const GaussianSum& s, const GaussianConfig& cfg);

// Exact lattice norm of (sum_k |x_k|^2)^{1/2}. Throws on Hilbert spaces.
double square_function_norm(const std::vector<Vector>& xs,
                            const SpaceDescriptor& space);

// A function sampled on a uniform grid (cell values), optionally crossed
// with a finite branch index set; column j*branches + k holds branch k on
// cell j.
struct SampledFunction {
  double tStart = 0.0;
  double tStep = 1.0;
  Index tCount = 0;
  Index branches = 1;
  SpaceDescriptor space;
  Matrix values;

  Index cols() const { return tCount * branches; }
  double cellLeft(Index j) const { return tStart + static_cast<double>(j) * tStep; }
  double cellMid(Index j) const { return tStart + (static_cast<double>(j) + 0.5) * tStep; }
};

struct GammaNorm {
  double value = 0.0;
  // true when the lattice square-function surrogate was used, which matches
  // the gamma norm only up to Khintchine-Maurey constants
  bool surrogate = false;
};

// gamma(S;X) norm of the sampled function: Hilbert-Schmidt norm of the
// weighted sample matrix for Hilbert targets, square-function surrogate on
// lattices.
GammaNorm gamma_space_norm(const SampledFunction& f);

// Discrete approximation of f_hat(t) = int e^{-its} f(s) ds on a frequency
// grid, exact per grid cell for step functions. Branches transform
// independently.
SampledFunction fourier_transform(const SampledFunction& f, double freqStart,
                                  double freqStep, Index freqCount);
SampledFunction fourier_transform(const SampledFunction& f);

struct GammaBound {
  double lowerBound = 0.0;
  bool exact = false;
  Estimate numerator;    // gaussian norm of the transformed family (best witness)
  Estimate denominator;  // gaussian norm of the witness family
  std::vector<Vector> witnessVectors;
  std::vector<int> witnessAssignment;  // operator index per slot
};

// Lower bound for the gamma-bound of the family: supremum of
// G(sum gamma_k T_k x_k) / G(sum gamma_k x_k) over the supplied trials and a
// seeded adversarial search. Exact (max operator norm) on Hilbert spaces.
GammaBound gamma_bound_estimate(const std::vector<MatrixOperator>& family,
                                const std::vector<GaussianSum>& trials,
                                const GaussianConfig& cfg);

// sum_k |<T_k x_k, y_k>| / (G(x family) G(y family)); a lower bound on the
// weak gamma-bound of the family.
double wgamma_pairing_ratio(const std::vector<MatrixOperator>& ops,
                            const std::vector<Vector>& xs,
                            const std::vector<Vector>& ys,
                            const GaussianConfig& cfg);

// G(x family) divided by the best found |sum_k <x_k, y_k>| over dual
// families of unit Gaussian norm; a lower bound on the K-convexity constant.
double kconvexity_ratio(const GaussianSum& xs, const GaussianConfig& cfg);

}  // namespace hpcalc
