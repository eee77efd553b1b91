// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <limits>
#include <vector>

#include "hpcalc/rng.hpp"
#include "hpcalc/types.hpp"

namespace hpcalc {

enum class SpaceKind { Hilbert, SeqLattice, FuncLattice };

// Which norm structure a vector lives in: Hilbert l^2_n, the sequence
// lattice l^p_n, or a discretized function lattice L^p on a uniform grid
// of cells [start + i*h, start + (i+1)*h).
struct SpaceDescriptor {
  SpaceKind kind = SpaceKind::Hilbert;
  Index dim = 1;
  double p = 2.0;  // exponent for lattices; fixed at 2 for Hilbert
  double gridStart = 0.0;
  double gridStep = 1.0;  // h; FuncLattice only

  static SpaceDescriptor hilbert(Index n);
  static SpaceDescriptor seq_lattice(Index n, double p);
  static SpaceDescriptor func_lattice(double start, double h, Index n, double p);

  bool is_lattice() const { return kind != SpaceKind::Hilbert; }
  double weight() const { return kind == SpaceKind::FuncLattice ? gridStep : 1.0; }

  // Dual space under the bilinear pairing: p -> p' with 1/p + 1/p' = 1,
  // same grid for FuncLattice.
  SpaceDescriptor dual() const;

  bool operator==(const SpaceDescriptor& o) const;
};

double conjugate_exponent(double p);

// Norm of x in the given space. Throws DimensionMismatch on length mismatch.
double vector_norm(const Vector& x, const SpaceDescriptor& space);

// Bilinear pairing sum_i x_i y_i, times the grid weight h for FuncLattice.
Complex duality_pair(const Vector& x, const Vector& y, const SpaceDescriptor& space);

// Norming functional: y with duality_pair(x, y) == vector_norm(x) and
// ||y||_dual == 1. Undefined (returns zero vector) for x == 0.
Vector dual_witness(const Vector& x, const SpaceDescriptor& space);

// An n x n complex matrix acting on a concrete space.
struct MatrixOperator {
  Matrix entries;
  SpaceDescriptor space;

  MatrixOperator() = default;
  MatrixOperator(Matrix m, SpaceDescriptor s);

  Index dim() const { return entries.rows(); }
};

// Plain transpose tagged with the dual space; duality_pair(Ax, y) ==
// duality_pair(x, adjoint(A) y) exactly.
MatrixOperator adjoint(const MatrixOperator& A);

// Eigenvalue multiset.
Vector spectrum(const MatrixOperator& A);

double min_real_spectrum(const MatrixOperator& A);

struct NormEstimate {
  double value = 0.0;
  bool exact = true;
};

// Operator norm on the operator's space. Exact for Hilbert (largest singular
// value) and for lattice p in {1, inf} (column/row sums). Other lattice
// exponents get a certified lower bound from dual-norm ascent with random
// restarts, flagged as an estimate.
NormEstimate operator_norm(const MatrixOperator& A, int restarts = 8,
                           std::uint64_t seed = 0x9d2c5680u);

}  // namespace hpcalc
