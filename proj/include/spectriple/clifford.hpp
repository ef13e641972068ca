#pragma once

#include <cstdint>
#include <vector>

#include "spectriple/sparse.hpp"

namespace spectriple {

/// Operator on the 2^{2d}-dimensional exterior algebra basis (bitmask per
/// subset of generator slots, ascending mask order) that maps every basis
/// vector to a signed basis vector or to zero. Creation, annihilation,
/// Clifford generators, the grading, and all their products have this shape.
struct SignedSparseOp {
  std::int32_t dim = 0;
  std::vector<std::int32_t> row;  // per column; -1 marks a zero column
  std::vector<std::int8_t> sign;  // +1/-1, meaningful where row >= 0

  static SignedSparseOp identity(std::int32_t dim);
  static SignedSparseOp zero(std::int32_t dim);

  bool operator==(const SignedSparseOp& o) const = default;
};

/// a compose b (apply b first).
SignedSparseOp compose(const SignedSparseOp& a, const SignedSparseOp& b);
/// Adjoint in the orthonormal subset basis.
SignedSparseOp transpose(const SignedSparseOp& a);
SignedSparseOp negate(const SignedSparseOp& a);

/// Wedge by v_s with the antisymmetry sign (-1)^{#occupied slots below s};
/// kills masks already containing s.
SignedSparseOp creation(int two_d, int slot);
/// Contraction; the adjoint of creation.
SignedSparseOp annihilation(int two_d, int slot);
/// c_s = creation + annihilation. Exactly one of the two acts on each basis
/// vector, so the sum stays a signed basis map.
SignedSparseOp clifford_generator(int two_d, int slot);
/// Diagonal (-1)^{exterior degree}.
SignedSparseOp grading(int two_d);
/// Ordered product c_{s1} ... c_{sr}; slots must be pairwise distinct
/// (UsageError otherwise). Empty sequence gives the identity.
SignedSparseOp cliff_word(int two_d, const std::vector<int>& slots);

/// Exact rational matrix view, for algebra that leaves the signed-basis-map
/// class (sums, anticommutators).
SparseRatMat to_rat_matrix(const SignedSparseOp& a);

}  // namespace spectriple
