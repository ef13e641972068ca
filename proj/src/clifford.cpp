#include "spectriple/clifford.hpp"

#include <bit>

#include "spectriple/errors.hpp"

namespace spectriple {

SignedSparseOp SignedSparseOp::identity(std::int32_t dim) {
  SignedSparseOp op;
  op.dim = dim;
  op.row.resize(static_cast<std::size_t>(dim));
  op.sign.assign(static_cast<std::size_t>(dim), 1);
  for (std::int32_t j = 0; j < dim; ++j) op.row[static_cast<std::size_t>(j)] = j;
  return op;
}

SignedSparseOp SignedSparseOp::zero(std::int32_t dim) {
  SignedSparseOp op;
  op.dim = dim;
  op.row.assign(static_cast<std::size_t>(dim), -1);
  op.sign.assign(static_cast<std::size_t>(dim), 1);
  return op;
}

SignedSparseOp compose(const SignedSparseOp& a, const SignedSparseOp& b) {
  SignedSparseOp op = SignedSparseOp::zero(a.dim);
  for (std::int32_t j = 0; j < b.dim; ++j) {
    std::int32_t mid = b.row[static_cast<std::size_t>(j)];
    if (mid < 0) continue;
    std::int32_t r = a.row[static_cast<std::size_t>(mid)];
    if (r < 0) continue;
    op.row[static_cast<std::size_t>(j)] = r;
    op.sign[static_cast<std::size_t>(j)] = static_cast<std::int8_t>(
        a.sign[static_cast<std::size_t>(mid)] * b.sign[static_cast<std::size_t>(j)]);
  }
  return op;
}

SignedSparseOp transpose(const SignedSparseOp& a) {
  SignedSparseOp op = SignedSparseOp::zero(a.dim);
  for (std::int32_t j = 0; j < a.dim; ++j) {
    std::int32_t r = a.row[static_cast<std::size_t>(j)];
    if (r < 0) continue;
    op.row[static_cast<std::size_t>(r)] = j;
    op.sign[static_cast<std::size_t>(r)] = a.sign[static_cast<std::size_t>(j)];
  }
  return op;
}

SignedSparseOp negate(const SignedSparseOp& a) {
  SignedSparseOp op = a;
  for (auto& s : op.sign) s = static_cast<std::int8_t>(-s);
  return op;
}

namespace {

std::int8_t below_sign(std::uint32_t mask, int slot) {
  std::uint32_t below = mask & ((1u << slot) - 1u);
  return (std::popcount(below) % 2 == 0) ? std::int8_t{1} : std::int8_t{-1};
}

}  // namespace

SignedSparseOp creation(int two_d, int slot) {
  const std::int32_t dim = std::int32_t{1} << two_d;
  SignedSparseOp op = SignedSparseOp::zero(dim);
  const std::uint32_t bit = 1u << slot;
  for (std::uint32_t mask = 0; mask < static_cast<std::uint32_t>(dim); ++mask) {
    if (mask & bit) continue;  // v_s wedge v_s = 0
    op.row[mask] = static_cast<std::int32_t>(mask | bit);
    op.sign[mask] = below_sign(mask, slot);
  }
  return op;
}

SignedSparseOp annihilation(int two_d, int slot) { return transpose(creation(two_d, slot)); }

SignedSparseOp clifford_generator(int two_d, int slot) {
  // creation and annihilation act on complementary masks, so the sum is
  // still a signed basis map: mask -> mask xor bit with the below-count sign.
  const std::int32_t dim = std::int32_t{1} << two_d;
  SignedSparseOp op = SignedSparseOp::zero(dim);
  const std::uint32_t bit = 1u << slot;
  for (std::uint32_t mask = 0; mask < static_cast<std::uint32_t>(dim); ++mask) {
    op.row[mask] = static_cast<std::int32_t>(mask ^ bit);
    op.sign[mask] = below_sign(mask, slot);
  }
  return op;
}

SignedSparseOp grading(int two_d) {
  const std::int32_t dim = std::int32_t{1} << two_d;
  SignedSparseOp op = SignedSparseOp::identity(dim);
  for (std::uint32_t mask = 0; mask < static_cast<std::uint32_t>(dim); ++mask)
    op.sign[mask] = (std::popcount(mask) % 2 == 0) ? std::int8_t{1} : std::int8_t{-1};
  return op;
}

SignedSparseOp cliff_word(int two_d, const std::vector<int>& slots) {
  for (std::size_t i = 0; i < slots.size(); ++i)
    for (std::size_t j = i + 1; j < slots.size(); ++j)
      if (slots[i] == slots[j])
        throw UsageError("cliff_word requires pairwise distinct slots");
  SignedSparseOp op = SignedSparseOp::identity(std::int32_t{1} << two_d);
  // right-to-left so the product applies c_{s1} last
  for (auto it = slots.rbegin(); it != slots.rend(); ++it)
    op = compose(clifford_generator(two_d, *it), op);
  return op;
}

SparseRatMat to_rat_matrix(const SignedSparseOp& a) {
  SparseRatMat m(a.dim, a.dim);
  for (std::int32_t j = 0; j < a.dim; ++j) {
    std::int32_t r = a.row[static_cast<std::size_t>(j)];
    if (r < 0) continue;
    m.set(r, j, Rat(a.sign[static_cast<std::size_t>(j)]));
  }
  return m;
}

}  // namespace spectriple
