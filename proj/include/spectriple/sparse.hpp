#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "spectriple/numeric.hpp"

namespace spectriple {

/// Sparse matrix with exact rational entries, row-major with columns sorted
/// inside each row. Zero entries are never stored.
class SparseRatMat {
 public:
  using Entry = std::pair<std::int64_t, Rat>;

  SparseRatMat() = default;
  SparseRatMat(std::int64_t rows, std::int64_t cols)
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows)) {}

  static SparseRatMat identity(std::int64_t n);

  std::int64_t rows() const { return rows_; }
  std::int64_t cols() const { return cols_; }
  std::int64_t nnz() const;

  const std::vector<Entry>& row(std::int64_t r) const {
    return data_[static_cast<std::size_t>(r)];
  }

  /// Insert or overwrite; dropping the entry when v == 0.
  void set(std::int64_t r, std::int64_t c, const Rat& v);
  /// Add v into (r, c).
  void add_at(std::int64_t r, std::int64_t c, const Rat& v);
  Rat get(std::int64_t r, std::int64_t c) const;

  SparseRatMat operator+(const SparseRatMat& o) const;
  SparseRatMat operator-(const SparseRatMat& o) const;
  SparseRatMat operator*(const SparseRatMat& o) const;
  bool operator==(const SparseRatMat& o) const;

  SparseRatMat transpose() const;
  SparseRatMat scaled(const Rat& c) const;

  bool is_zero() const;
  bool is_diagonal() const;
  bool is_symmetric() const;
  std::vector<Rat> diagonal() const;

 private:
  std::int64_t rows_ = 0, cols_ = 0;
  std::vector<std::vector<Entry>> data_;
};

/// Exact rank by rational Gaussian elimination (deterministic pivoting:
/// first row with a nonzero in the leftmost unsettled column).
std::int64_t rank(SparseRatMat m);

/// Largest singular value estimated by power iteration on A^T A in binary64.
double operator_norm_estimate(const SparseRatMat& m, int iterations = 200, std::uint64_t seed = 1);

}  // namespace spectriple
