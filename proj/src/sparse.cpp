#include "spectriple/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace spectriple {

SparseRatMat SparseRatMat::identity(std::int64_t n) {
  SparseRatMat m(n, n);
  for (std::int64_t i = 0; i < n; ++i) m.set(i, i, Rat(1));
  return m;
}

std::int64_t SparseRatMat::nnz() const {
  std::int64_t n = 0;
  for (const auto& r : data_) n += static_cast<std::int64_t>(r.size());
  return n;
}

void SparseRatMat::set(std::int64_t r, std::int64_t c, const Rat& v) {
  auto& row = data_[static_cast<std::size_t>(r)];
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const Entry& e, std::int64_t col) { return e.first < col; });
  if (it != row.end() && it->first == c) {
    if (v == 0)
      row.erase(it);
    else
      it->second = v;
  } else if (v != 0) {
    row.insert(it, {c, v});
  }
}

void SparseRatMat::add_at(std::int64_t r, std::int64_t c, const Rat& v) {
  if (v == 0) return;
  auto& row = data_[static_cast<std::size_t>(r)];
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const Entry& e, std::int64_t col) { return e.first < col; });
  if (it != row.end() && it->first == c) {
    it->second += v;
    if (it->second == 0) row.erase(it);
  } else {
    row.insert(it, {c, v});
  }
}

Rat SparseRatMat::get(std::int64_t r, std::int64_t c) const {
  const auto& row = data_[static_cast<std::size_t>(r)];
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const Entry& e, std::int64_t col) { return e.first < col; });
  if (it != row.end() && it->first == c) return it->second;
  return Rat(0);
}

SparseRatMat SparseRatMat::operator+(const SparseRatMat& o) const {
  SparseRatMat out(rows_, cols_);
  for (std::int64_t r = 0; r < rows_; ++r) {
    const auto& a = data_[static_cast<std::size_t>(r)];
    const auto& b = o.data_[static_cast<std::size_t>(r)];
    auto& dst = out.data_[static_cast<std::size_t>(r)];
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
        dst.push_back(a[i++]);
      } else if (i == a.size() || b[j].first < a[i].first) {
        dst.push_back(b[j++]);
      } else {
        Rat v = a[i].second + b[j].second;
        if (v != 0) dst.push_back({a[i].first, v});
        ++i;
        ++j;
      }
    }
  }
  return out;
}

SparseRatMat SparseRatMat::operator-(const SparseRatMat& o) const { return *this + o.scaled(Rat(-1)); }

SparseRatMat SparseRatMat::operator*(const SparseRatMat& o) const {
  SparseRatMat out(rows_, o.cols_);
  for (std::int64_t r = 0; r < rows_; ++r) {
    const auto& a = data_[static_cast<std::size_t>(r)];
    if (a.empty()) continue;
    // accumulate a sparse combination of o's rows
    std::vector<Entry> acc;
    for (const auto& [k, v] : a) {
      const auto& b = o.data_[static_cast<std::size_t>(k)];
      std::vector<Entry> merged;
      merged.reserve(acc.size() + b.size());
      std::size_t i = 0, j = 0;
      while (i < acc.size() || j < b.size()) {
        if (j == b.size() || (i < acc.size() && acc[i].first < b[j].first)) {
          merged.push_back(acc[i++]);
        } else if (i == acc.size() || b[j].first < acc[i].first) {
          merged.push_back({b[j].first, v * b[j].second});
          ++j;
        } else {
          Rat s = acc[i].second + v * b[j].second;
          if (s != 0) merged.push_back({acc[i].first, s});
          ++i;
          ++j;
        }
      }
      acc = std::move(merged);
    }
    out.data_[static_cast<std::size_t>(r)] = std::move(acc);
  }
  return out;
}

bool SparseRatMat::operator==(const SparseRatMat& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

SparseRatMat SparseRatMat::transpose() const {
  SparseRatMat out(cols_, rows_);
  for (std::int64_t r = 0; r < rows_; ++r)
    for (const auto& [c, v] : data_[static_cast<std::size_t>(r)])
      out.data_[static_cast<std::size_t>(c)].push_back({r, v});
  return out;  // columns arrive in increasing r, already sorted
}

SparseRatMat SparseRatMat::scaled(const Rat& c) const {
  SparseRatMat out(rows_, cols_);
  if (c == 0) return out;
  out.data_ = data_;
  for (auto& row : out.data_)
    for (auto& e : row) e.second *= c;
  return out;
}

bool SparseRatMat::is_zero() const {
  for (const auto& r : data_)
    if (!r.empty()) return false;
  return true;
}

bool SparseRatMat::is_diagonal() const {
  for (std::int64_t r = 0; r < rows_; ++r)
    for (const auto& [c, v] : data_[static_cast<std::size_t>(r)])
      if (c != r) return false;
  return true;
}

bool SparseRatMat::is_symmetric() const {
  if (rows_ != cols_) return false;
  return *this == transpose();
}

std::vector<Rat> SparseRatMat::diagonal() const {
  std::vector<Rat> d(static_cast<std::size_t>(std::min(rows_, cols_)), Rat(0));
  for (std::int64_t r = 0; r < std::min(rows_, cols_); ++r) d[static_cast<std::size_t>(r)] = get(r, r);
  return d;
}

std::int64_t rank(SparseRatMat m) {
  // Rational Gaussian elimination, deterministic: for each pivot column in
  // order, pick the first remaining row with a nonzero there.
  const std::int64_t R = m.rows(), C = m.cols();
  std::vector<std::vector<SparseRatMat::Entry>> rows;
  rows.reserve(static_cast<std::size_t>(R));
  for (std::int64_t r = 0; r < R; ++r)
    if (!m.row(r).empty()) rows.push_back(m.row(r));
  std::int64_t rk = 0;
  std::size_t settled = 0;
  for (std::int64_t col = 0; col < C && settled < rows.size(); ++col) {
    std::size_t pivot = settled;
    while (pivot < rows.size() && rows[pivot].front().first != col) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[settled], rows[pivot]);
    const auto piv = rows[settled];
    const Rat& pv = piv.front().second;
    for (std::size_t i = settled + 1; i < rows.size();) {
      if (rows[i].front().first != col) {
        ++i;
        continue;
      }
      Rat factor = rows[i].front().second / pv;
      std::vector<SparseRatMat::Entry> merged;
      merged.reserve(rows[i].size() + piv.size());
      std::size_t a = 0, b = 0;
      while (a < rows[i].size() || b < piv.size()) {
        if (b == piv.size() || (a < rows[i].size() && rows[i][a].first < piv[b].first)) {
          merged.push_back(rows[i][a++]);
        } else if (a == rows[i].size() || piv[b].first < rows[i][a].first) {
          merged.push_back({piv[b].first, -factor * piv[b].second});
          ++b;
        } else {
          Rat v = rows[i][a].second - factor * piv[b].second;
          if (v != 0) merged.push_back({rows[i][a].first, v});
          ++a;
          ++b;
        }
      }
      if (merged.empty()) {
        rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(i));
      } else {
        rows[i] = std::move(merged);
        ++i;
      }
    }
    ++settled;
    ++rk;
  }
  return rk;
}

double operator_norm_estimate(const SparseRatMat& m, int iterations, std::uint64_t seed) {
  const std::int64_t R = m.rows(), C = m.cols();
  if (R == 0 || C == 0 || m.nnz() == 0) return 0.0;
  // binary64 copies of A and A^T for fast repeated application
  struct D64 {
    std::vector<std::int64_t> off, col;
    std::vector<double> val;
  };
  auto build = [](const SparseRatMat& a) {
    D64 d;
    d.off.push_back(0);
    for (std::int64_t r = 0; r < a.rows(); ++r) {
      for (const auto& [c, v] : a.row(r)) {
        d.col.push_back(c);
        d.val.push_back(to_double(v));
      }
      d.off.push_back(static_cast<std::int64_t>(d.col.size()));
    }
    return d;
  };
  D64 A = build(m), At = build(m.transpose());
  auto apply = [](const D64& d, const std::vector<double>& x, std::vector<double>& y) {
    for (std::size_t r = 0; r + 1 < d.off.size(); ++r) {
      double s = 0;
      for (std::int64_t k = d.off[r]; k < d.off[r + 1]; ++k)
        s += d.val[static_cast<std::size_t>(k)] *
             x[static_cast<std::size_t>(d.col[static_cast<std::size_t>(k)])];
      y[r] = s;
    }
  };
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> x(static_cast<std::size_t>(C)), ax(static_cast<std::size_t>(R)),
      atax(static_cast<std::size_t>(C));
  for (auto& v : x) v = u(rng);
  double sigma2 = 0;
  for (int it = 0; it < iterations; ++it) {
    double nx = 0;
    for (double v : x) nx += v * v;
    nx = std::sqrt(nx);
    if (nx == 0) return 0.0;
    for (auto& v : x) v /= nx;
    apply(A, x, ax);
    apply(At, ax, atax);
    sigma2 = 0;
    for (std::size_t i = 0; i < x.size(); ++i) sigma2 += atax[i] * x[i];
    x = atax;
  }
  return std::sqrt(std::max(0.0, sigma2));
}

}  // namespace spectriple
