#include <doctest.h>

#include <cmath>

#include "spectriple/sparse.hpp"

using namespace spectriple;

TEST_CASE("entry storage keeps rows sorted and drops zeros") {
  SparseRatMat m(3, 3);
  m.set(0, 2, Rat(1, 2));
  m.set(0, 0, 3);
  m.add_at(0, 2, Rat(1, 2));
  CHECK(m.get(0, 2) == 1);
  CHECK(m.get(0, 0) == 3);
  CHECK(m.get(0, 1) == 0);
  CHECK(m.nnz() == 2);
  m.add_at(0, 0, -3);
  CHECK(m.nnz() == 1);
  CHECK(m.row(0).front().first == 2);
  m.set(0, 2, 0);
  CHECK(m.is_zero());
}

TEST_CASE("arithmetic agrees with hand computation") {
  SparseRatMat a(2, 2), b(2, 2);
  a.set(0, 0, 1);
  a.set(0, 1, 2);
  a.set(1, 1, Rat(1, 3));
  b.set(0, 1, 1);
  b.set(1, 0, -1);

  SparseRatMat sum = a + b;
  CHECK(sum.get(0, 1) == 3);
  CHECK(sum.get(1, 0) == -1);

  SparseRatMat prod = a * b;  // [[1,2],[0,1/3]] * [[0,1],[-1,0]] = [[-2,1],[-1/3,0]]
  CHECK(prod.get(0, 0) == -2);
  CHECK(prod.get(0, 1) == 1);
  CHECK(prod.get(1, 0) == Rat(-1, 3));
  CHECK(prod.get(1, 1) == 0);

  CHECK((a - a).is_zero());
  CHECK(a.scaled(3).get(1, 1) == 1);
  CHECK(a.transpose().get(1, 0) == 2);
  CHECK(a.transpose().transpose() == a);
  CHECK(SparseRatMat::identity(2) * a == a);
}

TEST_CASE("shape predicates") {
  SparseRatMat d(2, 2);
  d.set(0, 0, 5);
  CHECK(d.is_diagonal());
  CHECK(d.is_symmetric());
  d.set(0, 1, 1);
  CHECK_FALSE(d.is_diagonal());
  CHECK_FALSE(d.is_symmetric());
  d.set(1, 0, 1);
  CHECK(d.is_symmetric());
  CHECK(d.diagonal() == std::vector<Rat>{5, 0});
}

TEST_CASE("rational rank is exact") {
  SparseRatMat a(2, 2);
  a.set(0, 0, 1);
  a.set(0, 1, 2);
  a.set(1, 0, 2);
  a.set(1, 1, 4);
  CHECK(rank(a) == 1);  // second row is a multiple

  SparseRatMat b(3, 3);
  // rows (1,2,3), (0,1,1), (1,3,4): row3 = row1 + row2, rank 2
  b.set(0, 0, 1);
  b.set(0, 1, 2);
  b.set(0, 2, 3);
  b.set(1, 1, 1);
  b.set(1, 2, 1);
  b.set(2, 0, 1);
  b.set(2, 1, 3);
  b.set(2, 2, 4);
  CHECK(rank(b) == 2);

  // fractions that would break floating point pivoting thresholds
  SparseRatMat c(2, 2);
  c.set(0, 0, Rat(1, 1000000));
  c.set(0, 1, 1);
  c.set(1, 0, 1);
  c.set(1, 1, 1000000);
  CHECK(rank(c) == 1);
  c.add_at(1, 1, Rat(1, 7));
  CHECK(rank(c) == 2);

  CHECK(rank(SparseRatMat(4, 4)) == 0);
  CHECK(rank(SparseRatMat::identity(5)) == 5);
}

TEST_CASE("norm estimate converges on known singular values") {
  SparseRatMat d(3, 3);
  d.set(0, 0, 3);
  d.set(1, 1, -1);
  d.set(2, 2, Rat(1, 2));
  CHECK(std::abs(operator_norm_estimate(d) - 3.0) < 1e-9);

  // [[0,2],[0,0]] has norm 2
  SparseRatMat n(2, 2);
  n.set(0, 1, 2);
  CHECK(std::abs(operator_norm_estimate(n) - 2.0) < 1e-9);

  // rotation-ish symmetric matrix [[1,2],[2,1]]: eigenvalues 3 and -1
  SparseRatMat s(2, 2);
  s.set(0, 0, 1);
  s.set(0, 1, 2);
  s.set(1, 0, 2);
  s.set(1, 1, 1);
  CHECK(std::abs(operator_norm_estimate(s) - 3.0) < 1e-9);

  CHECK(operator_norm_estimate(SparseRatMat(3, 3)) == 0.0);
}
