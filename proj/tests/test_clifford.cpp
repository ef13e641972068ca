#include <doctest.h>

#include <vector>

#include "spectriple/clifford.hpp"
#include "spectriple/errors.hpp"
#include "spectriple/sparse.hpp"

using namespace spectriple;

namespace {

SparseRatMat two_identity(int dim) {
  SparseRatMat m = SparseRatMat::identity(dim);
  return m.scaled(2);
}

}  // namespace

TEST_CASE("creation acts on the exterior algebra basis") {
  // dim 16 = exterior algebra on 4 slots; basis indexed by subset masks
  SignedSparseOp a1 = creation(4, 0);
  CHECK(a1.row[0b0000] == 0b0001);  // vacuum -> v1
  CHECK(a1.sign[0b0000] == 1);
  CHECK(a1.row[0b0001] == -1);  // v1 wedge v1 = 0
  SignedSparseOp a2 = creation(4, 1);
  CHECK(a2.row[0b0001] == 0b0011);  // v1 -> v1 ^ v2, one slot below: sign -1
  CHECK(a2.sign[0b0001] == -1);
  CHECK(a2.row[0b0010] == -1);

  // annihilation is the adjoint; it removes the slot with the same sign rule
  SignedSparseOp d1 = annihilation(4, 0);
  CHECK(d1.row[0b0011] == 0b0010);
  CHECK(d1.sign[0b0011] == 1);
  CHECK(d1.row[0b0000] == -1);
  CHECK(d1 == transpose(creation(4, 0)));
  CHECK(annihilation(4, 2) == transpose(creation(4, 2)));
}

TEST_CASE("creation and annihilation square to zero") {
  for (int s = 0; s < 4; ++s) {
    CHECK(compose(creation(4, s), creation(4, s)) == SignedSparseOp::zero(16));
    CHECK(compose(annihilation(4, s), annihilation(4, s)) == SignedSparseOp::zero(16));
  }
}

TEST_CASE("clifford generators are symmetric involutions") {
  for (int two_d : {2, 4, 6}) {
    for (int s = 0; s < two_d; ++s) {
      SignedSparseOp c = clifford_generator(two_d, s);
      CHECK(compose(c, c) == SignedSparseOp::identity(1 << two_d));
      SparseRatMat m = to_rat_matrix(c);
      CHECK(m.is_symmetric());
      for (const auto& d : m.diagonal()) CHECK(d == 0);
    }
  }
}

TEST_CASE("canonical anticommutation relations hold exactly") {
  for (int two_d : {2, 4, 6}) {
    const int dim = 1 << two_d;
    std::vector<SparseRatMat> c;
    for (int s = 0; s < two_d; ++s) c.push_back(to_rat_matrix(clifford_generator(two_d, s)));
    for (int s = 0; s < two_d; ++s)
      for (int u = 0; u < two_d; ++u) {
        SparseRatMat anti = c[static_cast<std::size_t>(s)] * c[static_cast<std::size_t>(u)] +
                            c[static_cast<std::size_t>(u)] * c[static_cast<std::size_t>(s)];
        if (s == u)
          CHECK(anti == two_identity(dim));
        else
          CHECK(anti.is_zero());
      }
  }
}

TEST_CASE("grading anticommutes with every generator and has zero trace") {
  for (int two_d : {2, 4, 6}) {
    SparseRatMat g = to_rat_matrix(grading(two_d));
    CHECK(g * g == SparseRatMat::identity(1 << two_d));
    Rat trace = 0;
    for (const auto& d : g.diagonal()) trace += d;
    CHECK(trace == 0);
    for (int s = 0; s < two_d; ++s) {
      SparseRatMat c = to_rat_matrix(clifford_generator(two_d, s));
      CHECK((g * c + c * g).is_zero());
    }
  }
}

TEST_CASE("clifford words compose and square to a sign") {
  SignedSparseOp id = cliff_word(4, {});
  CHECK(id == SignedSparseOp::identity(16));

  // (c1 c2)^2 = -1 for anticommuting involutions
  SignedSparseOp w = cliff_word(4, {0, 1});
  SignedSparseOp sq = compose(w, w);
  CHECK(sq == negate(SignedSparseOp::identity(16)));

  CHECK_THROWS_AS(cliff_word(4, {0, 0}), UsageError);
  CHECK_THROWS_AS(cliff_word(4, {2, 1, 2}), UsageError);
}

TEST_CASE("graded commutator with a word deletes matched letters") {
  // [c_s, c_{s1}..c_{sr}]_graded = 2 sum_i (-1)^(i+1) delta(s, s_i) * (word minus s_i)
  const int two_d = 4;
  const std::vector<std::vector<int>> words = {{0}, {1}, {0, 1}, {1, 2}, {0, 1, 2}, {3, 1, 0}};
  for (const auto& word : words) {
    SparseRatMat x = to_rat_matrix(cliff_word(two_d, word));
    int r = static_cast<int>(word.size());
    for (int s = 0; s < two_d; ++s) {
      SparseRatMat cs = to_rat_matrix(clifford_generator(two_d, s));
      SparseRatMat lhs = cs * x - (x * cs).scaled(r % 2 == 0 ? 1 : -1);
      SparseRatMat rhs(1 << two_d, 1 << two_d);
      for (int i = 0; i < r; ++i) {
        if (word[static_cast<std::size_t>(i)] != s) continue;
        std::vector<int> rest;
        for (int j = 0; j < r; ++j)
          if (j != i) rest.push_back(word[static_cast<std::size_t>(j)]);
        Rat coeff = (i % 2 == 0) ? 2 : -2;
        rhs = rhs + to_rat_matrix(cliff_word(two_d, rest)).scaled(coeff);
      }
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("clifford words sweep the vacuum across the whole fiber") {
  const int two_d = 4;
  std::vector<bool> seen(1 << two_d, false);
  for (int mask = 0; mask < (1 << two_d); ++mask) {
    std::vector<int> word;
    for (int s = two_d - 1; s >= 0; --s)  // descending so each letter creates
      if (mask & (1 << s)) word.push_back(s);
    SignedSparseOp w = cliff_word(two_d, word);
    int row = w.row[0];
    REQUIRE(row >= 0);
    CHECK(row == mask);
    CHECK_FALSE(seen[static_cast<std::size_t>(row)]);
    seen[static_cast<std::size_t>(row)] = true;
  }
}
