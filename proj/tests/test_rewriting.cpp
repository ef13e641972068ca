#include <doctest.h>

#include <string>

#include "spectriple/group.hpp"
#include "spectriple/rewriting.hpp"

using namespace spectriple;

TEST_CASE("shortlex orders by length then slot order") {
  Alphabet a = Alphabet::standard(2);
  CHECK(shortlex_less(a, "a", "aa"));
  CHECK(shortlex_less(a, "a", "A"));
  CHECK(shortlex_less(a, "A", "b"));
  CHECK(shortlex_less(a, "ab", "ba"));
  CHECK_FALSE(shortlex_less(a, "ba", "ab"));
  CHECK_FALSE(shortlex_less(a, "ab", "ab"));
}

TEST_CASE("free inverses alone complete immediately") {
  Alphabet a = Alphabet::standard(2);
  RewritingSystem rs = kb_complete(a, {});
  CHECK(rs.status == RewritingSystem::Status::Confluent);
  CHECK(rs.rules.size() == 4);  // aA, Aa, bB, Bb -> empty
  CHECK(rs.reduce("abBA") == "");
  CHECK(rs.reduce("aabBbA") == "aabA");
  CHECK(all_critical_pairs_resolve(rs));
}

TEST_CASE("commutation relator completes to the sorted normal form") {
  Alphabet a = Alphabet::standard(2);
  RewritingSystem rs = kb_complete(a, {"abAB"});
  REQUIRE(rs.status == RewritingSystem::Status::Confluent);
  CHECK(all_critical_pairs_resolve(rs));
  // canonical form puts the a-run before the b-run
  CHECK(rs.reduce("ba") == "ab");
  CHECK(rs.reduce("bbaa") == "aabb");
  CHECK(rs.reduce("BaB") == "aBB");
  CHECK(rs.reduce("abAB") == "");
}

TEST_CASE("cyclic relator folds powers") {
  Alphabet a = Alphabet::standard(1);
  RewritingSystem rs = kb_complete(a, {"aaa"});
  REQUIRE(rs.status == RewritingSystem::Status::Confluent);
  CHECK(rs.reduce("aaa") == "");
  CHECK(rs.reduce("aa") == "A");  // shortlex prefers the single inverse letter
  CHECK(rs.reduce("aaaa") == "a");
  CHECK(all_critical_pairs_resolve(rs));
}

TEST_CASE("reduction is deterministic and idempotent") {
  Alphabet a = Alphabet::standard(2);
  RewritingSystem rs = kb_complete(a, {"abAB"});
  std::string w = "bababaBA";
  std::string r1 = rs.reduce(w);
  CHECK(rs.reduce(w) == r1);
  CHECK(rs.reduce(r1) == r1);
}

TEST_CASE("budget exhaustion reports incomplete instead of wrong answers") {
  Alphabet a = Alphabet::standard(2);
  CompletionBudget tiny;
  tiny.max_rules = 4;  // not even room for the inverse rules plus one
  RewritingSystem rs = kb_complete(a, {"aabAB"}, tiny);
  CHECK(rs.status == RewritingSystem::Status::Incomplete);

  CompletionBudget fewiter;
  fewiter.max_iterations = 3;
  RewritingSystem rs2 = kb_complete(a, {"aabAB"}, fewiter);
  CHECK(rs2.status == RewritingSystem::Status::Incomplete);
}

TEST_CASE("confluent system solves the word problem for the presented group") {
  Alphabet a = Alphabet::standard(2);
  RewritingSystem rs = kb_complete(a, {"abAB"});
  REQUIRE(rs.status == RewritingSystem::Status::Confluent);
  // words equal in Z^2 iff same letter balance
  auto balance_equal = [](const std::string& u, const std::string& v) {
    auto count = [](const std::string& w, char c) {
      int n = 0;
      for (char x : w)
        if (x == c) ++n;
      return n;
    };
    return count(u, 'a') - count(u, 'A') == count(v, 'a') - count(v, 'A') &&
           count(u, 'b') - count(u, 'B') == count(v, 'b') - count(v, 'B');
  };
  const std::string words[] = {"", "a", "ab", "ba", "abA", "bA", "aBb", "BAba", "abab", "bbaa"};
  for (const auto& u : words)
    for (const auto& v : words)
      CHECK((rs.reduce(u) == rs.reduce(v)) == balance_equal(u, v));
}
