#pragma once

#include <string>
#include <vector>

#include "spectriple/group.hpp"

namespace spectriple {

/// Length-lexicographic string rewriting system over an alphabet's symbol
/// characters. Rules strictly decrease the shortlex order.
struct RewritingSystem {
  enum class Status { Confluent, Incomplete };

  struct Rule {
    std::string lhs, rhs;
  };

  Alphabet alphabet;
  std::vector<Rule> rules;
  Status status = Status::Incomplete;

  bool confluent() const { return status == Status::Confluent; }
  /// Rewrite to an irreducible word (leftmost, lowest rule index first).
  std::string reduce(std::string w) const;
};

/// shortlex comparison in the alphabet's slot order: true if a < b.
bool shortlex_less(const Alphabet& alpha, const std::string& a, const std::string& b);

/// Knuth-Bendix completion of the group presentation (free-inverse rules plus
/// the given relators, all oriented by shortlex). Returns a Confluent system
/// whose normal forms solve the word problem, or Incomplete with the partial
/// system when a budget is hit; callers must not build oracles from an
/// Incomplete system.
RewritingSystem kb_complete(const Alphabet& alpha, const std::vector<std::string>& relators,
                            const CompletionBudget& budget = {});

/// Recheck every overlap of the final rules; true iff all critical pairs
/// reduce to a common word. Testing hook, quadratic in the rule count.
bool all_critical_pairs_resolve(const RewritingSystem& rs);

}  // namespace spectriple
