#pragma once

#include <memory>
#include <string>
#include <vector>

#include "spectriple/errors.hpp"

namespace spectriple {

/// Generator symbols of a symmetric generating set, 2d of them, paired by
/// involution. Slot order is declaration order with each inverse immediately
/// after its generator; every iteration in the library follows slot order.
class Alphabet {
 public:
  Alphabet() = default;
  Alphabet(std::vector<char> symbols, std::vector<int> inverse);

  /// d generator pairs named a,A,b,B,c,C,...
  static Alphabet standard(int pairs);

  int size() const { return static_cast<int>(symbols_.size()); }  // 2d
  int pairs() const { return size() / 2; }                        // d
  char symbol(int slot) const { return symbols_[static_cast<std::size_t>(slot)]; }
  int inverse(int slot) const { return inverse_[static_cast<std::size_t>(slot)]; }
  /// Slot of a symbol character, or -1.
  int slot_of(char c) const;

 private:
  std::vector<char> symbols_;
  std::vector<int> inverse_;
};

/// A finite, possibly non-reduced sequence of generator slots. Empty = e.
using Word = std::vector<int>;

struct GroupSpec {
  enum class Kind {
    IntegerLattice,    // Z^param
    FreeGroup,         // F_param
    CyclicFinite,      // Z/param
    DirectProduct,     // left x right
    FreeProduct,       // left * right
    BaumslagSolitar21, // <a,b | a^2 b a^-1 b^-1>
    Presented,         // generic finite presentation
  };
  Kind kind;
  int param = 0;
  std::shared_ptr<const GroupSpec> left, right;
  std::vector<char> gen_names;        // Presented only
  std::vector<std::string> relators;  // Presented only, words over gen chars

  std::string display() const;
};

/// Canonical normal form key. Two elements are equal iff keys are identical.
using Elem = std::string;

/// Word-problem interface for a fixed group and symmetric generating set.
/// Immutable after construction; safe for concurrent read-only use.
class GroupOracle {
 public:
  virtual ~GroupOracle() = default;

  const Alphabet& alphabet() const { return alpha_; }
  /// True when distinct symbols map to the same group element (e.g. a = a^-1
  /// in Z/2); such groups are flagged in reports.
  bool involutive_collapse() const { return collapse_; }

  virtual Elem identity() const = 0;
  /// g -> g*s for generator slot s (the Cayley edge map).
  virtual Elem right_multiply(const Elem& g, int slot) const = 0;
  virtual Elem multiply(const Elem& g, const Elem& h) const = 0;
  virtual Elem invert(const Elem& g) const = 0;
  virtual std::string display(const Elem& g) const = 0;

  Elem generator(int slot) const { return right_multiply(identity(), slot); }
  Elem normal_form(const Word& w) const;

 protected:
  Alphabet alpha_;
  bool collapse_ = false;
};

struct CompletionBudget {
  int max_rules = 512;
  int max_rule_length = 64;
  long max_iterations = 200000;
  double max_seconds = 30.0;
};

/// Parse `<g1,g2,... | w1 w2 ...>` into a Presented spec.
/// Lowercase letter = generator, uppercase = its inverse.
GroupSpec parse_presentation(const std::string& text);

/// Parse a CLI group argument: a presentation `<...>` or a named form
/// (Z, Z2, F2, C6, B21), with `x` for direct and `*` for free products.
GroupSpec parse_group(const std::string& text);

std::shared_ptr<GroupOracle> build_oracle(const GroupSpec& spec,
                                          const CompletionBudget& budget = {});

/// Parse a word like "abA" or "a b A" over the oracle's alphabet.
Word parse_word(const Alphabet& alpha, const std::string& text);

}  // namespace spectriple
