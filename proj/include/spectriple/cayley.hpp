#pragma once

#include <cstdint>
#include <memory>
#include <unordered_map>
#include <vector>

#include "spectriple/group.hpp"
#include "spectriple/numeric.hpp"

namespace spectriple {

struct EnumerationBudget {
  std::int64_t max_elements = -1;  // -1 = unlimited
  double max_seconds = -1.0;       // -1 = unlimited
};

/// Immutable enumeration of the ball B^N in the Cayley graph with right
/// multiplication edges g -> g*s. Elements are ordered by (length, discovery
/// order); element 0 is e. Truncation to a smaller radius is the index prefix
/// [0, ball_size(n)).
struct BallTable {
  std::shared_ptr<const GroupOracle> oracle;
  int radius = 0;
  std::vector<Elem> elements;
  std::vector<int> length;
  std::vector<std::int64_t> sphere_offsets;  // size radius+2; sphere n = [off[n], off[n+1])

  // Down edges (slot s with l(g*s) = l(g)-1), flattened per element.
  std::vector<std::int64_t> down_offsets;  // size elements+1
  std::vector<std::int32_t> down_slot;
  std::vector<std::int64_t> down_target;

  std::unordered_map<Elem, std::int64_t> index_of;

  std::int64_t size() const { return static_cast<std::int64_t>(elements.size()); }
  std::int64_t ball_size(int n) const { return sphere_offsets[static_cast<std::size_t>(n) + 1]; }
  std::int64_t sphere_size(int n) const {
    return sphere_offsets[static_cast<std::size_t>(n) + 1] - sphere_offsets[static_cast<std::size_t>(n)];
  }
  /// Index of g, or NotInBall.
  std::int64_t index(const Elem& g) const;
  int two_d() const { return oracle->alphabet().size(); }
};

/// BFS enumeration of B^N. Throws ResourceLimit with partial statistics when
/// a budget is exceeded.
BallTable enumerate_ball(std::shared_ptr<const GroupOracle> oracle, int radius,
                         const EnumerationBudget& budget = {});

/// Exact geodesic path counts, aligned with BallTable indices. Only p is
/// stored; p_s(g) = p(g*s) is read off the down edges.
struct GeodesicCounts {
  std::vector<Int> p;

  /// p_s(g): geodesics from g to e starting with step s.
  Int p_slot(const BallTable& table, std::int64_t idx, int slot) const;
  /// p_s(g)/p(g) as an exact rational.
  Rat ratio(const BallTable& table, std::int64_t idx, int slot) const;
  /// The derivation value (p_s(g)/p(g)) * l(g).
  Rat derivation(const BallTable& table, std::int64_t idx, int slot) const;
};

/// Dynamic programming in increasing length: p(e) = 1, p(g) = sum of p over
/// down-neighbors.
GeodesicCounts geodesic_counts(const BallTable& table);

struct BruteGeodesics {
  Int p;
  std::vector<Int> p_slot;  // per generator slot
};

/// Independent testing oracle: exhaustively enumerates all generator
/// sequences of length len whose product moves g to e, counting the total and
/// the count per first step. len must equal l(g) for meaningful results and
/// is capped at 8 (exponential cost).
BruteGeodesics brute_force_geodesics(const GroupOracle& oracle, const Elem& g, int len);

std::vector<std::int64_t> sphere_sizes(const BallTable& table);

/// BFS word length of g. Throws NotInBall.
int word_length(const BallTable& table, const Elem& g);

}  // namespace spectriple
