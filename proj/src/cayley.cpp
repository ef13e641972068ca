#include "spectriple/cayley.hpp"

#include <chrono>

#include "spectriple/errors.hpp"

namespace spectriple {

std::int64_t BallTable::index(const Elem& g) const {
  auto it = index_of.find(g);
  if (it == index_of.end()) throw NotInBall("element not in the enumerated ball");
  return it->second;
}

BallTable enumerate_ball(std::shared_ptr<const GroupOracle> oracle, int radius,
                         const EnumerationBudget& budget) {
  BallTable t;
  t.oracle = oracle;
  t.radius = radius;
  const int two_d = oracle->alphabet().size();
  const auto start = std::chrono::steady_clock::now();
  auto over_time = [&] {
    return budget.max_seconds >= 0 &&
           std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() >
               budget.max_seconds;
  };

  t.elements.push_back(oracle->identity());
  t.length.push_back(0);
  t.index_of.emplace(t.elements[0], 0);
  t.sphere_offsets.push_back(0);
  t.sphere_offsets.push_back(1);

  std::int64_t level_begin = 0, level_end = 1;
  for (int n = 1; n <= radius; ++n) {
    for (std::int64_t i = level_begin; i < level_end; ++i) {
      for (int s = 0; s < two_d; ++s) {
        Elem h = oracle->right_multiply(t.elements[static_cast<std::size_t>(i)], s);
        if (t.index_of.count(h)) continue;
        if (budget.max_elements >= 0 && t.size() >= budget.max_elements)
          throw ResourceLimit("element budget exceeded during ball enumeration",
                              static_cast<std::size_t>(t.size()), n - 1);
        if (over_time())
          throw ResourceLimit("time budget exceeded during ball enumeration",
                              static_cast<std::size_t>(t.size()), n - 1);
        t.index_of.emplace(h, t.size());
        t.elements.push_back(std::move(h));
        t.length.push_back(n);
      }
    }
    level_begin = level_end;
    level_end = t.size();
    t.sphere_offsets.push_back(level_end);
  }

  // Down edges need a separate pass: the last sphere is never expanded above.
  t.down_offsets.reserve(t.elements.size() + 1);
  t.down_offsets.push_back(0);
  for (std::int64_t i = 0; i < t.size(); ++i) {
    if (t.length[static_cast<std::size_t>(i)] > 0) {
      for (int s = 0; s < two_d; ++s) {
        Elem h = oracle->right_multiply(t.elements[static_cast<std::size_t>(i)], s);
        auto it = t.index_of.find(h);
        if (it == t.index_of.end()) continue;
        if (t.length[static_cast<std::size_t>(it->second)] !=
            t.length[static_cast<std::size_t>(i)] - 1)
          continue;
        t.down_slot.push_back(s);
        t.down_target.push_back(it->second);
      }
    }
    t.down_offsets.push_back(static_cast<std::int64_t>(t.down_slot.size()));
  }
  return t;
}

GeodesicCounts geodesic_counts(const BallTable& table) {
  GeodesicCounts c;
  c.p.resize(table.elements.size());
  c.p[0] = 1;
  // BFS order is increasing length, so every down-target is already filled.
  for (std::int64_t i = 1; i < table.size(); ++i) {
    Int sum = 0;
    for (std::int64_t k = table.down_offsets[static_cast<std::size_t>(i)];
         k < table.down_offsets[static_cast<std::size_t>(i) + 1]; ++k)
      sum += c.p[static_cast<std::size_t>(table.down_target[static_cast<std::size_t>(k)])];
    c.p[static_cast<std::size_t>(i)] = sum;
  }
  return c;
}

Int GeodesicCounts::p_slot(const BallTable& table, std::int64_t idx, int slot) const {
  for (std::int64_t k = table.down_offsets[static_cast<std::size_t>(idx)];
       k < table.down_offsets[static_cast<std::size_t>(idx) + 1]; ++k)
    if (table.down_slot[static_cast<std::size_t>(k)] == slot)
      return p[static_cast<std::size_t>(table.down_target[static_cast<std::size_t>(k)])];
  return 0;
}

Rat GeodesicCounts::ratio(const BallTable& table, std::int64_t idx, int slot) const {
  return Rat(p_slot(table, idx, slot), p[static_cast<std::size_t>(idx)]);
}

Rat GeodesicCounts::derivation(const BallTable& table, std::int64_t idx, int slot) const {
  return ratio(table, idx, slot) * table.length[static_cast<std::size_t>(idx)];
}

BruteGeodesics brute_force_geodesics(const GroupOracle& oracle, const Elem& g, int len) {
  if (len > 8)
    throw ResourceLimit("brute-force geodesic enumeration capped at length 8",
                        0, len);
  const int two_d = oracle.alphabet().size();
  BruteGeodesics out;
  out.p = 0;
  out.p_slot.assign(static_cast<std::size_t>(two_d), Int(0));
  const Elem e = oracle.identity();
  if (len == 0) {
    if (g == e) out.p = 1;
    return out;
  }
  // Depth-first over all (2d)^len generator sequences; a sequence counts when
  // g * s_1 ... s_len = e, which forces every prefix onto a geodesic.
  std::vector<int> stack(static_cast<std::size_t>(len), 0);
  std::vector<Elem> partial(static_cast<std::size_t>(len) + 1);
  partial[0] = g;
  int depth = 0;
  while (depth >= 0) {
    if (stack[static_cast<std::size_t>(depth)] == two_d) {
      stack[static_cast<std::size_t>(depth)] = 0;
      --depth;
      if (depth >= 0) ++stack[static_cast<std::size_t>(depth)];
      continue;
    }
    partial[static_cast<std::size_t>(depth) + 1] = oracle.right_multiply(
        partial[static_cast<std::size_t>(depth)], stack[static_cast<std::size_t>(depth)]);
    if (depth + 1 == len) {
      if (partial[static_cast<std::size_t>(len)] == e) {
        ++out.p;
        ++out.p_slot[static_cast<std::size_t>(stack[0])];
      }
      ++stack[static_cast<std::size_t>(depth)];
    } else {
      ++depth;
    }
  }
  return out;
}

std::vector<std::int64_t> sphere_sizes(const BallTable& table) {
  std::vector<std::int64_t> out;
  for (int n = 0; n <= table.radius; ++n) out.push_back(table.sphere_size(n));
  return out;
}

int word_length(const BallTable& table, const Elem& g) {
  return table.length[static_cast<std::size_t>(table.index(g))];
}

}  // namespace spectriple
