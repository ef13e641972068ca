#include "spectriple/dirac.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>

#include "spectriple/errors.hpp"

namespace spectriple {

namespace {

std::int8_t below_sign(std::uint32_t mask, int slot) {
  std::uint32_t below = mask & ((1u << slot) - 1u);
  return (std::popcount(below) % 2 == 0) ? std::int8_t{1} : std::int8_t{-1};
}

double least_squares_slope(const std::vector<std::pair<double, double>>& pts) {
  if (pts.size() < 2) return 0.0;
  double mx = 0, my = 0;
  for (const auto& [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(pts.size());
  my /= static_cast<double>(pts.size());
  double num = 0, den = 0;
  for (const auto& [x, y] : pts) {
    num += (x - mx) * (y - my);
    den += (x - mx) * (x - mx);
  }
  return den == 0 ? 0.0 : num / den;
}

}  // namespace

Rat DerivationTable::r_squared(std::int64_t idx) const {
  Rat sum = 0;
  for (int s = 0; s < two_d; ++s) {
    const Rat& v = at(idx, s);
    sum += v * v;
  }
  return sum;
}

DerivationTable derivation_table(const GeodesicCounts& counts, const BallTable& table) {
  DerivationTable dt;
  dt.two_d = table.two_d();
  dt.values.assign(static_cast<std::size_t>(table.size()) * dt.two_d, Rat(0));
  for (std::int64_t i = 1; i < table.size(); ++i) {
    const Int& p = counts.p[static_cast<std::size_t>(i)];
    const int len = table.length[static_cast<std::size_t>(i)];
    for (std::int64_t k = table.down_offsets[static_cast<std::size_t>(i)];
         k < table.down_offsets[static_cast<std::size_t>(i) + 1]; ++k) {
      int s = table.down_slot[static_cast<std::size_t>(k)];
      const Int& ps = counts.p[static_cast<std::size_t>(table.down_target[static_cast<std::size_t>(k)])];
      dt.values[static_cast<std::size_t>(i * dt.two_d + s)] = Rat(ps * len, p);
    }
  }
  return dt;
}

SparseRatMat assemble_dirac(const DerivationTable& dt, const BallTable& table, int N) {
  if (N > table.radius) throw MarginInsufficient("truncation exceeds enumerated ball", N);
  const int two_d = dt.two_d;
  const std::int64_t fock = std::int64_t{1} << two_d;
  const std::int64_t nball = table.ball_size(N);
  SparseRatMat D(nball * fock, nball * fock);
  for (std::int64_t i = 0; i < nball; ++i) {
    for (std::uint32_t rm = 0; rm < static_cast<std::uint32_t>(fock); ++rm) {
      for (int s = 0; s < two_d; ++s) {
        const Rat& v = dt.at(i, s);
        if (v == 0) continue;
        std::uint32_t cm = rm ^ (1u << s);
        Rat signed_v = below_sign(rm, s) > 0 ? v : -v;
        D.add_at(i * fock + rm, i * fock + cm, signed_v);
      }
    }
  }
  return D;
}

SparseRatMat assemble_grading(const BallTable& table, int two_d, int N) {
  if (N > table.radius) throw MarginInsufficient("truncation exceeds enumerated ball", N);
  const std::int64_t fock = std::int64_t{1} << two_d;
  const std::int64_t nball = table.ball_size(N);
  SparseRatMat G(nball * fock, nball * fock);
  for (std::int64_t i = 0; i < nball; ++i)
    for (std::uint32_t mask = 0; mask < static_cast<std::uint32_t>(fock); ++mask)
      G.set(i * fock + mask, i * fock + mask,
            Rat(std::popcount(mask) % 2 == 0 ? 1 : -1));
  return G;
}

SquareCheckReport square_check(const SparseRatMat& D, const DerivationTable& dt,
                               const BallTable& table, int N) {
  SquareCheckReport rep{true, true, 0};
  SparseRatMat sq = D * D;
  rep.diagonal = sq.is_diagonal();
  const int two_d = dt.two_d;
  const std::int64_t fock = std::int64_t{1} << two_d;
  const std::int64_t nball = table.ball_size(N);
  if (!rep.diagonal) {
    for (std::int64_t r = 0; r < sq.rows(); ++r)
      for (const auto& [c, v] : sq.row(r))
        if (c != r) ++rep.mismatches;
  }
  for (std::int64_t i = 0; i < nball; ++i) {
    Rat expected = dt.r_squared(i);
    for (std::int64_t mask = 0; mask < fock; ++mask)
      if (sq.get(i * fock + mask, i * fock + mask) != expected) ++rep.mismatches;
  }
  rep.matches = rep.diagonal && rep.mismatches == 0;
  return rep;
}

std::vector<SpectrumRow> spectrum(const DerivationTable& dt, const BallTable& table, int N) {
  if (N > table.radius) throw MarginInsufficient("truncation exceeds enumerated ball", N);
  const std::int64_t fock = std::int64_t{1} << dt.two_d;
  std::vector<SpectrumRow> rows;
  for (std::int64_t i = 0; i < table.ball_size(N); ++i) {
    Rat r2 = dt.r_squared(i);
    int len = table.length[static_cast<std::size_t>(i)];
    if (r2 == 0) {
      rows.push_back({i, len, r2, 0.0, fock});
    } else {
      double r = std::sqrt(to_double(r2));
      rows.push_back({i, len, r2, -r, fock / 2});
      rows.push_back({i, len, r2, r, fock / 2});
    }
  }
  return rows;
}

ResolventReport resolvent_growth_check(const BallTable& table, const GeodesicCounts& counts,
                                       int max_n) {
  if (max_n > table.radius)
    throw MarginInsufficient("resolvent check needs every sphere up to max_n", max_n);
  const int two_d = table.two_d();
  ResolventReport rep;
  rep.all_ok = true;
  for (int n = 1; n <= max_n; ++n) {
    SphereMinRow row;
    row.n = n;
    row.bound = Rat(std::int64_t{n} * n, std::int64_t{two_d} * two_d);
    row.argmin = -1;
    bool first = true;
    for (std::int64_t i = table.sphere_offsets[static_cast<std::size_t>(n)];
         i < table.sphere_offsets[static_cast<std::size_t>(n) + 1]; ++i) {
      Rat r2 = 0;
      for (int s = 0; s < two_d; ++s) {
        Rat v = counts.derivation(table, i, s);
        r2 += v * v;
      }
      if (first || r2 < row.min_r_squared) {
        row.min_r_squared = r2;
        row.argmin = i;
        first = false;
      }
      if (r2 == row.bound) row.equality_cases.push_back(i);
    }
    row.ok = !first && row.min_r_squared >= row.bound;
    if (!row.ok) {
      rep.all_ok = false;
      if (row.argmin >= 0) rep.violations.push_back(row.argmin);
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

PhaseField phase_field(const DerivationTable& dt, const BallTable& table, int N) {
  if (N > table.radius) throw MarginInsufficient("truncation exceeds enumerated ball", N);
  const int two_d = dt.two_d;
  const std::int64_t nball = table.ball_size(N);
  PhaseField pf;
  pf.direction.resize(static_cast<std::size_t>(nball));
  pf.r_squared.assign(static_cast<std::size_t>(nball), Rat(0));
  pf.constant = true;
  pf.fiber_square_identity = true;
  for (std::int64_t i = 1; i < nball; ++i) {
    std::vector<Rat> v(static_cast<std::size_t>(two_d));
    for (int s = 0; s < two_d; ++s) v[static_cast<std::size_t>(s)] = dt.at(i, s);
    pf.r_squared[static_cast<std::size_t>(i)] = dt.r_squared(i);
    pf.direction[static_cast<std::size_t>(i)] = std::move(v);
  }
  // exact proportionality against the first non-identity fiber
  for (std::int64_t i = 2; i < nball && pf.constant; ++i) {
    const auto& a = pf.direction[1];
    const auto& b = pf.direction[static_cast<std::size_t>(i)];
    for (int s = 0; s < two_d && pf.constant; ++s)
      for (int t = s + 1; t < two_d; ++t)
        if (a[static_cast<std::size_t>(s)] * b[static_cast<std::size_t>(t)] !=
            a[static_cast<std::size_t>(t)] * b[static_cast<std::size_t>(s)]) {
          pf.constant = false;
          pf.witness_a = 1;
          pf.witness_b = i;
          break;
        }
  }
  // fiberwise (sum_s d_s c_s)^2 = r^2 I, so the phase fiber c_{u(g)} squares
  // to the identity
  const std::int64_t fock = std::int64_t{1} << two_d;
  for (std::int64_t i = 1; i < nball && pf.fiber_square_identity; ++i) {
    SparseRatMat M(fock, fock);
    for (std::uint32_t rm = 0; rm < static_cast<std::uint32_t>(fock); ++rm)
      for (int s = 0; s < two_d; ++s) {
        const Rat& v = dt.at(i, s);
        if (v == 0) continue;
        M.add_at(rm, rm ^ (1u << s), below_sign(rm, s) > 0 ? v : -v);
      }
    SparseRatMat expected = SparseRatMat::identity(fock).scaled(pf.r_squared[static_cast<std::size_t>(i)]);
    if (!(M * M == expected)) pf.fiber_square_identity = false;
  }
  return pf;
}

IndexReport index_d_plus(const SparseRatMat& D, int two_d) {
  const std::int64_t fock = std::int64_t{1} << two_d;
  const std::int64_t total = D.rows();
  std::vector<std::int64_t> pos(static_cast<std::size_t>(total));
  IndexReport rep{};
  std::int64_t evens = 0, odds = 0;
  for (std::int64_t g = 0; g < total; ++g) {
    bool even = std::popcount(static_cast<std::uint64_t>(g % fock)) % 2 == 0;
    pos[static_cast<std::size_t>(g)] = even ? evens++ : odds++;
  }
  rep.dim_even = evens;
  rep.dim_odd = odds;
  SparseRatMat d_plus(odds, evens);   // even -> odd block
  SparseRatMat d_minus(evens, odds);  // odd -> even block
  for (std::int64_t r = 0; r < total; ++r) {
    bool r_even = std::popcount(static_cast<std::uint64_t>(r % fock)) % 2 == 0;
    for (const auto& [c, v] : D.row(r)) {
      bool c_even = std::popcount(static_cast<std::uint64_t>(c % fock)) % 2 == 0;
      if (c_even && !r_even)
        d_plus.set(pos[static_cast<std::size_t>(r)], pos[static_cast<std::size_t>(c)], v);
      else if (!c_even && r_even)
        d_minus.set(pos[static_cast<std::size_t>(r)], pos[static_cast<std::size_t>(c)], v);
      // parity-preserving entries would contradict oddness; rank ignores them
    }
  }
  rep.rank_plus = rank(std::move(d_plus));
  rep.rank_minus = rank(std::move(d_minus));
  rep.ker_plus = rep.dim_even - rep.rank_plus;
  rep.ker_minus = rep.dim_odd - rep.rank_minus;
  rep.index = rep.ker_plus - rep.ker_minus;
  return rep;
}

namespace {

HeatTrace heat_from_r2(const BallTable& table, double t, int max_n,
                       const std::function<Rat(std::int64_t)>& r2_of) {
  if (t <= 0) throw UsageError("heat trace requires t > 0");
  if (max_n > table.radius)
    throw MarginInsufficient("heat trace needs every sphere up to max_n", max_n);
  const double fock = std::pow(2.0, table.two_d());
  HeatTrace h;
  h.t = t;
  double total = 0;
  for (int n = 0; n <= max_n; ++n) {
    double inc = 0;
    for (std::int64_t i = table.sphere_offsets[static_cast<std::size_t>(n)];
         i < table.sphere_offsets[static_cast<std::size_t>(n) + 1]; ++i)
      inc += fock * std::exp(-t * to_double(r2_of(i)));
    total += inc;
    h.increments.push_back(inc);
    h.partial_sums.push_back(total);
  }
  return h;
}

}  // namespace

HeatTrace heat_trace(const BallTable& table, const GeodesicCounts& counts, double t, int max_n) {
  const int two_d = table.two_d();
  return heat_from_r2(table, t, max_n, [&](std::int64_t i) {
    Rat r2 = 0;
    for (int s = 0; s < two_d; ++s) {
      Rat v = counts.derivation(table, i, s);
      r2 += v * v;
    }
    return r2;
  });
}

HeatTrace heat_trace(const DerivationTable& dt, const BallTable& table, double t, int max_n) {
  return heat_from_r2(table, t, max_n, [&](std::int64_t i) { return dt.r_squared(i); });
}

SparseRatMat group_translation(const BallTable& table, int two_d, int N, const Elem& g) {
  if (N > table.radius) throw MarginInsufficient("truncation exceeds enumerated ball", N);
  const std::int64_t fock = std::int64_t{1} << two_d;
  const std::int64_t nball = table.ball_size(N);
  SparseRatMat U(nball * fock, nball * fock);
  for (std::int64_t j = 0; j < nball; ++j) {
    Elem gh = table.oracle->multiply(g, table.elements[static_cast<std::size_t>(j)]);
    auto it = table.index_of.find(gh);
    if (it == table.index_of.end() || it->second >= nball) continue;
    for (std::int64_t mask = 0; mask < fock; ++mask)
      U.set(it->second * fock + mask, j * fock + mask, Rat(1));
  }
  return U;
}

SparseRatMat commutator_closed_form(const DerivationTable& dt, const BallTable& table, int N,
                                    const Elem& g) {
  if (N > table.radius) throw MarginInsufficient("truncation exceeds enumerated ball", N);
  const int two_d = dt.two_d;
  const std::int64_t fock = std::int64_t{1} << two_d;
  const std::int64_t nball = table.ball_size(N);
  SparseRatMat M(nball * fock, nball * fock);
  for (std::int64_t j = 0; j < nball; ++j) {
    Elem gh = table.oracle->multiply(g, table.elements[static_cast<std::size_t>(j)]);
    auto it = table.index_of.find(gh);
    if (it == table.index_of.end() || it->second >= nball) continue;
    const std::int64_t i = it->second;
    for (std::uint32_t cm = 0; cm < static_cast<std::uint32_t>(fock); ++cm) {
      for (int s = 0; s < two_d; ++s) {
        Rat diff = dt.at(i, s) - dt.at(j, s);
        if (diff == 0) continue;
        std::uint32_t rm = cm ^ (1u << s);
        M.add_at(i * fock + rm, j * fock + cm, below_sign(cm, s) > 0 ? diff : -diff);
      }
    }
  }
  return M;
}

CommutatorReport commutator(const DerivationTable& dt, const BallTable& table, int N,
                            const Elem& g) {
  if (N > table.radius) throw MarginInsufficient("truncation exceeds enumerated ball", N);
  const int two_d = dt.two_d;
  CommutatorReport rep;
  rep.g = g;
  SparseRatMat D = assemble_dirac(dt, table, N);
  SparseRatMat U = group_translation(table, two_d, N, g);
  rep.matrix = D * U - U * D;
  const std::int64_t nball = table.ball_size(N);
  rep.interior_columns = 0;
  rep.excluded_columns = 0;
  rep.interior_norm_squared = 0;
  for (std::int64_t j = 0; j < nball; ++j) {
    Elem gh = table.oracle->multiply(g, table.elements[static_cast<std::size_t>(j)]);
    auto it = table.index_of.find(gh);
    if (it == table.index_of.end() || it->second >= nball) {
      ++rep.excluded_columns;
      continue;
    }
    ++rep.interior_columns;
    // the h-fiber block is a Clifford multiple, its norm^2 is sum_s diff^2
    Rat fiber = 0;
    for (int s = 0; s < two_d; ++s) {
      Rat diff = dt.at(it->second, s) - dt.at(j, s);
      fiber += diff * diff;
    }
    if (fiber > rep.interior_norm_squared) rep.interior_norm_squared = fiber;
  }
  rep.norm_estimate = operator_norm_estimate(rep.matrix);
  return rep;
}

Rat ratio_defect(const BallTable& table, const GeodesicCounts& counts, const Elem& g,
                 const Elem& h, int slot) {
  std::int64_t hi = table.index(h);
  std::int64_t ghi = table.index(table.oracle->multiply(g, h));
  Rat d = counts.ratio(table, ghi, slot) - counts.ratio(table, hi, slot);
  return d < 0 ? Rat(-d) : d;
}

ClassCReport class_c_estimate(const BallTable& table, const GeodesicCounts& counts,
                              const Elem& g, int max_n) {
  ClassCReport rep;
  rep.g = g;
  rep.max_n = max_n;
  const int lg = word_length(table, g);
  if (table.radius < max_n + lg)
    throw MarginInsufficient("class-C estimate needs gh enumerated for every tested h",
                             max_n + lg);
  const int two_d = table.two_d();
  rep.k_hat = 0;
  for (int n = 1; n <= max_n; ++n) {
    Rat mn = 0;
    for (std::int64_t j = table.sphere_offsets[static_cast<std::size_t>(n)];
         j < table.sphere_offsets[static_cast<std::size_t>(n) + 1]; ++j) {
      Elem gh = table.oracle->multiply(g, table.elements[static_cast<std::size_t>(j)]);
      std::int64_t i = table.index(gh);
      for (int s = 0; s < two_d; ++s) {
        Rat d = counts.ratio(table, i, s) - counts.ratio(table, j, s);
        if (d < 0) d = -d;
        d *= n;
        if (d > mn) mn = d;
      }
    }
    rep.M.push_back(mn);
    if (mn > rep.k_hat) rep.k_hat = mn;
  }
  std::vector<std::pair<double, double>> pts;
  for (int n = 1; n <= max_n; ++n) {
    const Rat& mn = rep.M[static_cast<std::size_t>(n - 1)];
    if (mn > 0) pts.emplace_back(std::log(static_cast<double>(n)), std::log(to_double(mn)));
  }
  rep.slope = least_squares_slope(pts);
  rep.verdict = rep.slope > kGrowthSlopeThreshold ? Verdict::GrowthEvidence
                                                  : Verdict::BoundedEvidence;
  return rep;
}

const char* verdict_name(Verdict v) {
  return v == Verdict::BoundedEvidence ? "BoundedEvidence" : "GrowthEvidence";
}

}  // namespace spectriple
