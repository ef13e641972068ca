#include "spectriple/homogenize.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "spectriple/errors.hpp"

namespace spectriple {

SphereMeasure sphere_measure(const BallTable& table) {
  SphereMeasure mu;
  mu.radius = table.radius;
  Rat total = 0;
  for (int n = 0; n <= table.radius; ++n) {
    std::int64_t count = table.sphere_size(n);
    if (count == 0) throw EmptySphere(n);
    // each element of sphere n weighs 1/(#S^n * 2^{n+1})
    Rat w = Rat(1, Int(count) * (Int(1) << (n + 1)));
    mu.element_weight.push_back(w);
    total += w * count;
    mu.ball_mass.push_back(total);
  }
  return mu;
}

GrowthFunction zero_f() {
  GrowthFunction g;
  g.name = "zero";
  g.lambda_f = 0.0;
  g.f = [](double) { return 0.0; };
  g.fprime = [](double) { return 0.0; };
  g.zero = true;
  return g;
}

GrowthFunction default_f() {
  GrowthFunction g;
  g.name = "default";
  g.lambda_f = 1.0;
  g.f = [](double x) { return x + std::log2(x + 1.0); };
  g.fprime = [](double x) { return 1.0 + 1.0 / ((x + 1.0) * std::log(2.0)); };
  g.zero = false;
  return g;
}

GrowthFunction make_growth_function(const std::string& spec) {
  if (spec == "zero" || spec == "0") return zero_f();
  if (spec == "default") return default_f();
  if (spec.rfind("table:", 0) == 0) {
    std::string path = spec.substr(6);
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open growth-function table " + path);
    std::vector<std::pair<double, double>> pts;
    double x, y;
    while (in >> x >> y) pts.emplace_back(x, y);
    if (pts.size() < 2) throw UsageError("growth-function table needs at least two points");
    for (std::size_t i = 1; i < pts.size(); ++i)
      if (pts[i].first <= pts[i - 1].first)
        throw UsageError("growth-function table abscissae must increase");
    if (pts.front().first != 0.0 || pts.front().second != 0.0)
      throw UsageError("growth-function table must start at 0 0");
    double last_slope = (pts.back().second - pts[pts.size() - 2].second) /
                        (pts.back().first - pts[pts.size() - 2].first);
    GrowthFunction g;
    g.name = "table:" + path;
    g.lambda_f = last_slope;
    g.zero = false;
    g.f = [pts, last_slope](double v) {
      if (v <= pts.front().first) return pts.front().second;
      for (std::size_t i = 1; i < pts.size(); ++i)
        if (v <= pts[i].first) {
          double t = (v - pts[i - 1].first) / (pts[i].first - pts[i - 1].first);
          return pts[i - 1].second + t * (pts[i].second - pts[i - 1].second);
        }
      return pts.back().second + last_slope * (v - pts.back().first);
    };
    g.fprime = [pts, last_slope](double v) {
      for (std::size_t i = 1; i < pts.size(); ++i)
        if (v <= pts[i].first)
          return (pts[i].second - pts[i - 1].second) / (pts[i].first - pts[i - 1].first);
      return last_slope;
    };
    return g;
  }
  throw UsageError("unknown growth function '" + spec + "' (zero | default | table:<path>)");
}

GrowthValidation validate_growth_function(const GrowthFunction& gf,
                                          const std::vector<double>& grid) {
  GrowthValidation v;
  v.ok = true;
  const double tol = 1e-12;
  auto fail = [&](const std::string& msg) {
    v.ok = false;
    v.violations.push_back(msg);
  };
  if (std::abs(gf.f(0.0)) > tol) fail("f(0) != 0");
  if (gf.lambda_f < 0.0 || gf.lambda_f > 1.0) fail("lambda_f outside [0, 1]");
  double prev_x = -1, prev_f = 0, prev_fp = 0;
  bool have_prev = false;
  for (double x : grid) {
    double fx = gf.f(x), fpx = gf.fprime(x);
    if (fx < -tol) fail("f < 0 at x = " + shortest(x));
    if (fpx < -tol) fail("f' < 0 at x = " + shortest(x));
    if (have_prev) {
      if (fx < prev_f - tol) fail("f decreasing near x = " + shortest(x));
      if (fpx > prev_fp + tol) fail("f' increasing (f'' > 0) near x = " + shortest(x));
    }
    have_prev = true;
    prev_x = x;
    prev_f = fx;
    prev_fp = fpx;
  }
  (void)prev_x;
  v.lambda_at_grid_end = grid.empty() ? gf.lambda_f : gf.fprime(grid.back());
  if (!grid.empty()) {
    // f' approaches lambda_f from above for concave f; accept the declared
    // value when the grid tail is already within the remaining decrease of f'
    // (plus an absolute floor for flat profiles)
    double mid = gf.fprime(grid[grid.size() / 2]);
    double tail = v.lambda_at_grid_end;
    double slack = std::max(1e-3, 2.0 * std::abs(mid - tail));
    if (std::abs(tail - gf.lambda_f) > slack)
      fail("declared lambda_f inconsistent with the tail of f' on the grid");
  }
  return v;
}

namespace {

// Largest integer radius m with m <= f(l): the B^{f(l)} membership test on
// whole spheres. Negative when even the identity sphere is excluded (cannot
// happen for admissible f, guarded anyway).
int real_radius_floor(double fl) {
  if (fl < 0) return -1;
  return static_cast<int>(std::floor(fl));
}

// Weighted ratio averages A_s(x) = sum_{l(gamma) <= f(l(x))} ratio_s(gamma x)
// mu(gamma x) / mu(B x) for all slots at once.
std::vector<Rat> ratio_average(const GrowthFunction& gf, const BallTable& table,
                               const GeodesicCounts& counts, const SphereMeasure& mu,
                               std::int64_t x_idx) {
  const int two_d = table.two_d();
  const int lx = table.length[static_cast<std::size_t>(x_idx)];
  const int m = real_radius_floor(gf.f(lx));
  std::vector<Rat> acc(static_cast<std::size_t>(two_d), Rat(0));
  if (m < 0) return acc;
  const Elem& x = table.elements[static_cast<std::size_t>(x_idx)];
  Rat mass = 0;
  // gamma ranges over the enumerated prefix B^m; order is the table order
  const std::int64_t limit = table.ball_size(std::min(m, table.radius));
  if (m > table.radius)
    throw MarginInsufficient("homogenization ball exceeds enumerated radius",
                             m + lx);
  for (std::int64_t k = 0; k < limit; ++k) {
    Elem gx = table.oracle->multiply(table.elements[static_cast<std::size_t>(k)], x);
    std::int64_t gi;
    try {
      gi = table.index(gx);
    } catch (const NotInBall&) {
      throw MarginInsufficient("translate gamma*x not enumerated",
                               std::min(m, table.radius) + lx);
    }
    const Rat& w = mu.weight(table.length[static_cast<std::size_t>(gi)]);
    mass += w;
    for (int s = 0; s < two_d; ++s) {
      Rat r = counts.ratio(table, gi, s);
      if (r != 0) acc[static_cast<std::size_t>(s)] += r * w;
    }
  }
  for (auto& a : acc) a /= mass;
  return acc;
}

}  // namespace

DerivationTable homogenized_derivations(const GrowthFunction& gf, const BallTable& table,
                                        const GeodesicCounts& counts, const SphereMeasure& mu,
                                        int N) {
  if (N > table.radius)
    throw MarginInsufficient("homogenized table needs the target ball enumerated", N);
  const int needed = real_radius_floor(gf.f(N)) + N;
  if (table.radius < needed)
    throw MarginInsufficient("homogenization needs gamma*g enumerated for every g in B^N",
                             needed);
  DerivationTable dt;
  dt.two_d = table.two_d();
  const std::int64_t nball = table.ball_size(N);
  dt.values.assign(static_cast<std::size_t>(nball) * dt.two_d, Rat(0));
  for (std::int64_t i = 1; i < nball; ++i) {
    std::vector<Rat> avg = ratio_average(gf, table, counts, mu, i);
    const int len = table.length[static_cast<std::size_t>(i)];
    for (int s = 0; s < dt.two_d; ++s)
      dt.values[static_cast<std::size_t>(i * dt.two_d + s)] =
          avg[static_cast<std::size_t>(s)] * len;
  }
  return dt;
}

SparseRatMat assemble_homogenized_dirac(const DerivationTable& dt, const BallTable& table,
                                        int N) {
  // same assembly; the homogenized table only changes the diagonal weights
  return assemble_dirac(dt, table, N);
}

Condition3Report condition3_check(const GrowthFunction& gf, const BallTable& table,
                                  const GeodesicCounts& counts, const SphereMeasure& mu,
                                  const Elem& g, int max_n) {
  Condition3Report rep;
  rep.g = g;
  rep.g_display = table.oracle->display(g);
  rep.max_n = max_n;
  const int lg = word_length(table, g);
  const int needed = real_radius_floor(gf.f(max_n + lg)) + max_n + lg;
  if (table.radius < needed)
    throw MarginInsufficient("condition (3) needs gamma*g*h enumerated for every tested h",
                             needed);
  const int two_d = table.two_d();
  // cache A_s(x) per element index; h values recur as gh values and back
  std::vector<std::vector<Rat>> cache(static_cast<std::size_t>(table.size()));
  auto averages = [&](std::int64_t idx) -> const std::vector<Rat>& {
    auto& slot = cache[static_cast<std::size_t>(idx)];
    if (slot.empty()) slot = ratio_average(gf, table, counts, mu, idx);
    return slot;
  };
  rep.k_hat = 0;
  for (int n = 1; n <= max_n; ++n) {
    Rat cn = 0;
    for (std::int64_t j = table.sphere_offsets[static_cast<std::size_t>(n)];
         j < table.sphere_offsets[static_cast<std::size_t>(n) + 1]; ++j) {
      Elem gh = table.oracle->multiply(g, table.elements[static_cast<std::size_t>(j)]);
      std::int64_t i = table.index(gh);
      const auto& ah = averages(j);
      const auto& agh = averages(i);
      for (int s = 0; s < two_d; ++s) {
        Rat d = agh[static_cast<std::size_t>(s)] - ah[static_cast<std::size_t>(s)];
        if (d < 0) d = -d;
        d *= n;
        if (d > cn) cn = d;
      }
    }
    rep.C.push_back(cn);
    if (cn > rep.k_hat) rep.k_hat = cn;
  }
  std::vector<std::pair<double, double>> pts;
  for (int n = 1; n <= max_n; ++n) {
    const Rat& cn = rep.C[static_cast<std::size_t>(n - 1)];
    if (cn > 0) pts.emplace_back(std::log(static_cast<double>(n)), std::log(to_double(cn)));
  }
  double mx = 0, my = 0;
  if (pts.size() >= 2) {
    for (auto& [x, y] : pts) {
      mx += x;
      my += y;
    }
    mx /= static_cast<double>(pts.size());
    my /= static_cast<double>(pts.size());
    double num = 0, den = 0;
    for (auto& [x, y] : pts) {
      num += (x - mx) * (y - my);
      den += (x - mx) * (x - mx);
    }
    rep.slope = den == 0 ? 0.0 : num / den;
  } else {
    rep.slope = 0.0;
  }
  rep.verdict = rep.slope > kGrowthSlopeThreshold ? Verdict::GrowthEvidence
                                                  : Verdict::BoundedEvidence;
  return rep;
}

ClassificationReport classify(const GroupSpec& spec, const std::vector<GrowthFunction>& family,
                              int max_n, const std::vector<Elem>& sample_g,
                              const EnumerationBudget& budget) {
  auto oracle = build_oracle(spec);
  ClassificationReport rep;
  rep.group = spec.display();
  for (int s = 0; s < oracle->alphabet().size(); ++s)
    rep.generators.push_back(oracle->alphabet().symbol(s));
  rep.max_n = max_n;
  rep.smallest_passing_lambda = std::numeric_limits<double>::quiet_NaN();

  std::vector<GrowthFunction> ordered = family;
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const GrowthFunction& a, const GrowthFunction& b) {
                     return a.lambda_f < b.lambda_f;
                   });

  // sampled g's must fit in B^{max_n}, which bounds every candidate's margin
  // by floor(f(2 max_n)) + 2 max_n
  for (const auto& gf : ordered) {
    CandidateResult cand;
    cand.f_name = gf.name;
    cand.lambda_f = gf.lambda_f;
    try {
      int radius = real_radius_floor(std::max(0.0, gf.f(2.0 * max_n))) + 2 * max_n;
      BallTable table = enumerate_ball(oracle, radius, budget);
      GeodesicCounts counts = geodesic_counts(table);
      SphereMeasure mu = sphere_measure(table);
      bool all_bounded = true;
      for (const auto& g : sample_g) {
        if (word_length(table, g) > max_n)
          throw UsageError("sampled element longer than max_n");
        Condition3Report r = condition3_check(gf, table, counts, mu, g, max_n);
        if (r.verdict != Verdict::BoundedEvidence) all_bounded = false;
        cand.per_g.push_back(std::move(r));
      }
      cand.passed = all_bounded && !sample_g.empty();
    } catch (const ResourceLimit& e) {
      cand.skipped = true;
      cand.skip_reason = e.what();
    } catch (const EmptySphere& e) {
      cand.skipped = true;
      cand.skip_reason = e.what();
    } catch (const MarginInsufficient& e) {
      cand.skipped = true;
      cand.skip_reason = e.what();
    }
    if (cand.passed && std::isnan(rep.smallest_passing_lambda))
      rep.smallest_passing_lambda = cand.lambda_f;
    rep.candidates.push_back(std::move(cand));
  }

  if (std::isnan(rep.smallest_passing_lambda)) {
    rep.estimate = "inconclusive";
  } else if (rep.smallest_passing_lambda == 0.0) {
    rep.estimate = "A0 evidence";
  } else if (rep.smallest_passing_lambda < 1.0) {
    rep.estimate = "A_lambda evidence (lambda_f = " + shortest(rep.smallest_passing_lambda) + ")";
  } else {
    rep.estimate = "A1 evidence";
  }
  return rep;
}

std::vector<PhaseSurveyEntry> phase_triviality_survey(const GroupSpec& spec,
                                                      const std::vector<GrowthFunction>& family,
                                                      int N,
                                                      const EnumerationBudget& budget) {
  auto oracle = build_oracle(spec);
  std::vector<PhaseSurveyEntry> out;
  for (const auto& gf : family) {
    PhaseSurveyEntry entry;
    entry.f_name = gf.name;
    entry.constant = true;
    try {
      int radius = real_radius_floor(std::max(0.0, gf.f(N))) + N;
      BallTable table = enumerate_ball(oracle, radius, budget);
      GeodesicCounts counts = geodesic_counts(table);
      SphereMeasure mu = sphere_measure(table);
      DerivationTable dt = homogenized_derivations(gf, table, counts, mu, N);
      PhaseField pf = phase_field(dt, table, N);
      entry.constant = pf.constant;
    } catch (const ResourceLimit& e) {
      entry.skipped = true;
      entry.skip_reason = e.what();
    } catch (const EmptySphere& e) {
      entry.skipped = true;
      entry.skip_reason = e.what();
    } catch (const MarginInsufficient& e) {
      entry.skipped = true;
      entry.skip_reason = e.what();
    }
    out.push_back(std::move(entry));
  }
  return out;
}

}  // namespace spectriple
