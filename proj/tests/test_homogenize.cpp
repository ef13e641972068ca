#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include "spectriple/group.hpp"
#include "spectriple/homogenize.hpp"

using namespace spectriple;

namespace {

Elem elem_of(const GroupOracle& o, const std::string& word) {
  return o.normal_form(parse_word(o.alphabet(), word));
}

struct Fixture {
  std::shared_ptr<const GroupOracle> oracle;
  BallTable table;
  GeodesicCounts counts;
  SphereMeasure mu;

  explicit Fixture(const std::string& group, int radius)
      : oracle(build_oracle(parse_group(group))),
        table(enumerate_ball(oracle, radius)),
        counts(geodesic_counts(table)),
        mu(sphere_measure(table)) {}
};

std::vector<double> unit_grid(int n) {
  std::vector<double> g;
  for (int i = 0; i <= n; ++i) g.push_back(i);
  return g;
}

}  // namespace

TEST_CASE("sphere measure normalizes each sphere to mass 2^-(n+1)") {
  Fixture f("Z2", 8);
  CHECK(f.mu.weight(0) == Rat(1, 2));
  CHECK(f.mu.weight(1) == Rat(1, 16));   // 4 elements, mass 1/4
  CHECK(f.mu.weight(2) == Rat(1, 64));   // 8 elements, mass 1/8
  CHECK(f.mu.weight(3) == Rat(1, 192));  // 12 elements, mass 1/16
  for (int n = 0; n <= 8; ++n) {
    Rat expect = Rat(1) - Rat(1, Int(1) << (n + 1));
    CHECK(f.mu.ball(n) == expect);
  }
}

TEST_CASE("sphere measure beats the 1 - 1/n tail bound on log-size balls") {
  Fixture f("F2", 7);
  for (int n = 1; n <= 128; ++n) {
    int depth = static_cast<int>(std::floor(std::log2(static_cast<double>(n))));
    Rat lhs = f.mu.ball(depth);
    CHECK(lhs >= Rat(1) - Rat(1, n));
  }
}

TEST_CASE("finite groups run out of spheres") {
  auto oracle = build_oracle(parse_group("C6"));
  BallTable t = enumerate_ball(oracle, 5);
  try {
    sphere_measure(t);
    FAIL("expected EmptySphere");
  } catch (const EmptySphere& e) {
    CHECK(e.sphere() == 4);  // diameter of C6 is 3
  }
}

TEST_CASE("profile admissibility validation") {
  GrowthFunction d = default_f();
  CHECK(d.name == "default");
  CHECK(d.lambda_f == 1.0);
  CHECK(d.f(0.0) == 0.0);
  CHECK(d.f(1.0) == 2.0);  // 1 + log2(2)
  CHECK(d.f(3.0) == 5.0);  // 3 + log2(4)
  GrowthValidation v = validate_growth_function(d, unit_grid(64));
  CHECK(v.ok);
  CHECK(v.violations.empty());

  GrowthFunction z = zero_f();
  CHECK(z.zero);
  CHECK(z.lambda_f == 0.0);
  CHECK(validate_growth_function(z, unit_grid(64)).ok);

  // a convex profile violates the concavity requirement
  GrowthFunction bad;
  bad.name = "square";
  bad.lambda_f = 1.0;
  bad.f = [](double x) { return x * x; };
  bad.fprime = [](double x) { return 2 * x; };
  GrowthValidation bv = validate_growth_function(bad, unit_grid(16));
  CHECK_FALSE(bv.ok);
  CHECK_FALSE(bv.violations.empty());

  // nonzero at the origin
  GrowthFunction off;
  off.name = "offset";
  off.lambda_f = 0.0;
  off.f = [](double) { return 1.0; };
  off.fprime = [](double) { return 0.0; };
  CHECK_FALSE(validate_growth_function(off, unit_grid(8)).ok);
}

TEST_CASE("profile parser accepts names and table files") {
  CHECK(make_growth_function("zero").zero);
  CHECK(make_growth_function("0").zero);
  CHECK(make_growth_function("default").name == "default");
  CHECK_THROWS_AS(make_growth_function("cubic"), UsageError);

  const char* path = "growth_profile_test.tbl";
  {
    std::ofstream out(path);
    out << "0 0\n2 1\n4 1.5\n";
  }
  GrowthFunction t = make_growth_function(std::string("table:") + path);
  CHECK(t.f(0.0) == 0.0);
  CHECK(t.f(2.0) == 1.0);
  CHECK(t.f(3.0) == 1.25);  // interpolated
  CHECK(t.f(8.0) == 2.5);   // extended by the last slope 1/4
  CHECK(t.lambda_f == 0.25);
  CHECK(validate_growth_function(t, unit_grid(8)).ok);
  std::remove(path);

  CHECK_THROWS_AS(make_growth_function("table:/nonexistent/file"), UsageError);
}

TEST_CASE("zero profile reproduces the plain derivations bit for bit") {
  for (const char* group : {"Z2", "F2", "B21"}) {
    Fixture f(group, 5);
    DerivationTable plain = derivation_table(f.counts, f.table);
    DerivationTable hom = homogenized_derivations(zero_f(), f.table, f.counts, f.mu, 5);
    REQUIRE(hom.two_d == plain.two_d);
    REQUIRE(hom.size() == plain.size());
    for (std::int64_t i = 0; i < hom.size(); ++i)
      for (int s = 0; s < hom.two_d; ++s) CHECK(hom.at(i, s) == plain.at(i, s));

    SparseRatMat D = assemble_dirac(plain, f.table, 4);
    SparseRatMat Dh = assemble_homogenized_dirac(hom, f.table, 4);
    CHECK(D == Dh);
  }
}

TEST_CASE("default profile averages the lattice generator fiber exactly") {
  Fixture f("Z2", 6);
  DerivationTable dt = homogenized_derivations(default_f(), f.table, f.counts, f.mu, 1);
  std::int64_t a = f.table.index("1,0");
  CHECK(dt.at(a, 0) == Rat(6, 79));
  CHECK(dt.at(a, 1) == Rat(21, 158));
  CHECK(dt.at(a, 2) == Rat(29, 316));
  CHECK(dt.at(a, 3) == Rat(29, 316));

  // independent recomputation of the same average: the membership radius for
  // l(g) = 1 is f(1) = 2, so gamma runs over B^2 with normalized mu weights
  const GrowthFunction gf = default_f();
  REQUIRE(std::floor(gf.f(1.0)) == 2.0);
  Rat mass = 0, acc_A = 0;
  Elem ga = f.table.elements[static_cast<std::size_t>(a)];
  for (std::int64_t j = 0; j < f.table.ball_size(2); ++j) {
    Elem x = f.oracle->multiply(f.table.elements[static_cast<std::size_t>(j)], ga);
    std::int64_t xi = f.table.index(x);
    Rat w = f.mu.weight(f.table.length[static_cast<std::size_t>(xi)]);
    mass += w;
    if (f.counts.p[static_cast<std::size_t>(xi)] != 0)
      acc_A += w * Rat(f.counts.p_slot(f.table, xi, 1)) /
               Rat(f.counts.p[static_cast<std::size_t>(xi)]);
  }
  CHECK(dt.at(a, 1) == acc_A / mass);  // l(a) = 1 scales by 1

  // weight-sum identity: the only ratio-free point of B^2 a is gamma = a^-1,
  // so sum_s dtilde_s(a) = l(a) * (1 - mu(e) / mu(B^2 a))
  Rat total = dt.at(a, 0) + dt.at(a, 1) + dt.at(a, 2) + dt.at(a, 3);
  CHECK(total == Rat(31, 79));
  CHECK(total == Rat(1) - f.mu.weight(0) / mass);
}

TEST_CASE("homogenized table demands the margin it needs") {
  Fixture f("Z2", 6);
  // N = 4 with the default profile needs radius floor(f(4)) + 4 = 10 > 6
  CHECK_THROWS_AS(homogenized_derivations(default_f(), f.table, f.counts, f.mu, 4),
                  MarginInsufficient);
  try {
    homogenized_derivations(default_f(), f.table, f.counts, f.mu, 4);
  } catch (const MarginInsufficient& e) {
    CHECK(e.required_radius() == 10);
  }
}

TEST_CASE("homogenized dirac passes the same structural checks") {
  Fixture f("Z2", 10);
  DerivationTable dt = homogenized_derivations(default_f(), f.table, f.counts, f.mu, 4);
  SparseRatMat D = assemble_homogenized_dirac(dt, f.table, 4);
  CHECK(D.is_symmetric());
  SquareCheckReport sq = square_check(D, dt, f.table, 4);
  CHECK(sq.diagonal);
  CHECK(sq.matches);
  SparseRatMat G = assemble_grading(f.table, 4, 4);
  CHECK((D * G + G * D).is_zero());
  IndexReport idx = index_d_plus(D, 4);
  CHECK(idx.ker_plus == 8);
  CHECK(idx.ker_minus == 8);
  CHECK(idx.index == 0);
}

TEST_CASE("condition (3) with the zero profile is the class-C quantity") {
  for (const char* group : {"Z2", "B21"}) {
    Fixture f(group, 8);
    Elem a = elem_of(*f.oracle, "a");
    Condition3Report c3 = condition3_check(zero_f(), f.table, f.counts, f.mu, a, 7);
    ClassCReport cc = class_c_estimate(f.table, f.counts, a, 7);
    REQUIRE(c3.C.size() == cc.M.size());
    for (std::size_t n = 0; n < c3.C.size(); ++n) CHECK(c3.C[n] == cc.M[n]);
    CHECK(c3.k_hat == cc.k_hat);
    CHECK(c3.slope == cc.slope);
    CHECK((c3.verdict == cc.verdict));
  }
}

TEST_CASE("condition (3) stays bounded on the lattice with the default profile") {
  Fixture f("Z2", 13);
  Elem a = elem_of(*f.oracle, "a");
  // max_n = 4: needs radius floor(f(5)) + 5 = floor(5 + log2 6) + 5 = 12
  Condition3Report c3 = condition3_check(default_f(), f.table, f.counts, f.mu, a, 4);
  CHECK(c3.verdict == Verdict::BoundedEvidence);
  CHECK(c3.k_hat < 1);
  CHECK(c3.g_display == "(1,0)");
  CHECK_THROWS_AS(condition3_check(default_f(), f.table, f.counts, f.mu, a, 8),
                  MarginInsufficient);
}

TEST_CASE("classification report ranks profiles by lambda") {
  GroupSpec spec = parse_group("Z2");
  auto oracle = build_oracle(spec);
  std::vector<Elem> samples;
  for (int s = 0; s < 4; ++s) samples.push_back(oracle->generator(s));
  ClassificationReport rep =
      classify(spec, {default_f(), zero_f()}, 3, samples);
  REQUIRE(rep.candidates.size() == 2);
  CHECK(rep.candidates[0].f_name == "zero");  // sorted ascending by lambda
  CHECK(rep.candidates[1].f_name == "default");
  CHECK(rep.candidates[0].passed);
  CHECK(rep.candidates[1].passed);
  CHECK(rep.smallest_passing_lambda == 0.0);
  CHECK(rep.estimate == "A0 evidence");
  for (const auto& cand : rep.candidates)
    for (const auto& per : cand.per_g) CHECK(per.verdict == Verdict::BoundedEvidence);
}

TEST_CASE("classification skips candidates that blow the budget") {
  GroupSpec spec = parse_group("F2");
  auto oracle = build_oracle(spec);
  std::vector<Elem> samples{oracle->generator(0)};
  EnumerationBudget tiny;
  tiny.max_elements = 50;  // the default profile at max_n 3 needs radius 10
  ClassificationReport rep = classify(spec, {zero_f(), default_f()}, 3, samples, tiny);
  REQUIRE(rep.candidates.size() == 2);
  CHECK(rep.candidates[0].skipped);
  CHECK(rep.candidates[1].skipped);
  CHECK_FALSE(rep.candidates[0].skip_reason.empty());
  CHECK(rep.estimate == "inconclusive");
}

TEST_CASE("oversize samples are a usage error") {
  GroupSpec spec = parse_group("Z2");
  auto oracle = build_oracle(spec);
  Elem far = oracle->normal_form(parse_word(oracle->alphabet(), "aaaaaa"));
  CHECK_THROWS_AS(classify(spec, {zero_f()}, 3, {far}), UsageError);
}

TEST_CASE("phase survey reports nontrivial phases for the standard groups") {
  for (const char* group : {"Z2", "F2"}) {
    GroupSpec spec = parse_group(group);
    auto entries = phase_triviality_survey(spec, {zero_f(), default_f()}, 3);
    REQUIRE(entries.size() == 2);
    for (const auto& e : entries) {
      CHECK_FALSE(e.skipped);
      CHECK_FALSE(e.constant);
    }
  }
}
