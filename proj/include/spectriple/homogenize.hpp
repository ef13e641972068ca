#pragma once

#include <functional>
#include <string>
#include <vector>

#include "spectriple/dirac.hpp"

namespace spectriple {

/// Sphere-uniform probability measure: every g on sphere n has weight
/// mu_n = 1 / (#S^n * 2^{n+1}), so sphere n carries total mass 2^{-(n+1)}.
/// Construction throws EmptySphere for finite groups past their diameter.
struct SphereMeasure {
  int radius = 0;
  std::vector<Rat> element_weight;  // per length 0..radius
  std::vector<Rat> ball_mass;       // partial sums over spheres 0..n

  const Rat& weight(int length) const { return element_weight[static_cast<std::size_t>(length)]; }
  const Rat& ball(int n) const { return ball_mass[static_cast<std::size_t>(n)]; }
};

SphereMeasure sphere_measure(const BallTable& table);

/// An admissible homogenization profile f with its derivative and declared
/// asymptotic slope lambda_f. Radii are real-valued: gamma ranges over
/// l(gamma) <= f(l(g)) evaluated in binary64.
struct GrowthFunction {
  std::string name;
  double lambda_f = 0.0;
  std::function<double(double)> f;
  std::function<double(double)> fprime;
  bool zero = false;  // the f = 0 degenerate profile
};

GrowthFunction zero_f();
/// f(x) = x + log2(x + 1), f'(x) = 1 + 1/((x+1) ln 2), lambda_f = 1.
GrowthFunction default_f();
/// Parse a CLI profile: "zero", "default", or "table:<path>" with whitespace
/// separated "x f(x)" pairs (piecewise linear, extended by the last slope).
GrowthFunction make_growth_function(const std::string& spec);

struct GrowthValidation {
  bool ok;
  std::vector<std::string> violations;
  double lambda_at_grid_end;
};

/// Grid checks of the admissibility conditions: f(0) = 0, f >= 0, f' >= 0,
/// f'' <= 0 (tolerance 1e-12), and consistency of the declared lambda_f with
/// the tail of f' on the grid.
GrowthValidation validate_growth_function(const GrowthFunction& gf,
                                          const std::vector<double>& grid);

/// Homogenized ratio averages and derivations. Membership gamma in B^{f(l)}
/// means l(gamma) <= f(l) with f real-valued; weights are mu(gamma x)
/// normalized by mu(B^{f(l)} x).
DerivationTable homogenized_derivations(const GrowthFunction& gf, const BallTable& table,
                                        const GeodesicCounts& counts, const SphereMeasure& mu,
                                        int N);

/// Identical contract to assemble_dirac, applied to a homogenized table.
SparseRatMat assemble_homogenized_dirac(const DerivationTable& dt, const BallTable& table, int N);

struct Condition3Report {
  Elem g;
  std::string g_display;
  int max_n;
  std::vector<Rat> C;  // C_n for n = 1..max_n
  Rat k_hat;
  double slope;
  Verdict verdict;
};

/// C_n = max over l(h) = n and slots s of l(h) * |A_s(gh) - A_s(h)| where
/// A_s(x) is the mu-weighted average of p_s/p over B^{f(l(x))} x. With f = 0
/// this is exactly the class-C quantity. Requires table radius >=
/// floor(f(max_n + l(g))) + max_n + l(g) (MarginInsufficient otherwise).
Condition3Report condition3_check(const GrowthFunction& gf, const BallTable& table,
                                  const GeodesicCounts& counts, const SphereMeasure& mu,
                                  const Elem& g, int max_n);

struct CandidateResult {
  std::string f_name;
  double lambda_f;
  bool skipped = false;
  std::string skip_reason;
  std::vector<Condition3Report> per_g;
  bool passed = false;  // every sampled g got BoundedEvidence
};

struct ClassificationReport {
  std::string group;
  std::vector<char> generators;
  int max_n;
  std::vector<CandidateResult> candidates;
  double smallest_passing_lambda;  // NaN when nothing passed
  std::string estimate;            // "A0 evidence" | "A_lambda evidence" | "A1 evidence" | "inconclusive"
};

/// Runs condition3_check for each candidate f (ascending lambda_f) over the
/// sample elements; reports the smallest passing lambda_f as an upper-bound
/// estimate for the given generating set only. Candidates whose ball demands
/// exceed the budget are marked skipped, never silently dropped.
ClassificationReport classify(const GroupSpec& spec, const std::vector<GrowthFunction>& family,
                              int max_n, const std::vector<Elem>& sample_g,
                              const EnumerationBudget& budget = {});

struct PhaseSurveyEntry {
  std::string f_name;
  bool constant;
  bool skipped = false;
  std::string skip_reason;
};

/// Phase verdict of the homogenized Dirac for each f; a non-constant
/// direction field for any tested f is evidence against the group lying in
/// the trivial-phase class.
std::vector<PhaseSurveyEntry> phase_triviality_survey(const GroupSpec& spec,
                                                      const std::vector<GrowthFunction>& family,
                                                      int N, const EnumerationBudget& budget = {});

}  // namespace spectriple
