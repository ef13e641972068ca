#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spectriple/cayley.hpp"
#include "spectriple/clifford.hpp"
#include "spectriple/sparse.hpp"

namespace spectriple {

/// Exact rational derivation values d_s(g) = (p_s(g)/p(g)) * l(g), flattened
/// as values[g_index * two_d + slot]. The homogenized construction fills the
/// same shape.
struct DerivationTable {
  int two_d = 0;
  std::vector<Rat> values;

  std::int64_t size() const { return static_cast<std::int64_t>(values.size()) / two_d; }
  const Rat& at(std::int64_t idx, int slot) const {
    return values[static_cast<std::size_t>(idx * two_d + slot)];
  }
  /// r(g)^2 = sum_s d_s(g)^2.
  Rat r_squared(std::int64_t idx) const;
};

DerivationTable derivation_table(const GeodesicCounts& counts, const BallTable& table);

/// The truncated Dirac operator D = sum_s c_s tensor d_s on the basis
/// (mask, g) with global index g_index * 2^{two_d} + mask, restricted to
/// l(g) <= N. Sparse, symmetric, exact.
SparseRatMat assemble_dirac(const DerivationTable& dt, const BallTable& table, int N);

/// gamma tensor I on the same basis.
SparseRatMat assemble_grading(const BallTable& table, int two_d, int N);

struct SquareCheckReport {
  bool diagonal;
  bool matches;  // D*D == I tensor sum_s d_s^2, entrywise exact
  std::int64_t mismatches;
};

SquareCheckReport square_check(const SparseRatMat& D, const DerivationTable& dt,
                               const BallTable& table, int N);

/// One spectral line of the closed-form spectrum: D restricted to the fiber
/// of g is r(g) times a Clifford symmetry, so its eigenvalues are +-r(g) with
/// equal multiplicities 2^{two_d - 1} (a single 0 line of multiplicity
/// 2^{two_d} when r = 0).
struct SpectrumRow {
  std::int64_t g_index;
  int length;
  Rat r_squared;
  double eigenvalue;
  std::int64_t multiplicity;
};

std::vector<SpectrumRow> spectrum(const DerivationTable& dt, const BallTable& table, int N);

struct SphereMinRow {
  int n;
  Rat min_r_squared;
  Rat bound;  // (n / two_d)^2
  bool ok;    // min_r_squared >= bound
  std::int64_t argmin;
  std::vector<std::int64_t> equality_cases;  // g with r^2 == bound exactly
};

struct ResolventReport {
  std::vector<SphereMinRow> rows;  // n = 1..max_n
  bool all_ok;
  std::vector<std::int64_t> violations;
};

/// Per-sphere minimum of r(g)^2 against the compactness bound (n/2d)^2.
/// Streams r^2 from the counts; no derivation table is materialized.
ResolventReport resolvent_growth_check(const BallTable& table, const GeodesicCounts& counts,
                                       int max_n);

/// Direction field of the Dirac phase: for g != e the fiber of D is r(g)
/// times Clifford multiplication by the unit vector u(g) = (d_s(g))_s / r(g),
/// stored as the rational vector plus r^2. The truncation's phase verdict is
/// "trivial" iff the direction is constant over all g != e (exact
/// proportionality test on the rational vectors).
struct PhaseField {
  std::vector<std::vector<Rat>> direction;  // per ball index; empty vector at e
  std::vector<Rat> r_squared;
  bool constant;
  std::int64_t witness_a = -1, witness_b = -1;  // non-proportional pair when !constant
  /// (sum_s d_s(g) c_s)^2 == r(g)^2 I on every fiber, i.e. c_{u(g)}^2 = I.
  bool fiber_square_identity;
};

PhaseField phase_field(const DerivationTable& dt, const BallTable& table, int N);

struct IndexReport {
  std::int64_t dim_even, dim_odd;
  std::int64_t rank_plus, rank_minus;
  std::int64_t ker_plus, ker_minus;
  std::int64_t index;
};

/// Exact kernel dimensions of the even->odd block D_+ (and its adjoint) via
/// rational rank; index = dim ker D_+ - dim ker D_-.
IndexReport index_d_plus(const SparseRatMat& D, int two_d);

struct HeatTrace {
  double t;
  std::vector<double> partial_sums;  // T_n(t), n = 0..max_n
  std::vector<double> increments;    // sphere-n contribution
};

/// T_N(t) = 2^{2d} * sum_{l(g)<=N} exp(-t r(g)^2), streamed per sphere.
/// t <= 0 is rejected (UsageError).
HeatTrace heat_trace(const BallTable& table, const GeodesicCounts& counts, double t, int max_n);
HeatTrace heat_trace(const DerivationTable& dt, const BallTable& table, double t, int max_n);

/// [D, I tensor u_g] on the truncation. u_g is the truncated left translation
/// e_h -> e_{gh}; columns whose translate gh leaves the ball are excluded
/// from norm estimates (their commutator columns vanish identically).
struct CommutatorReport {
  Elem g;
  SparseRatMat matrix;  // direct product route D*U - U*D
  std::int64_t interior_columns, excluded_columns;
  /// Exact interior norm: the fibers are orthogonal Clifford multiples, so
  /// ||[D,u_g]||^2 = max over interior h of sum_s (d_s(gh) - d_s(h))^2.
  Rat interior_norm_squared;
  double norm_estimate;  // power iteration on the interior columns
};

CommutatorReport commutator(const DerivationTable& dt, const BallTable& table, int N,
                            const Elem& g);

/// Entrywise closed form: coefficient (d_s(gh) - d_s(h)) on the Clifford
/// c_s entry from fiber h to fiber gh, columns with gh in the ball only.
SparseRatMat commutator_closed_form(const DerivationTable& dt, const BallTable& table, int N,
                                    const Elem& g);

/// I tensor u_g truncated to B^N (partial permutation).
SparseRatMat group_translation(const BallTable& table, int two_d, int N, const Elem& g);

enum class Verdict { BoundedEvidence, GrowthEvidence };

struct ClassCReport {
  Elem g;
  int max_n;
  std::vector<Rat> M;  // M_n for n = 1..max_n
  Rat k_hat;           // max over n
  double slope;        // least squares of log M_n vs log n over M_n > 0
  Verdict verdict;
};

/// M_n = max over l(h) = n and slots s of l(h) * |p_s(gh)/p(gh) - p_s(h)/p(h)|.
/// Requires table radius >= max_n + l(g) so every gh is enumerated
/// (MarginInsufficient otherwise). Empirical evidence, never a proof.
ClassCReport class_c_estimate(const BallTable& table, const GeodesicCounts& counts,
                              const Elem& g, int max_n);

/// |p_s(gh)/p(gh) - p_s(h)/p(h)| for one (g, h, s).
Rat ratio_defect(const BallTable& table, const GeodesicCounts& counts, const Elem& g,
                 const Elem& h, int slot);

/// Growth verdict threshold shared by class_c_estimate and condition3_check.
inline constexpr double kGrowthSlopeThreshold = 0.1;

const char* verdict_name(Verdict v);

}  // namespace spectriple
