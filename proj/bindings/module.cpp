// pybind11 surface: thin wrappers over the library, exchanging JSON strings
// and plain scalars so the python side stays dependency-free.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include "spectriple/export.hpp"
#include "spectriple/group.hpp"
#include "spectriple/homogenize.hpp"

namespace py = pybind11;
using namespace spectriple;

namespace {

struct Session {
  std::shared_ptr<const GroupOracle> oracle;
  BallTable table;
  GeodesicCounts counts;
};

Session make_session(const std::string& group, int radius) {
  Session s;
  s.oracle = build_oracle(parse_group(group));
  s.table = enumerate_ball(s.oracle, radius);
  s.counts = geodesic_counts(s.table);
  return s;
}

Elem elem_of(const GroupOracle& o, const std::string& word) {
  return o.normal_form(parse_word(o.alphabet(), word));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "spectral triples over finitely generated groups (compiled core)";

  m.def(
      "ball_json",
      [](const std::string& group, int radius) {
        Session s = make_session(group, radius);
        return ball_json(s.table, s.counts).dump();
      },
      py::arg("group"), py::arg("radius"),
      "Ball enumeration with geodesic counts, as a JSON string.");

  m.def(
      "sphere_sizes",
      [](const std::string& group, int radius) {
        Session s = make_session(group, radius);
        return sphere_sizes(s.table);
      },
      py::arg("group"), py::arg("radius"), "Sphere cardinalities for n = 0..radius.");

  m.def(
      "word_length",
      [](const std::string& group, int radius, const std::string& word) {
        Session s = make_session(group, radius);
        return word_length(s.table, elem_of(*s.oracle, word));
      },
      py::arg("group"), py::arg("radius"), py::arg("word"),
      "Geodesic word length of the element spelled by `word`.");

  m.def(
      "derivations",
      [](const std::string& group, int radius, const std::string& word) {
        Session s = make_session(group, radius);
        DerivationTable dt = derivation_table(s.counts, s.table);
        std::int64_t i = s.table.index(elem_of(*s.oracle, word));
        std::vector<std::string> out;
        for (int slot = 0; slot < s.table.two_d(); ++slot) out.push_back(frac(dt.at(i, slot)));
        return out;
      },
      py::arg("group"), py::arg("radius"), py::arg("word"),
      "Exact derivation values d_s(g) as num/den strings, slot order.");

  m.def(
      "spectrum_csv",
      [](const std::string& group, int radius, int N) {
        Session s = make_session(group, radius);
        DerivationTable dt = derivation_table(s.counts, s.table);
        return spectrum_csv(spectrum(dt, s.table, N));
      },
      py::arg("group"), py::arg("radius"), py::arg("N"),
      "Closed-form spectrum of the truncated Dirac operator, as CSV text.");

  m.def(
      "heat_partial_sums",
      [](const std::string& group, int radius, double t, int max_n) {
        Session s = make_session(group, radius);
        return heat_trace(s.table, s.counts, t, max_n).partial_sums;
      },
      py::arg("group"), py::arg("radius"), py::arg("t"), py::arg("max_n"),
      "Heat-trace partial sums T_n(t) for n = 0..max_n.");

  m.def(
      "dirac_index",
      [](const std::string& group, int radius, int N) {
        Session s = make_session(group, radius);
        DerivationTable dt = derivation_table(s.counts, s.table);
        IndexReport r = index_d_plus(assemble_dirac(dt, s.table, N), s.table.two_d());
        return std::make_tuple(r.ker_plus, r.ker_minus, r.index);
      },
      py::arg("group"), py::arg("radius"), py::arg("N"),
      "(dim ker D_+, dim ker D_-, index) of the truncated Dirac operator.");

  m.def(
      "square_check_ok",
      [](const std::string& group, int radius, int N) {
        Session s = make_session(group, radius);
        DerivationTable dt = derivation_table(s.counts, s.table);
        SquareCheckReport r = square_check(assemble_dirac(dt, s.table, N), dt, s.table, N);
        return r.diagonal && r.matches;
      },
      py::arg("group"), py::arg("radius"), py::arg("N"),
      "True iff D^2 equals I tensor sum_s d_s^2 exactly.");

  m.def(
      "phase_constant",
      [](const std::string& group, int radius, int N) {
        Session s = make_session(group, radius);
        DerivationTable dt = derivation_table(s.counts, s.table);
        return phase_field(dt, s.table, N).constant;
      },
      py::arg("group"), py::arg("radius"), py::arg("N"),
      "True iff the Dirac phase direction field is constant on the ball.");

  m.def(
      "class_c_json",
      [](const std::string& group, int radius, const std::string& word, int max_n) {
        Session s = make_session(group, radius);
        Elem g = elem_of(*s.oracle, word);
        ClassCReport r = class_c_estimate(s.table, s.counts, g, max_n);
        nlohmann::ordered_json j;
        j["g"] = s.oracle->display(g);
        j["length"] = word_length(s.table, g);
        j["max_n"] = r.max_n;
        j["M"] = nlohmann::ordered_json::array();
        for (const Rat& m_n : r.M) j["M"].push_back(frac(m_n));
        j["k_hat"] = frac(r.k_hat);
        j["slope"] = r.slope;
        j["verdict"] = verdict_name(r.verdict);
        return j.dump();
      },
      py::arg("group"), py::arg("radius"), py::arg("word"), py::arg("max_n"),
      "Commutator-growth estimate M_n for one g, as a JSON string.");

  m.def(
      "ball_mass",
      [](const std::string& group, int radius, int n) {
        Session s = make_session(group, radius);
        return frac(sphere_measure(s.table).ball(n));
      },
      py::arg("group"), py::arg("radius"), py::arg("n"),
      "Sphere-uniform measure of the ball B^n, as a num/den string.");

  m.def(
      "classify_json",
      [](const std::string& group, const std::string& profiles, int max_n,
         std::int64_t budget_elements) {
        GroupSpec spec = parse_group(group);
        auto oracle = build_oracle(spec);
        std::vector<GrowthFunction> family;
        std::string item;
        for (std::size_t pos = 0; pos <= profiles.size(); ++pos) {
          if (pos == profiles.size() || profiles[pos] == ',') {
            if (!item.empty()) family.push_back(make_growth_function(item));
            item.clear();
          } else {
            item += profiles[pos];
          }
        }
        std::vector<Elem> sample;
        for (int slot = 0; slot < oracle->alphabet().size(); ++slot)
          sample.push_back(oracle->generator(slot));
        EnumerationBudget budget;
        budget.max_elements = budget_elements;
        return classification_json(classify(spec, family, max_n, sample, budget)).dump();
      },
      py::arg("group"), py::arg("profiles") = "zero,default", py::arg("max_n") = 3,
      py::arg("budget_elements") = std::int64_t{-1},
      "Homogenization-family classification over the generators, as a JSON string.");
}
