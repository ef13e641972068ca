// spectriple: construct, truncate, and interrogate spectral triples over
// finitely generated groups from the command line.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "spectriple/export.hpp"

namespace st = spectriple;
using nlohmann::ordered_json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitResource = 2;
constexpr int kExitUnsupported = 3;
constexpr int kExitUsage = 64;

struct CommonOpts {
  std::string group;
  int radius = -1;
  std::string f = "zero";
  std::vector<double> t{1.0};
  std::string out;
  std::int64_t budget_elements = -1;
  double budget_seconds = -1.0;
  std::uint64_t seed = 0;
  int samples = 0;
  int max_n = -1;
  std::vector<std::string> g_words;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool radius_required) {
  auto* g = cmd->add_option("--group", o.group,
                            "group: named form (Z, Z2, F2, C6, B21, products via x and *) "
                            "or a presentation \"<a,b | ...>\"");
  g->required();
  auto* r = cmd->add_option("--radius", o.radius, "ball radius / truncation depth N");
  if (radius_required) r->required();
  cmd->add_option("--budget-elements", o.budget_elements,
                  "abort enumeration beyond this many elements (-1 = unlimited)");
  cmd->add_option("--budget-seconds", o.budget_seconds,
                  "abort enumeration beyond this wall time (-1 = unlimited)");
}

st::EnumerationBudget budget_of(const CommonOpts& o) {
  return {o.budget_elements, o.budget_seconds};
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw st::UsageError("cannot write " + path);
  out << text;
}

void emit_json(const CommonOpts& o, const ordered_json& j, const char* suffix = ".json") {
  std::string text = j.dump(2);
  text.push_back('\n');
  if (o.out.empty())
    std::cout << text;
  else
    write_text(o.out + suffix, text);
}

std::string symbols_of(const st::GroupOracle& oracle) {
  std::string s;
  for (int i = 0; i < oracle.alphabet().size(); ++i) {
    if (!s.empty()) s.push_back(',');
    s.push_back(oracle.alphabet().symbol(i));
  }
  return s;
}

st::GrowthFunction growth_of(const std::string& name) { return st::make_growth_function(name); }

int required_radius(const st::GrowthFunction& gf, int N) {
  if (gf.zero) return N;
  return static_cast<int>(std::floor(std::max(0.0, gf.f(N)))) + N;
}

// ---- ball ----

int cmd_ball(const CommonOpts& o) {
  auto oracle = st::build_oracle(st::parse_group(o.group));
  st::BallTable table = st::enumerate_ball(oracle, o.radius, budget_of(o));
  st::GeodesicCounts counts = st::geodesic_counts(table);
  emit_json(o, st::ball_json(table, counts));
  return kExitPass;
}

// ---- triple ----

int cmd_triple(const CommonOpts& o) {
  for (double t : o.t)
    if (t <= 0) throw st::UsageError("heat trace requires t > 0");
  st::GrowthFunction gf = growth_of(o.f);
  const int N = o.radius;
  auto oracle = st::build_oracle(st::parse_group(o.group));
  st::BallTable table = st::enumerate_ball(oracle, required_radius(gf, N), budget_of(o));
  st::GeodesicCounts counts = st::geodesic_counts(table);
  st::DerivationTable dt;
  if (gf.zero) {
    dt = st::derivation_table(counts, table);
  } else {
    st::SphereMeasure mu = st::sphere_measure(table);
    dt = st::homogenized_derivations(gf, table, counts, mu, N);
  }

  ordered_json checks = ordered_json::array();
  bool failed = false;
  auto push = [&](const std::string& name, bool ok, const std::string& margin) {
    checks.push_back(st::check_entry(name, ok ? "pass" : "fail", margin));
    if (!ok) failed = true;
  };

  st::SparseRatMat D = st::assemble_dirac(dt, table, N);
  st::SparseRatMat G = st::assemble_grading(table, dt.two_d, N);

  push("symmetric", D.is_symmetric(), "0");
  auto sq = st::square_check(D, dt, table, N);
  push("square_diagonal", sq.matches, std::to_string(sq.mismatches));
  push("grading_anticommute", (D * G + G * D).is_zero(), "0");

  // the quadratic lower bound is a theorem for the plain derivations only;
  // for a homogenized table it is reported, not asserted
  st::ResolventReport res = st::resolvent_growth_check(table, counts, std::max(1, N));
  {
    st::Rat worst = -1;
    for (const auto& row : res.rows) {
      st::Rat m = row.min_r_squared - row.bound;
      if (worst == -1 || m < worst) worst = m;
    }
    std::string margin = st::shortest(st::to_double(worst));
    if (gf.zero)
      push("resolvent_bound", res.all_ok, margin);
    else
      checks.push_back(st::check_entry("resolvent_bound_plain", res.all_ok ? "info" : "fail", margin));
  }

  st::IndexReport idx = st::index_d_plus(D, dt.two_d);
  push("index_zero", idx.index == 0,
       std::to_string(idx.ker_plus) + "-" + std::to_string(idx.ker_minus));

  for (double t : o.t) {
    st::HeatTrace h = st::heat_trace(dt, table, t, N);
    bool monotone = true;
    for (double inc : h.increments)
      if (inc < 0) monotone = false;
    push("heat_monotone_t=" + st::shortest(t), monotone, st::shortest(h.partial_sums.back()));
    checks.push_back(st::check_entry("heat_last_increment_t=" + st::shortest(t), "info",
                                     st::shortest(h.increments.back())));
  }

  st::PhaseField pf = st::phase_field(dt, table, N);
  push("phase_fiber_square_identity", pf.fiber_square_identity, "0");
  checks.push_back(
      st::check_entry("phase_nontrivial", "info", pf.constant ? "trivial" : "nontrivial"));

  ordered_json j;
  j["group"] = st::parse_group(o.group).display();
  j["S"] = symbols_of(*oracle);
  j["N"] = N;
  j["f"] = gf.name;
  if (oracle->involutive_collapse()) j["involutive_collapse"] = true;
  j["checks"] = checks;
  emit_json(o, j);

  std::vector<st::SpectrumRow> rows = st::spectrum(dt, table, N);
  if (!o.out.empty()) write_text(o.out + ".csv", st::spectrum_csv(rows));

  return failed ? kExitCheckFailure : kExitPass;
}

// ---- classc ----

int cmd_classc(const CommonOpts& o) {
  auto oracle = st::build_oracle(st::parse_group(o.group));
  st::BallTable table = st::enumerate_ball(oracle, o.radius, budget_of(o));
  st::GeodesicCounts counts = st::geodesic_counts(table);

  std::vector<st::Elem> gs;
  for (int s = 0; s < oracle->alphabet().size(); ++s) gs.push_back(oracle->generator(s));
  for (const auto& w : o.g_words)
    gs.push_back(oracle->normal_form(st::parse_word(oracle->alphabet(), w)));
  if (o.samples > 0) {
    std::mt19937_64 rng(o.seed);
    std::uniform_int_distribution<std::int64_t> pick(1, table.size() - 1);
    for (int i = 0; i < o.samples; ++i)
      gs.push_back(table.elements[static_cast<std::size_t>(pick(rng))]);
  }

  ordered_json reports = ordered_json::array();
  for (const auto& g : gs) {
    int lg = st::word_length(table, g);
    int max_n = o.max_n > 0 ? o.max_n : o.radius - lg;
    if (max_n < 1) continue;
    st::ClassCReport r = st::class_c_estimate(table, counts, g, max_n);
    ordered_json rj;
    rj["g"] = oracle->display(g);
    rj["length"] = lg;
    ordered_json m = ordered_json::array();
    for (const auto& v : r.M) m.push_back(st::frac(v));
    rj["M"] = m;
    rj["k_hat"] = st::frac(r.k_hat);
    rj["slope"] = st::shortest(r.slope);
    rj["verdict"] = st::verdict_name(r.verdict);
    reports.push_back(std::move(rj));
  }

  ordered_json j;
  j["group"] = st::parse_group(o.group).display();
  j["S"] = symbols_of(*oracle);
  j["radius"] = o.radius;
  j["reports"] = reports;
  emit_json(o, j);
  return kExitPass;
}

// ---- homogenize ----

int cmd_homogenize(const CommonOpts& o) {
  st::GrowthFunction gf = growth_of(o.f);
  const int N = o.radius;
  auto oracle = st::build_oracle(st::parse_group(o.group));
  st::BallTable table = st::enumerate_ball(oracle, required_radius(gf, N), budget_of(o));
  st::GeodesicCounts counts = st::geodesic_counts(table);
  st::SphereMeasure mu = st::sphere_measure(table);
  st::DerivationTable dtilde = st::homogenized_derivations(gf, table, counts, mu, N);

  ordered_json j;
  j["group"] = st::parse_group(o.group).display();
  j["S"] = symbols_of(*oracle);
  j["N"] = N;
  j["f"] = gf.name;
  j["lambda_f"] = st::shortest(gf.lambda_f);
  j["enumerated_radius"] = table.radius;

  // partial-sum identity of the sphere measure over the enumerated range
  {
    st::Rat expect = st::Rat(1) - st::Rat(1, st::Int(1) << (table.radius + 1));
    j["measure_partial_sum"] = st::frac(mu.ball(table.radius));
    j["measure_partial_sum_identity"] = (mu.ball(table.radius) == expect);
  }

  ordered_json elems = ordered_json::array();
  const auto& alpha = oracle->alphabet();
  for (std::int64_t i = 0; i < table.ball_size(N); ++i) {
    ordered_json e;
    e["index"] = i;
    e["normal_form_string"] = oracle->display(table.elements[static_cast<std::size_t>(i)]);
    ordered_json vals;
    for (int s = 0; s < alpha.size(); ++s)
      vals[std::string(1, alpha.symbol(s))] = st::frac(dtilde.at(i, s));
    e["dtilde"] = vals;
    elems.push_back(std::move(e));
  }
  j["elements"] = elems;

  bool failed = false;
  ordered_json checks = ordered_json::array();
  auto push = [&](const std::string& name, bool ok, const std::string& margin) {
    checks.push_back(st::check_entry(name, ok ? "pass" : "fail", margin));
    if (!ok) failed = true;
  };

  st::SparseRatMat D = st::assemble_homogenized_dirac(dtilde, table, N);
  st::SparseRatMat G = st::assemble_grading(table, dtilde.two_d, N);
  auto sq = st::square_check(D, dtilde, table, N);
  push("square_diagonal", sq.matches, std::to_string(sq.mismatches));
  push("grading_anticommute", (D * G + G * D).is_zero(), "0");
  st::IndexReport idx = st::index_d_plus(D, dtilde.two_d);
  push("index_zero", idx.index == 0, std::to_string(idx.index));

  if (gf.zero) {
    st::DerivationTable plain = st::derivation_table(counts, table);
    bool same = true;
    for (std::int64_t i = 0; i < table.ball_size(N) && same; ++i)
      for (int s = 0; s < dtilde.two_d; ++s)
        if (dtilde.at(i, s) != plain.at(i, s)) {
          same = false;
          break;
        }
    st::SparseRatMat Dplain = st::assemble_dirac(plain, table, N);
    push("equals_plain_derivations", same, "0");
    push("equals_plain_dirac", D == Dplain, "0");
  }

  j["checks"] = checks;
  emit_json(o, j);
  return failed ? kExitCheckFailure : kExitPass;
}

// ---- classify ----

int cmd_classify(const CommonOpts& o) {
  st::GroupSpec spec = st::parse_group(o.group);
  auto oracle = st::build_oracle(spec);
  const int max_n = o.max_n > 0 ? o.max_n : (o.radius > 0 ? o.radius : 4);

  std::vector<st::GrowthFunction> family;
  std::string rest = o.f;
  while (!rest.empty()) {
    auto comma = rest.find(',');
    family.push_back(growth_of(rest.substr(0, comma)));
    if (comma == std::string::npos) break;
    rest = rest.substr(comma + 1);
  }
  if (family.empty()) throw st::UsageError("--f needs at least one profile");

  std::vector<st::Elem> gs;
  for (int s = 0; s < oracle->alphabet().size(); ++s) gs.push_back(oracle->generator(s));
  for (const auto& w : o.g_words)
    gs.push_back(oracle->normal_form(st::parse_word(oracle->alphabet(), w)));

  st::ClassificationReport rep = st::classify(spec, family, max_n, gs, budget_of(o));
  emit_json(o, st::classification_json(rep));
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral triples over finitely generated groups"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "",
                 "key=value config file; keys live under a [subcommand] section and "
                 "explicit flags win");

  CommonOpts ball_o, triple_o, classc_o, homog_o, classify_o;

  CLI::App* ball = app.add_subcommand("ball", "enumerate a Cayley ball with geodesic counts");
  add_common(ball, ball_o, true);
  ball->add_option("--out", ball_o.out, "output path prefix (stdout when omitted)");

  CLI::App* triple = app.add_subcommand("triple", "assemble the truncated Dirac operator and run checks");
  add_common(triple, triple_o, true);
  triple->add_option("--f", triple_o.f, "homogenization profile: zero | default | table:<path>");
  triple->add_option("--t", triple_o.t, "heat trace times (t > 0)");
  triple->add_option("--out", triple_o.out, "output prefix; writes <prefix>.json and <prefix>.csv");

  CLI::App* classc = app.add_subcommand("classc", "empirical class-C diagnostics");
  add_common(classc, classc_o, true);
  classc->add_option("--g", classc_o.g_words, "extra test elements, as words over the alphabet");
  classc->add_option("--n", classc_o.max_n, "max sphere (default radius - l(g))");
  classc->add_option("--samples", classc_o.samples, "extra random sample elements");
  classc->add_option("--seed", classc_o.seed, "RNG seed for sampling");
  classc->add_option("--out", classc_o.out, "output path prefix (stdout when omitted)");

  CLI::App* homog = app.add_subcommand("homogenize", "homogenized derivations and Dirac checks");
  add_common(homog, homog_o, true);
  homog->add_option("--f", homog_o.f, "profile: zero | default | table:<path>")->default_val("default");
  homog->add_option("--out", homog_o.out, "output path prefix (stdout when omitted)");

  CLI::App* classify = app.add_subcommand("classify", "condition-(3) classification experiments");
  add_common(classify, classify_o, false);
  classify_o.f = "zero,default";
  classify->add_option("--f", classify_o.f, "comma list of profiles (default zero,default)");
  classify->add_option("--n", classify_o.max_n, "condition-(3) sphere depth");
  classify->add_option("--g", classify_o.g_words, "extra test elements");
  classify->add_option("--seed", classify_o.seed, "RNG seed for sampling");
  classify->add_option("--out", classify_o.out, "output path prefix (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (app.got_subcommand(ball)) return cmd_ball(ball_o);
    if (app.got_subcommand(triple)) return cmd_triple(triple_o);
    if (app.got_subcommand(classc)) return cmd_classc(classc_o);
    if (app.got_subcommand(homog)) return cmd_homogenize(homog_o);
    if (app.got_subcommand(classify)) return cmd_classify(classify_o);
  } catch (const st::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const st::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const st::NotInBall& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const st::MarginInsufficient& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const st::EmptySphere& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return kExitUnsupported;
  } catch (const st::ResourceLimit& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const st::CompletionExceeded& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailure;
  }
  return kExitUsage;
}
