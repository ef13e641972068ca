#include "spectriple/export.hpp"

#include <sstream>

namespace spectriple {

nlohmann::ordered_json ball_json(const BallTable& table, const GeodesicCounts& counts) {
  nlohmann::ordered_json j;
  j["radius"] = table.radius;
  nlohmann::ordered_json sizes = nlohmann::ordered_json::array();
  for (auto n : sphere_sizes(table)) sizes.push_back(n);
  j["sphere_sizes"] = sizes;
  if (table.oracle->involutive_collapse())
    j["involutive_collapse"] = true;
  nlohmann::ordered_json elems = nlohmann::ordered_json::array();
  const auto& alpha = table.oracle->alphabet();
  for (std::int64_t i = 0; i < table.size(); ++i) {
    nlohmann::ordered_json e;
    e["index"] = i;
    e["length"] = table.length[static_cast<std::size_t>(i)];
    e["normal_form_string"] = table.oracle->display(table.elements[static_cast<std::size_t>(i)]);
    e["p"] = dec(counts.p[static_cast<std::size_t>(i)]);
    nlohmann::ordered_json ps;
    for (int s = 0; s < alpha.size(); ++s)
      ps[std::string(1, alpha.symbol(s))] = dec(counts.p_slot(table, i, s));
    e["p_s"] = ps;
    elems.push_back(std::move(e));
  }
  j["elements"] = elems;
  return j;
}

std::string spectrum_csv(const std::vector<SpectrumRow>& rows) {
  std::ostringstream out;
  out << "g_index,length,r_squared_num,r_squared_den,eigenvalue,multiplicity\n";
  for (const auto& r : rows) {
    out << r.g_index << ',' << r.length << ',' << numerator(r.r_squared).str() << ','
        << denominator(r.r_squared).str() << ',' << shortest(r.eigenvalue) << ','
        << r.multiplicity << '\n';
  }
  return out.str();
}

std::string operator_dump(const SparseRatMat& m) {
  std::ostringstream out;
  out << "dim " << m.rows() << "\n";
  for (std::int64_t r = 0; r < m.rows(); ++r)
    for (const auto& [c, v] : m.row(r)) out << r << ' ' << c << ' ' << frac(v) << '\n';
  return out.str();
}

nlohmann::ordered_json classification_json(const ClassificationReport& report) {
  nlohmann::ordered_json j;
  j["group"] = report.group;
  std::string s;
  for (char c : report.generators) {
    if (!s.empty()) s.push_back(',');
    s.push_back(c);
  }
  j["S"] = s;
  j["max_n"] = report.max_n;
  nlohmann::ordered_json cands = nlohmann::ordered_json::array();
  for (const auto& c : report.candidates) {
    nlohmann::ordered_json cj;
    cj["f_name"] = c.f_name;
    cj["lambda_f"] = shortest(c.lambda_f);
    if (c.skipped) {
      cj["skipped"] = true;
      cj["skip_reason"] = c.skip_reason;
    } else {
      nlohmann::ordered_json per_g = nlohmann::ordered_json::array();
      for (const auto& r : c.per_g) {
        nlohmann::ordered_json gj;
        gj["g"] = r.g_display.empty() ? r.g : r.g_display;
        nlohmann::ordered_json maxima = nlohmann::ordered_json::array();
        for (const auto& m : r.C) maxima.push_back(frac(m));
        gj["per_sphere_max"] = maxima;
        gj["k_hat"] = frac(r.k_hat);
        gj["slope"] = shortest(r.slope);
        gj["verdict"] = verdict_name(r.verdict);
        per_g.push_back(std::move(gj));
      }
      cj["condition3"] = per_g;
      cj["passed"] = c.passed;
    }
    cands.push_back(std::move(cj));
  }
  j["candidates"] = cands;
  j["estimate"] = report.estimate;
  return j;
}

nlohmann::ordered_json check_entry(const std::string& name, const std::string& status,
                                   const std::string& margin) {
  nlohmann::ordered_json j;
  j["name"] = name;
  j["status"] = status;
  j["margin"] = margin;
  return j;
}

}  // namespace spectriple
