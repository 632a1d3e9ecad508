#pragma once

#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "diracfam/bar_homology.hpp"
#include "diracfam/char_classes.hpp"
#include "diracfam/family_index.hpp"
#include "diracfam/spectral_flow.hpp"
#include "diracfam/torus_dirac.hpp"

namespace diracfam {

using json = nlohmann::ordered_json;

inline std::string float_17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

inline json twist_to_json(const TwistParameter& t) {
  json arr = json::array();
  for (const auto& c : t.c) arr.push_back(format_rational(c));
  return arr;
}

inline json spectrum_to_json(const SpectrumSlice& s) {
  json out;
  out["n"] = s.n;
  out["c"] = twist_to_json(s.twist);
  out["K"] = s.K;
  out["completeness_radius"] = format_rational(s.completeness_radius);
  json entries = json::array();
  for (const auto& e : s.entries) entries.push_back({e.value(), e.multiplicity});
  out["entries"] = entries;
  return out;
}

inline std::string spectrum_to_csv(const SpectrumSlice& s) {
  std::string c_cell;
  for (std::size_t j = 0; j < s.twist.c.size(); ++j) {
    if (j) c_cell += ";";
    c_cell += format_rational(s.twist.c[j]);
  }
  std::ostringstream out;
  out << "n,c,K,completeness_radius,lambda,multiplicity\n";
  for (const auto& e : s.entries)
    out << s.n << "," << c_cell << "," << s.K << "," << format_rational(s.completeness_radius)
        << "," << float_17(e.value()) << "," << e.multiplicity << "\n";
  return out.str();
}

inline std::string spectrum_to_table(const SpectrumSlice& s) {
  std::ostringstream out;
  out << "spectrum  n=" << s.n << "  c=(";
  for (std::size_t j = 0; j < s.twist.c.size(); ++j)
    out << (j ? ", " : "") << format_rational(s.twist.c[j]);
  out << ")  K=" << s.K << "  complete within |lambda| <= "
      << format_rational(s.completeness_radius) << "\n";
  out << "  lambda                     multiplicity\n";
  for (const auto& e : s.entries) {
    std::string v = float_17(e.value());
    out << "  " << v << std::string(v.size() < 27 ? 27 - v.size() : 1, ' ')
        << e.multiplicity << "\n";
  }
  return out.str();
}

// Accepts either a bare vertex list or {"vertices": [...], "closed": bool}.
// Coordinates may be rational strings, integers, or floats (taken exactly).
inline ParamPath path_from_json(const nlohmann::json& j) {
  const nlohmann::json* verts = &j;
  bool closed = false;
  if (j.is_object()) {
    if (!j.contains("vertices")) throw std::invalid_argument("path: missing \"vertices\"");
    for (const auto& [key, value] : j.items()) {
      (void)value;
      if (key != "vertices" && key != "closed")
        throw std::invalid_argument("path: unknown key \"" + key + "\"");
    }
    verts = &j.at("vertices");
    closed = j.value("closed", false);
  }
  if (!verts->is_array()) throw std::invalid_argument("path: vertices must be an array");

  std::vector<std::vector<Rational>> vertices;
  for (const auto& vj : *verts) {
    if (!vj.is_array()) throw std::invalid_argument("path: each vertex must be an array");
    std::vector<Rational> v;
    for (const auto& xj : vj) {
      if (xj.is_string())
        v.push_back(parse_rational(xj.get<std::string>()));
      else if (xj.is_number_integer())
        v.push_back(Rational(xj.get<long long>()));
      else if (xj.is_number_float())
        v.push_back(rational_from_double(xj.get<double>()));
      else
        throw std::invalid_argument("path: coordinate must be a string or number");
    }
    vertices.push_back(std::move(v));
  }
  return ParamPath(std::move(vertices), closed);
}

inline json exterior_to_json(const ExteriorElement& e) {
  json terms = json::array();
  for (const auto& [m, c] : e.terms()) {
    std::string mono = e.render_monomial(m);
    terms.push_back({{"monomial", mono.empty() ? "1" : mono},
                     {"coefficient", format_rational(c)},
                     {"degree", m.degree}});
  }
  json out;
  out["terms"] = terms;
  out["rendered"] = e.to_string();
  return out;
}

inline json index_report_to_json(const IndexFormulaReport& r) {
  json out;
  out["description"] = r.description;
  out["element"] = exterior_to_json(r.element);
  out["rank_part"] = format_rational(r.rank_part);
  out["integral"] = r.integral;
  return out;
}

inline json family_index_to_json(const FamilyIndexReport& r) {
  json jumps = json::array();
  for (const auto& jp : r.jump_points) {
    json loc = json::array();
    for (const auto& x : jp.location) loc.push_back(format_rational(x));
    jumps.push_back({{"location", loc}, {"modes", jp.modes}});
  }
  json out;
  out["n"] = r.n;
  out["K"] = r.K;
  out["radius"] = r.radius;
  out["samples"] = r.samples;
  out["jump_points"] = jumps;
  out["local_degrees"] = r.local_degrees;
  out["total_c1"] = r.total_c1;
  out["convention"] = r.convention;
  return out;
}

inline json bar_report_to_json(const CupForm& cup, const BarRanks& ranks,
                               const NonvanishingReport& nv) {
  json witnesses = json::array();
  for (std::size_t i = 0; i < nv.witness_degrees.size(); ++i)
    witnesses.push_back(
        {{"degree", nv.witness_degrees[i]}, {"representative", nv.representatives[i]}});
  json out;
  out["betti"] = cup.betti();
  out["cup_form"] = format_cup_form(cup);
  out["ranks"] = {ranks.even, ranks.odd};
  out["survivors"] = ranks.survivors;
  out["nonvanishing"] = nv.nonvanishing;
  out["witnesses"] = witnesses;
  return out;
}

}  // namespace diracfam
