// JSON and CSV interchange.
//
//   group function  {"moduli":[..], "values":[[re,im], ...]}
//   density         {"moduli":[..], "weights":[w or [re,im], ...]}
//   diffraction     {"kind":"diffraction", "moduli":[..], "weights":[w, ...], "tol":t}
//   phase form      {"free_angles":[t or "n/d", ...], "torsion_signs":[+-1, ...], "basis":{...}}
//
// Element indices follow the lexicographic order of coordinates, first
// coordinate most significant.

#ifndef DIFFRAKT_IO_HPP_
#define DIFFRAKT_IO_HPP_

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "density.hpp"
#include "inverse.hpp"
#include "phaseforms.hpp"
#include "process.hpp"
#include "relators.hpp"

namespace diffrakt {

using json = nlohmann::ordered_json;

inline json to_json(const cplx& z) { return json::array({z.real(), z.imag()}); }

inline cplx complex_from_json(const json& j) {
  if (j.is_number())
    return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  fail("expected a number or a [re, im] pair, got " + j.dump());
}

inline FiniteAbelianGroup group_from_json(const json& j, std::size_t cap = FiniteAbelianGroup::default_cap) {
  if (!j.contains("moduli") || !j["moduli"].is_array())
    fail("input needs a \"moduli\" array");
  std::vector<std::int64_t> moduli;
  for (const json& m : j["moduli"]) {
    if (!m.is_number_integer())
      fail("moduli must be integers");
    moduli.push_back(m.get<std::int64_t>());
  }
  return FiniteAbelianGroup(std::move(moduli), cap);
}

inline json element_json(const FiniteAbelianGroup& g, std::size_t idx) { return g.element(idx); }

inline json to_json(const GroupFunction& f) {
  json vals = json::array();
  for (const cplx& z : f.values)
    vals.push_back(to_json(z));
  return {{"moduli", f.group.moduli()}, {"values", vals}};
}

inline GroupFunction function_from_json(const json& j, std::size_t cap = FiniteAbelianGroup::default_cap) {
  FiniteAbelianGroup g = group_from_json(j, cap);
  if (!j.contains("values") || !j["values"].is_array())
    fail("group function needs a \"values\" array");
  std::vector<cplx> v;
  for (const json& x : j["values"])
    v.push_back(complex_from_json(x));
  return GroupFunction(std::move(g), std::move(v));
}

inline json to_json(const Density& rho) {
  json w = json::array();
  if (rho.is_real(0.0))
    for (const cplx& z : rho.weights)
      w.push_back(z.real());
  else
    for (const cplx& z : rho.weights)
      w.push_back(to_json(z));
  return {{"moduli", rho.group.moduli()}, {"weights", w}};
}

inline Density density_from_json(const json& j, std::size_t cap = FiniteAbelianGroup::default_cap) {
  FiniteAbelianGroup g = group_from_json(j, cap);
  if (!j.contains("weights") || !j["weights"].is_array())
    fail("density needs a \"weights\" array");
  std::vector<cplx> w;
  for (const json& x : j["weights"])
    w.push_back(complex_from_json(x));
  return Density(std::move(g), std::move(w));
}

inline json to_json(const PointMeasure& omega) {
  return {{"kind", "diffraction"}, {"moduli", omega.group.moduli()}, {"weights", omega.weights}, {"tol", omega.tol}};
}

inline bool is_diffraction_json(const json& j) { return j.value("kind", std::string()) == "diffraction"; }

/// A diffraction file as is, or the diffraction of a density file.
inline PointMeasure measure_from_json(const json& j, double tol, std::size_t cap = FiniteAbelianGroup::default_cap) {
  if (!is_diffraction_json(j))
    return diffraction(density_from_json(j, cap), tol);
  FiniteAbelianGroup g = group_from_json(j, cap);
  if (!j.contains("weights") || !j["weights"].is_array())
    fail("diffraction needs a \"weights\" array");
  std::vector<double> w;
  for (const json& x : j["weights"]) {
    if (!x.is_number())
      fail("diffraction weights must be real numbers");
    w.push_back(x.get<double>());
  }
  return PointMeasure(std::move(g), std::move(w), j.value("tol", tol));
}

inline json to_json(const BraggSpectrum& s) {
  json e = json::array();
  for (std::size_t k : s.elements)
    e.push_back(element_json(s.group, k));
  return e;
}

inline json to_json(const Turn& t) {
  if (t.is_exact())
    return t.str();
  return t.value();
}

inline Turn turn_from_json(const json& j) {
  if (j.is_number())
    return Turn::approx(j.get<double>());
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    auto slash = s.find('/');
    try {
      if (slash == std::string::npos)
        return Turn::exact(std::stoll(s), 1);
      return Turn::exact(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    } catch (const std::logic_error&) {
      fail("cannot parse angle \"" + s + "\"");
    }
  }
  fail("angles must be numbers or \"n/d\" strings");
}

inline json to_json(const GeneratorBasis& b) {
  json free = json::array(), tors = json::array();
  for (std::size_t k : b.free)
    free.push_back(element_json(b.group, k));
  for (std::size_t k : b.torsion)
    tors.push_back(element_json(b.group, k));
  json spec = json::array();
  for (std::size_t k : b.spectrum)
    spec.push_back(element_json(b.group, k));
  return {{"moduli", b.group.moduli()}, {"spectrum", spec}, {"free", free}, {"torsion", tors}};
}

inline json to_json(const ElementaryPhaseForm& a) {
  json angles = json::array();
  for (const Turn& t : a.free)
    angles.push_back(to_json(t));
  return {{"free_angles", angles}, {"torsion_signs", a.signs}, {"basis", to_json(*a.basis)}};
}

inline ElementaryPhaseForm phase_form_from_json(const json& j, const BasisPtr& basis) {
  std::vector<Turn> angles;
  for (const json& t : j.value("free_angles", json::array()))
    angles.push_back(turn_from_json(t));
  std::vector<int> signs;
  for (const json& s : j.value("torsion_signs", json::array())) {
    if (!s.is_number_integer())
      fail("torsion signs must be +1 or -1");
    signs.push_back(s.get<int>());
  }
  if (j.contains("basis")) {
    const json& b = j["basis"];
    json spec = json::array();
    for (std::size_t k : basis->spectrum)
      spec.push_back(element_json(basis->group, k));
    if (b.value("spectrum", json()) != spec || b.value("moduli", json()) != json(basis->group.moduli()))
      fail("phase form basis does not match the Bragg spectrum");
  }
  return make_elementary(basis, std::move(angles), std::move(signs));
}

inline json to_json(const FSVector& v) {
  return {{"free", v.free}, {"torsion", v.torsion}, {"length", reduced_length(v)}};
}

inline json to_json(const FamilyDescription& fam, const Density& sample) {
  return {{"p", fam.p()},
          {"q", fam.q()},
          {"class_group", fam.class_group.str()},
          {"periodic", fam.periodic},
          {"basis", to_json(*fam.basis)},
          {"sample", to_json(sample)}};
}

inline json to_json(const VerificationReport& r) {
  json checks = json::array();
  for (const Check& c : r.checks)
    checks.push_back({{"name", c.name}, {"residual", c.residual}, {"tol", c.tol}, {"pass", c.passed()}});
  return {{"pass", r.passed()}, {"checks", checks}};
}

inline json to_json(const ProcessModel& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.support().size(); ++i) {
    json vals = json::array();
    for (const cplx& z : m.f[i])
      vals.push_back(to_json(z));
    rows.push_back({{"k", element_json(m.group, m.support()[i])}, {"f", vals}});
  }
  json reps = json::array();
  for (std::size_t x : m.states.representatives)
    reps.push_back(element_json(m.group, x));
  return {{"states", reps}, {"eigenfunctions", rows}};
}

inline json to_json(const RationalDensityReport& r) {
  json v = json::array();
  for (const OrbitViolation& o : r.violations)
    v.push_back({{"k", o.k}, {"j", o.j}});
  return {{"rational", r.is_rational},
          {"support", r.support},
          {"closed", r.closed},
          {"violations", v},
          {"moment_bound", r.moment_bound}};
}

inline json to_json(const CircleFamilyReport& r) {
  json coef = json::array();
  for (const auto& [k, z] : r.coefficients)
    coef.push_back({{"k", k}, {"value", to_json(z)}, {"modulus", std::abs(z)}});
  return {{"window", r.window},
          {"coefficients", coef},
          {"max_modulus_error", r.max_modulus_error},
          {"max_coefficient_error", r.max_phase_error},
          {"pass", r.passed()}};
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    fail("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail("malformed JSON in " + path + ": " + e.what());
  }
}

/// Doubles in CSV cells, shortest round-trip form.
inline std::string csv_number(double x) { return json(x).dump(); }

}  // namespace diffrakt

#endif
