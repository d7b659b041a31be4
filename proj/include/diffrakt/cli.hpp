// Command-line front end.  run() parses arguments, computes the whole
// result, and only then writes it, so failures leave no partial output.
//
// Exit codes: 0 success, 2 invalid input, 3 numerical contract violated,
// 4 resource cap exceeded, 64 usage error.

#ifndef DIFFRAKT_CLI_HPP_
#define DIFFRAKT_CLI_HPP_

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "io.hpp"

namespace diffrakt::cli {

constexpr int exit_ok = 0;
constexpr int exit_invalid = 2;
constexpr int exit_contract = 3;
constexpr int exit_cap = 4;
constexpr int exit_usage = 64;

struct Options {
  std::vector<std::string> in;
  std::string out;
  double tol = default_rel_tol;
  std::int64_t moments = 6;
  std::string format = "json";
  std::size_t samples = 600;
  std::size_t cap = FiniteAbelianGroup::default_cap;
  std::string demo;
};

struct Result {
  std::string text;
  int code = exit_ok;
};

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

inline const std::string& single_input(const Options& o, const char* cmd) {
  if (o.in.size() != 1)
    fail(std::string(cmd) + " needs exactly one --in file");
  return o.in.front();
}

inline void require_json(const Options& o, const char* cmd) {
  if (o.format != "json")
    fail(std::string("csv output is not available for ") + cmd);
}

inline json sqrt_weights(const PointMeasure& omega) {
  json r = json::array();
  for (double w : omega.weights)
    r.push_back(std::sqrt(w));
  return r;
}

inline Result cmd_diffract(const Options& o) {
  Density rho = density_from_json(read_json_file(single_input(o, "diffract")), o.cap);
  PointMeasure omega = diffraction(rho, o.tol);
  BraggSpectrum s = bragg_spectrum(omega, o.tol);
  double wk = wiener_khinchin_residual(rho);
  if (wk > 1e-9)
    fail_contract("Wiener-Khinchin residual " + std::to_string(wk));
  if (o.format == "csv") {
    std::string t = "index,element,omega,bragg\n";
    for (std::size_t k = 0; k < omega.weights.size(); ++k)
      t += std::to_string(k) + ",\"" + omega.group.element_str(k) + "\"," + csv_number(omega[k]) + "," +
           (s.contains(k) ? "1" : "0") + "\n";
    return {t};
  }
  json j = {{"omega", to_json(omega)},
            {"sqrt_omega", sqrt_weights(omega)},
            {"spectrum", to_json(s)},
            {"wiener_khinchin_residual", wk}};
  return {dump(j)};
}

inline Result cmd_autocorr(const Options& o) {
  Density rho = density_from_json(read_json_file(single_input(o, "autocorr")), o.cap);
  GroupFunction gamma = autocorrelation(rho);
  if (o.format == "csv") {
    std::string t = "index,element,re,im\n";
    for (std::size_t x = 0; x < gamma.size(); ++x)
      t += std::to_string(x) + ",\"" + gamma.group.element_str(x) + "\"," + csv_number(gamma.values[x].real()) +
           "," + csv_number(gamma.values[x].imag()) + "\n";
    return {t};
  }
  json j = {{"gamma", to_json(gamma)}, {"gamma_at_zero", to_json(gamma.values[0])}};
  return {dump(j)};
}

inline Result cmd_solve(const Options& o) {
  PointMeasure omega = measure_from_json(read_json_file(single_input(o, "solve")), o.tol, o.cap);
  FamilyDescription fam = solve_family(omega);
  Density sample = density_from_phase(omega, trivial_phase_form(fam.basis));
  PointMeasure check = diffraction(sample, o.tol);
  for (std::size_t k = 0; k < check.weights.size(); ++k)
    if (std::abs(check[k] - omega[k]) > 1e-9 * std::max(1.0, omega.max()))
      fail_contract("solve: sample diffraction differs from the input at " + omega.group.element_str(k));
  if (o.format == "csv") {
    std::string t = "index,element,weight\n";
    for (std::size_t x = 0; x < sample.weights.size(); ++x)
      t += std::to_string(x) + ",\"" + sample.group.element_str(x) + "\"," + csv_number(sample.weights[x].real()) +
           "\n";
    return {t};
  }
  return {dump(to_json(fam, sample))};
}

inline Result cmd_extract(const Options& o) {
  require_json(o, "extract");
  Density rho = density_from_json(read_json_file(single_input(o, "extract")), o.cap);
  PhaseExtraction ex = extract_phase_from_density(rho, o.tol);
  Density back = density_from_phase(ex.omega, ex.a);
  double err = 0;
  for (std::size_t x = 0; x < back.weights.size(); ++x) {
    cplx expect = ex.negated ? -rho.weights[x] : rho.weights[x];
    err = std::max(err, std::abs(back.weights[x] - expect));
  }
  if (err > 1e-9 * std::max(1.0, rho.max_abs()))
    fail_contract("extract: reconstruction differs from the input by " + std::to_string(err));
  json j = {{"omega", to_json(ex.omega)},
            {"phase_form", to_json(ex.a)},
            {"negated", ex.negated},
            {"reconstruction_error", err}};
  return {dump(j)};
}

struct Pair {
  Density rho_a, rho_b;
  PhaseExtraction a, b;
};

inline Pair load_pair(const Options& o, const char* cmd) {
  if (o.in.size() != 2)
    fail(std::string(cmd) + " needs exactly two --in files");
  Pair p;
  p.rho_a = density_from_json(read_json_file(o.in[0]), o.cap);
  p.rho_b = density_from_json(read_json_file(o.in[1]), o.cap);
  require_same_group(p.rho_a.group, p.rho_b.group, cmd);
  p.a = extract_phase_from_density(p.rho_a, o.tol);
  p.b = extract_phase_from_density(p.rho_b, o.tol);
  return p;
}

/// Process moments E[N(1_0)^m] for m = 1..m_max.
inline std::vector<cplx> delta_moments(const ProcessModel& m, std::int64_t m_max) {
  std::vector<cplx> out;
  for (std::int64_t k = 1; k <= m_max; ++k)
    out.push_back(process_moment(m, std::vector<GroupFunction>(static_cast<std::size_t>(k),
                                                               GroupFunction::delta(m.group, 0))));
  return out;
}

inline Result cmd_homometric(const Options& o) {
  require_json(o, "homometric");
  Pair p = load_pair(o, "homometric");
  bool hom = homometric(p.rho_a, p.rho_b, o.tol);
  json j = {{"homometric", hom}};
  if (!hom) {
    j["same_phase_form"] = nullptr;
    j["translation"] = nullptr;
    j["first_divergent_moment"] = nullptr;
    return {dump(j)};
  }
  auto lat = relator_lattice(p.a.a.basis);
  bool same = same_phase_form(p.a.a, p.b.a, lat);
  j["negated"] = {p.a.negated, p.b.negated};
  j["same_phase_form"] = same;
  std::optional<std::size_t> u;
  if (same && p.a.negated == p.b.negated)
    u = find_translation(build_process(p.a.omega, p.a.a), build_process(p.b.omega, p.b.a), lat);
  j["translation"] = u ? json(p.rho_a.group.element(*u)) : json(nullptr);
  auto div = first_divergent_moment(p.a.a, p.b.a, lat, std::min(o.moments, max_enumeration_length));
  j["moments_checked"] = std::min(o.moments, max_enumeration_length);
  j["first_divergent_moment"] = div ? json(*div) : json(nullptr);
  return {dump(j)};
}

inline json moment_table_json(const MomentTable& t) {
  json e = json::array();
  for (const MomentEntry& m : t.entries)
    e.push_back({{"relator", to_json(m.relator)}, {"phase", m.phase.value()}});
  return {{"order", t.order}, {"entries", e}};
}

inline Result cmd_moments(const Options& o) {
  require_json(o, "moments");
  const std::int64_t m_max = o.moments;
  if (m_max < 1)
    fail("--moments must be positive");
  if (o.in.size() == 1) {
    Density rho = density_from_json(read_json_file(o.in[0]), o.cap);
    PhaseExtraction ex = extract_phase_from_density(rho, o.tol);
    auto lat = relator_lattice(ex.a.basis);
    json j = {{"table", moment_table_json(moments(ex.a, lat, m_max))}};
    json conds = json::array();
    for (std::int64_t m = 1; m <= m_max; ++m)
      conds.push_back({{"m", m}, {"holds", moment_condition(ex.a, lat, m)}});
    j["moment_conditions"] = conds;
    return {dump(j)};
  }
  Pair p = load_pair(o, "moments");
  if (!homometric(p.rho_a, p.rho_b, o.tol))
    fail("moments: the two densities are not homometric");
  auto lat = relator_lattice(p.a.a.basis);
  auto div = first_divergent_moment(p.a.a, p.b.a, lat, m_max);
  json rows = json::array();
  ProcessModel ma = build_process(p.a.omega, p.a.a);
  ProcessModel mb = build_process(p.b.omega, p.b.a);
  if (m_max > static_cast<std::int64_t>(max_moment_order))
    fail_cap("moments: process moments are limited to order " + std::to_string(max_moment_order));
  std::vector<cplx> pa = delta_moments(ma, m_max), pb = delta_moments(mb, m_max);
  for (std::int64_t m = 1; m <= m_max; ++m) {
    const cplx x = pa[static_cast<std::size_t>(m - 1)], y = pb[static_cast<std::size_t>(m - 1)];
    rows.push_back({{"m", m},
                    {"phase_moments_equal", !div || *div > m},
                    {"process_moment_a", to_json(x)},
                    {"process_moment_b", to_json(y)},
                    {"process_moments_equal", relative_gap(x, y) <= 1e-8}});
  }
  json j = {{"first_divergent_moment", div ? json(*div) : json(nullptr)}, {"moments", rows}};
  return {dump(j)};
}

inline json relator_report(const PointMeasure& omega, std::int64_t n_max) {
  BraggSpectrum s = bragg_spectrum(omega, omega.tol);
  BasisPtr basis = canonical_basis(s);
  RelatorLattice lat = relator_lattice(basis);
  json gens = json::array();
  for (const FSVector& v : lat.generators)
    gens.push_back(to_json(v));
  PhaseGroup pg = phase_group_structure(lat);
  json j = {{"spectrum", to_json(s)},
            {"basis", to_json(*basis)},
            {"p", basis->p()},
            {"q", basis->q()},
            {"span_order", lat.span.order()},
            {"generators", gens},
            {"class_group", pg.str()}};
  try {
    auto n0 = n_zero(lat, n_max);
    j["n0"] = n0 ? json(*n0) : json(nullptr);
  } catch (const CapError& e) {
    j["n0"] = nullptr;
    j["n0_note"] = e.what();
  }
  CoveringNumber r = covering_number(*basis, lat.span);
  j["covering_number"] = r.r ? json(*r.r) : json(nullptr);
  j["n0_bound"] = r.bound() ? json(*r.bound()) : json(nullptr);
  if (lat.trivial())
    j["summary"] = "Z trivial; unique homometry class";
  else
    j["summary"] = "Z nontrivial; homometry classes form " + pg.str();
  return j;
}

inline Result cmd_relators(const Options& o) {
  require_json(o, "relators");
  PointMeasure omega = measure_from_json(read_json_file(single_input(o, "relators")), o.tol, o.cap);
  return {dump(relator_report(omega, std::min(std::max<std::int64_t>(o.moments, 12), max_enumeration_length)))};
}

inline Result cmd_process_verify(const Options& o) {
  require_json(o, "process-verify");
  json in = read_json_file(single_input(o, "process-verify"));
  PointMeasure omega;
  ElementaryPhaseForm a;
  if (is_diffraction_json(in)) {
    omega = measure_from_json(in, o.tol, o.cap);
    a = trivial_phase_form(canonical_basis(bragg_spectrum(omega, omega.tol)));
  } else {
    PhaseExtraction ex = extract_phase_from_density(density_from_json(in, o.cap), o.tol);
    omega = ex.omega;
    a = ex.a;
  }
  ProcessModel m = build_process(omega, a);
  VerificationReport rep = verify_process(m, relator_lattice(a.basis));
  json j = to_json(rep);
  j["model"] = to_json(m);
  return {dump(j), rep.passed() ? exit_ok : exit_contract};
}

inline Result cmd_gm_check(const Options& o) {
  require_json(o, "gm-check");
  Density rho = density_from_json(read_json_file(single_input(o, "gm-check")), o.cap);
  RationalDensityReport r = gm_rational_check(rho, o.tol);
  if (!r.is_rational)
    fail("gm-check: weights are not rational, the closure criterion does not apply");
  return {dump(to_json(r))};
}

inline std::map<std::int64_t, cplx> circle_input(const json& j) {
  if (!j.contains("K") || !j.contains("a") || !j["K"].is_array() || !j["a"].is_array() ||
      j["K"].size() != j["a"].size())
    fail("circle input needs arrays \"K\" and \"a\" of equal length");
  std::map<std::int64_t, cplx> a;
  for (std::size_t i = 0; i < j["K"].size(); ++i) {
    if (!j["K"][i].is_number_integer())
      fail("K must hold integers");
    if (!a.emplace(j["K"][i].get<std::int64_t>(), complex_from_json(j["a"][i])).second)
      fail("K has a repeated element");
  }
  return a;
}

inline Result cmd_circle_check(const Options& o) {
  require_json(o, "circle-check");
  std::map<std::int64_t, cplx> a;
  if (o.in.empty())
    a = {{1, cplx(0, 1)}, {-1, cplx(0, -1)}};
  else
    a = circle_input(read_json_file(single_input(o, "circle-check")));
  CircleFamilyReport r = circle_family_check(a);
  return {dump(to_json(r)), r.passed() ? exit_ok : exit_contract};
}

// ---- demos ----------------------------------------------------------------

struct DemoReport {
  json checks = json::array();
  bool ok = true;

  void add(const std::string& name, const json& expected, const json& value, bool pass) {
    checks.push_back({{"name", name}, {"expected", expected}, {"value", value}, {"pass", pass}});
    ok = ok && pass;
  }
  void near(const std::string& name, double expected, double value, double tol) {
    add(name, expected, value, std::abs(expected - value) <= tol);
  }
};

inline PointMeasure flat_measure(std::int64_t M) {
  return PointMeasure(FiniteAbelianGroup({M}), std::vector<double>(static_cast<std::size_t>(M), 1.0));
}

inline json weights_json(const Density& d) { return to_json(d)["weights"]; }

inline double max_gap(const Density& x, const std::vector<double>& y) {
  double e = 0;
  for (std::size_t i = 0; i < y.size(); ++i)
    e = std::max(e, std::abs(x.weights[i] - y[i]));
  return e;
}

inline bool diffraction_is(const Density& rho, const PointMeasure& omega) {
  PointMeasure w = diffraction(rho);
  for (std::size_t k = 0; k < w.weights.size(); ++k)
    if (std::abs(w[k] - omega[k]) > 1e-9 * std::max(1.0, omega.max()))
      return false;
  return true;
}

inline json family_summary(DemoReport& r, const FamilyDescription& fam, std::size_t p, std::size_t q,
                           const std::string& group) {
  r.add("free parameters p", p, fam.p(), fam.p() == p);
  r.add("sign parameters q", q, fam.q(), fam.q() == q);
  r.add("phase form group", group, fam.class_group.str(), fam.class_group.str() == group);
  return {{"p", fam.p()}, {"q", fam.q()}, {"class_group", fam.class_group.str()}};
}

inline json demo_m1(DemoReport& r) {
  PointMeasure omega = flat_measure(1);
  FamilyDescription fam = solve_family(omega);
  json j = family_summary(r, fam, 0, 0, "trivial");
  Density rho = fam.sample({}, {});
  r.add("unique solution", json::array({1.0}), weights_json(rho), max_gap(rho, {1.0}) < 1e-12);
  r.add("diffraction of the solution", true, diffraction_is(rho, omega), diffraction_is(rho, omega));
  j["solution"] = weights_json(rho);
  return j;
}

inline json demo_m2(DemoReport& r) {
  PointMeasure omega = flat_measure(2);
  FamilyDescription fam = solve_family(omega);
  json j = family_summary(r, fam, 0, 1, "trivial");
  r.add("Z trivial", true, fam.lattice->trivial(), fam.lattice->trivial());
  ElementaryPhaseForm plus = make_elementary(fam.basis, std::vector<Turn>{}, std::vector<int>{1});
  ElementaryPhaseForm minus = make_elementary(fam.basis, std::vector<Turn>{}, std::vector<int>{-1});
  Density rp = density_from_phase(omega, plus), rm = density_from_phase(omega, minus);
  r.add("rho+ = (2, 0)", json::array({2.0, 0.0}), weights_json(rp), max_gap(rp, {2.0, 0.0}) < 1e-12);
  r.add("rho- = (0, 2)", json::array({0.0, 2.0}), weights_json(rm), max_gap(rm, {0.0, 2.0}) < 1e-12);
  auto u = find_translation(build_process(omega, plus), build_process(omega, minus), *fam.lattice);
  r.add("rho- is rho+ translated by 1/2", 1, u ? json(*u) : json(nullptr), u && *u == 1);
  ElementaryPhaseForm tw = twist_by_group_element(plus, 1);
  r.add("twist of a+ by 1/2 is a-", -1, tw.signs[0], tw.signs[0] == -1);
  j["rho_plus"] = weights_json(rp);
  j["rho_minus"] = weights_json(rm);
  return j;
}

inline json demo_m3(DemoReport& r) {
  PointMeasure omega = flat_measure(3);
  FamilyDescription fam = solve_family(omega);
  json j = family_summary(r, fam, 1, 0, "U(1)^1");
  json samples = json::array();
  for (double t : {0.1, 0.25, 0.7}) {
    Density rho = fam.sample({Turn::approx(t)}, {});
    const double expect = 1 + 2 * std::cos(2 * std::numbers::pi * t);
    r.near("rho_u(0) = 1 + u + conj u at t = " + csv_number(t), expect, rho.weights[0].real(), 1e-12);
    r.add("diffraction at t = " + csv_number(t), true, diffraction_is(rho, omega), diffraction_is(rho, omega));
    samples.push_back({{"t", t}, {"weights", weights_json(rho)}});
  }
  Density one = fam.sample({Turn()}, {});
  r.add("u = 1 gives (3, 0, 0)", json::array({3.0, 0.0, 0.0}), weights_json(one), max_gap(one, {3, 0, 0}) < 1e-12);
  PointMeasure w = diffraction(one);
  r.add("diffraction of (3, 0, 0) is flat", json::array({1.0, 1.0, 1.0}), w.weights,
        std::abs(w[0] - 1) < 1e-12 && std::abs(w[1] - 1) < 1e-12 && std::abs(w[2] - 1) < 1e-12);
  ElementaryPhaseForm a = make_elementary(fam.basis, std::vector<Turn>{Turn::approx(0.1)}, std::vector<int>{});
  ElementaryPhaseForm b = twist_by_group_element(a, 1);
  Density ra = density_from_phase(omega, a), rb = density_from_phase(omega, b);
  double gap = 0;
  for (std::size_t x = 0; x < 3; ++x)
    gap = std::max(gap, std::abs(rb.weights[x] - ra.weights[(x + 2) % 3]));
  r.add("u -> zeta_3 u translates the density", true, gap < 1e-12, gap < 1e-12);
  j["samples"] = samples;
  return j;
}

inline json demo_m4(DemoReport& r) {
  PointMeasure omega = flat_measure(4);
  FamilyDescription fam = solve_family(omega);
  json j = family_summary(r, fam, 1, 1, "U(1)^1");
  for (int sign : {1, -1}) {
    Density rho = fam.sample({Turn::approx(0.3)}, {sign});
    r.add(std::string("u = e^(0.6 pi i), sign ") + (sign > 0 ? "+" : "-") + ": diffraction", true,
          diffraction_is(rho, omega), diffraction_is(rho, omega));
  }
  return j;
}

inline json demo_m5(DemoReport& r) {
  PointMeasure omega = flat_measure(5);
  FamilyDescription fam = solve_family(omega);
  json j = family_summary(r, fam, 2, 0, "U(1)^2");
  Density rho = fam.sample({Turn::approx(0.2), Turn::approx(0.45)}, {});
  r.add("u, v sample: diffraction", true, diffraction_is(rho, omega), diffraction_is(rho, omega));
  return j;
}

inline const std::vector<double>& z6_first() {
  static const std::vector<double> w{11, 25, 42, 45, 31, 14};
  return w;
}

inline const std::vector<double>& z6_second() {
  static const std::vector<double> w{10, 17, 35, 46, 39, 21};
  return w;
}

inline json demo_z6(DemoReport& r) {
  FiniteAbelianGroup g({6});
  Density ra = Density::real(g, z6_first()), rb = Density::real(g, z6_second());
  PointMeasure omega = diffraction(ra);
  const double side = std::sqrt(247.0 / 3.0);
  const std::vector<double> expect{28, side, 0, 0, 0, side};
  for (std::size_t k = 0; k < 6; ++k) {
    double v = std::sqrt(omega[k]);
    bool ok = expect[k] == 0 ? omega[k] <= 1e-9 * omega.max() : std::abs(v - expect[k]) <= 1e-9 * expect[k];
    r.add("omega^(1/2) at " + std::to_string(k), expect[k], v, ok);
  }
  r.add("homometric pair", true, homometric(ra, rb), homometric(ra, rb));
  FamilyDescription fam = solve_family(omega);
  json j = family_summary(r, fam, 1, 0, "U(1)^1");
  json spec = json::array();
  for (std::size_t k : fam.basis->spectrum)
    spec.push_back(k);
  r.add("Bragg spectrum", json::array({0, 1, 5}), spec, fam.basis->spectrum == std::vector<std::size_t>{0, 1, 5});
  const auto& lat = *fam.lattice;
  const bool six = lat.generators.size() == 1 && lat.generators[0].free == IntRow{6};
  r.add("Z = 6Z in F(S) = Z", json::array({6}), lat.generators.empty() ? json(nullptr) : json(lat.generators[0].free),
        six);
  r.add("<Z_5> != Z", false, generated_equals(lat, 5), !generated_equals(lat, 5));
  r.add("<Z_6> = Z", true, generated_equals(lat, 6), generated_equals(lat, 6));
  auto n0 = n_zero(lat, 12);
  r.add("n0", 6, n0 ? json(*n0) : json(nullptr), n0 && *n0 == 6);
  CoveringNumber cov = covering_number(*fam.basis, lat.span);
  r.add("covering number r", 3, cov.r ? json(*cov.r) : json(nullptr), cov.r && *cov.r == 3);
  r.add("n0 <= 2r + 1", 7, cov.bound() ? json(*cov.bound()) : json(nullptr),
        n0 && cov.bound() && *n0 <= *cov.bound() && *cov.bound() == 7);
  PhaseExtraction ea = extract_phase_from_density(ra), eb = extract_phase_from_density(rb);
  r.near("phase parameter of (11,25,42,45,31,14)", 0.443099, ea.a.free[0].value(), 1e-5);
  r.near("phase parameter of (10,17,35,46,39,21)", 0.520310, eb.a.free[0].value(), 1e-5);
  auto div = first_divergent_moment(ea.a, eb.a, lat, 8);
  r.add("first divergent moment", 6, div ? json(*div) : json(nullptr), div && *div == 6);
  ProcessModel ma = build_process(ea.omega, ea.a), mb = build_process(eb.omega, eb.a);
  std::vector<cplx> pa = delta_moments(ma, 6), pb = delta_moments(mb, 6);
  bool low = true;
  for (std::size_t m = 0; m < 5; ++m)
    low = low && relative_gap(pa[m], pb[m]) <= 1e-8;
  r.add("process moments agree for m <= 5", true, low, low);
  bool sixth = relative_gap(pa[5], pb[5]) > 1e-8;
  r.add("process moments differ at m = 6", true, sixth, sixth);
  RationalDensityReport gm = gm_rational_check(ra);
  r.add("unit-orbit closure of S", true, gm.closed, gm.closed);
  r.add("rational moment bound", 6, gm.moment_bound, gm.moment_bound == 6);
  for (const auto& [t, w] : {std::pair{0.443099, z6_first()}, std::pair{0.520310, z6_second()}}) {
    Density rho = fam.sample({Turn::approx(t)}, {});
    r.add("reconstruction at " + csv_number(t), w, weights_json(rho), max_gap(rho, w) < 1e-3);
  }
  j["omega"] = omega.weights;
  j["parameters"] = {ea.a.free[0].value(), eb.a.free[0].value()};
  return j;
}

inline json demo_circle(DemoReport& r) {
  std::map<std::int64_t, cplx> a{{1, unit_turns(0.1)}, {-1, unit_turns(-0.1)}, {2, unit_turns(0.35)},
                                 {-2, unit_turns(-0.35)}};
  CircleFamilyReport rep = circle_family_check(a);
  r.add("unit-modulus coefficients on the window", true, rep.passed(), rep.passed());
  CircleFamilyReport empty = circle_family_check({});
  r.add("K empty gives delta_0", true, empty.passed(), empty.passed());
  return to_json(rep);
}

/// The six weight curves t -> rho_t(x) of the Z/6 family, t in [0,1).
inline std::string z6_curves_csv(std::size_t samples) {
  if (samples == 0)
    fail("--samples must be positive");
  FiniteAbelianGroup g({6});
  PointMeasure omega = diffraction(Density::real(g, z6_first()));
  FamilyDescription fam = solve_family(omega);
  std::string t = "t,w0,w1,w2,w3,w4,w5\n";
  for (std::size_t i = 0; i < samples; ++i) {
    Turn u = Turn::exact(static_cast<std::int64_t>(i), static_cast<std::int64_t>(samples));
    Density rho = fam.sample({u}, {});
    t += csv_number(static_cast<double>(i) / static_cast<double>(samples));
    for (const cplx& w : rho.weights)
      t += "," + csv_number(w.real());
    t += "\n";
  }
  return t;
}

inline Result cmd_demo(const Options& o) {
  static const std::map<std::string, json (*)(DemoReport&)> demos{
      {"m1", demo_m1}, {"m2", demo_m2}, {"m3", demo_m3}, {"m4", demo_m4},
      {"m5", demo_m5}, {"z6", demo_z6}, {"circle", demo_circle}};
  auto it = demos.find(o.demo);
  if (it == demos.end())
    fail("unknown demo \"" + o.demo + "\" (m1, m2, m3, m4, m5, z6, circle)");
  if (o.format == "csv") {
    if (o.demo != "z6")
      fail("csv output is only available for demo z6");
    return {z6_curves_csv(o.samples)};
  }
  DemoReport r;
  json j = {{"demo", o.demo}};
  j["result"] = it->second(r);
  j["checks"] = r.checks;
  j["pass"] = r.ok;
  return {dump(j), r.ok ? exit_ok : exit_contract};
}

inline std::size_t env_cap() {
  if (const char* s = std::getenv("DIFFRAKT_CAP")) {
    try {
      std::size_t pos = 0;
      unsigned long long v = std::stoull(s, &pos);
      if (pos == std::string(s).size() && v > 0)
        return static_cast<std::size_t>(v);
    } catch (const std::logic_error&) {
    }
    fail("DIFFRAKT_CAP must be a positive integer");
  }
  return FiniteAbelianGroup::default_cap;
}

/// args excludes the program name.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"diffrakt: diffraction and homometry on finite abelian groups", "diffrakt"};
  app.require_subcommand(1);

  using Handler = Result (*)(const Options&);
  std::vector<std::pair<CLI::App*, Handler>> subs;
  auto add = [&](const char* name, const char* help, Handler h) {
    CLI::App* s = app.add_subcommand(name, help);
    s->add_option("--in", o.in, "input JSON file (repeatable)");
    s->add_option("--out", o.out, "write output here instead of stdout");
    s->add_option("--tol", o.tol, "relative tolerance for Bragg peaks and comparisons")->check(CLI::PositiveNumber);
    s->add_option("--moments", o.moments, "moment depth");
    s->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    s->add_option("--samples", o.samples, "parameter samples for curve output");
    s->add_option("--cap", o.cap, "maximal group order")->check(CLI::PositiveNumber);
    subs.emplace_back(s, h);
    return s;
  };
  add("diffract", "diffraction measure of a density", cmd_diffract);
  add("autocorr", "autocorrelation of a density", cmd_autocorr);
  add("solve", "family of densities with a given diffraction", cmd_solve);
  add("extract", "diffraction and phase form of a density", cmd_extract);
  add("homometric", "compare two densities", cmd_homometric);
  add("moments", "moment tables of one density or a pair", cmd_moments);
  add("relators", "relator group of a Bragg spectrum", cmd_relators);
  add("process-verify", "build the stationary process and check its invariants", cmd_process_verify);
  add("gm-check", "unit-orbit closure test for rational densities", cmd_gm_check);
  add("circle-check", "unit-modulus test for the circle family", cmd_circle_check);
  add("demo", "worked examples", cmd_demo)->add_option("name", o.demo, "m1 m2 m3 m4 m5 z6 circle")->required();

  try {
    o.cap = env_cap();
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return exit_invalid;
  }

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    for (auto& [s, h] : subs) {
      if (!s->parsed())
        continue;
      Result r = h(o);
      if (o.out.empty()) {
        out << r.text;
      } else {
        std::ofstream f(o.out);
        if (!f)
          fail("cannot write " + o.out);
        f << r.text;
      }
      return r.code;
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return exit_invalid;
  } catch (const ContractError& e) {
    err << "contract violated: " << e.what() << "\n";
    return exit_contract;
  } catch (const CapError& e) {
    err << "cap exceeded: " << e.what() << "\n";
    return exit_cap;
  }
  return exit_usage;
}

}  // namespace diffrakt::cli

#endif
