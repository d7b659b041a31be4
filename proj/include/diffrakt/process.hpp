// The stationary process attached to a diffraction omega and an elementary
// phase form a, realized on the finite state space X = G / E^perp with
// uniform probability, E = <S>.
//
// Eigenfunctions f_k = a(k) omega(k)^(1/2) chi_k with chi_k(x) = (k,x), and
//   N(F) = sum_{k in S} dft(F)(k) f_k,
// so that N(T_t F) = T_t N(F) and N(1_0)(t) = rho_a(-t) / |G|.

#ifndef DIFFRAKT_PROCESS_HPP_
#define DIFFRAKT_PROCESS_HPP_

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "density.hpp"
#include "phaseforms.hpp"
#include "relators.hpp"

namespace diffrakt {

using StateVector = std::vector<cplx>;

struct ProcessModel {
  FiniteAbelianGroup group;  // G; the dual carries the same moduli
  PointMeasure omega;
  BraggSpectrum spectrum;
  Subgroup span;             // E = <S> in the dual
  Subgroup perp;             // E^perp in G
  CosetSpace states;         // X
  ElementaryPhaseForm a;
  std::vector<StateVector> f;  // f[i] is the eigenfunction of spectrum.elements[i]

  std::size_t size() const { return states.size(); }
  const std::vector<std::size_t>& support() const { return spectrum.elements; }

  std::size_t slot(std::size_t k) const {
    auto it = std::lower_bound(support().begin(), support().end(), k);
    if (it == support().end() || *it != k)
      fail("process: " + group.element_str(k) + " is not in the Bragg spectrum");
    return static_cast<std::size_t>(it - support().begin());
  }

  /// chi_k on the coset c.
  cplx character(std::size_t k, std::size_t c) const { return group.pairing(k, states.representatives[c]); }
};

inline ProcessModel build_process(const PointMeasure& omega, const ElementaryPhaseForm& a) {
  ProcessModel m;
  m.group = omega.group;
  m.omega = omega;
  m.spectrum = bragg_spectrum(omega, omega.tol);
  if (!is_symmetric(omega, omega.tol))
    fail("build_process: diffraction is not symmetric");
  require_same_basis(a, *canonical_basis(m.spectrum), "build_process");
  m.a = a;
  m.span = subgroup_generated(m.group, m.spectrum.elements);
  m.perp = annihilator(m.span);
  m.states = quotient(m.group, m.perp);
  if (m.states.size() != m.span.order())
    fail_contract("build_process: |X| differs from |E|");
  for (std::size_t k : m.spectrum.elements) {
    const cplx coef = evaluate(a, k) * std::sqrt(omega[k]);
    StateVector row(m.states.size());
    for (std::size_t c = 0; c < row.size(); ++c)
      row[c] = coef * m.character(k, c);
    m.f.push_back(std::move(row));
  }
  return m;
}

/// <u, v> = (1/|X|) sum u conj(v).
inline cplx inner(const StateVector& u, const StateVector& v) {
  cplx acc = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i)
    acc += u[i] * std::conj(v[i]);
  return acc / static_cast<double>(u.size());
}

inline double norm_sq(const StateVector& u) { return inner(u, u).real(); }

inline StateVector combine(const ProcessModel& m, const std::vector<cplx>& coef_on_dual) {
  StateVector out(m.size(), 0.0);
  const auto& s = m.support();
  for (std::size_t i = 0; i < s.size(); ++i) {
    const cplx h = coef_on_dual[s[i]];
    if (h == cplx(0.0, 0.0))
      continue;
    for (std::size_t c = 0; c < out.size(); ++c)
      out[c] += h * m.f[i][c];
  }
  return out;
}

inline StateVector apply_N(const ProcessModel& m, const GroupFunction& f) {
  require_same_group(m.group, f.group, "apply_N");
  return combine(m, dft(f).values);
}

/// theta(H) = sum_{k in S} H(k) f_k.
inline StateVector theta(const ProcessModel& m, const std::vector<cplx>& h) {
  if (h.size() != m.group.order())
    fail("theta: function on the dual has the wrong size");
  return combine(m, h);
}

/// (T_t v)(xi) = v(xi - t).
inline StateVector translate(const ProcessModel& m, const StateVector& v, std::size_t t) {
  StateVector out(v.size());
  const std::size_t mt = m.group.neg(t);
  for (std::size_t c = 0; c < v.size(); ++c)
    out[c] = v[m.states.shift(c, mt)];
  return out;
}

/// Mass |<v, chi_k>|^2 at each k in E, zero elsewhere on the dual.
struct SpectralMeasure {
  FiniteAbelianGroup group;
  std::vector<double> mass;

  double total() const {
    double s = 0;
    for (double v : mass)
      s += v;
    return s;
  }
};

inline SpectralMeasure spectral_measure(const ProcessModel& m, const StateVector& v) {
  if (v.size() != m.size())
    fail("spectral_measure: vector has the wrong size");
  SpectralMeasure sm{m.group, std::vector<double>(m.group.order(), 0.0)};
  for (std::size_t k : m.span.members) {
    cplx acc = 0.0;
    for (std::size_t c = 0; c < v.size(); ++c)
      acc += v[c] * std::conj(m.character(k, c));
    sm.mass[k] = std::norm(acc / static_cast<double>(v.size()));
  }
  return sm;
}

inline double relative_gap(cplx lhs, cplx rhs, double floor = 1.0) {
  return std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), floor});
}

/// |<N(F), N(H)> - gamma(F * H~)| relative, with gamma taken from omega.
inline double second_moment_check(const ProcessModel& m, const GroupFunction& f, const GroupFunction& h) {
  cplx lhs = inner(apply_N(m, f), apply_N(m, h));
  cplx rhs = apply_measure(autocorrelation_of(m.omega), convolve(f, involute(h)));
  return relative_gap(lhs, rhs, 1e-300);
}

/// Orbit average of N(1_0) N(F) along the translates of the state xi,
/// scaled by |G|.  Equals gamma(F) for every xi.
inline cplx two_point_correlation(const ProcessModel& m, std::size_t xi, const GroupFunction& f) {
  if (xi >= m.size())
    fail("two_point_correlation: state outside X");
  StateVector n0 = apply_N(m, GroupFunction::delta(m.group, 0));
  StateVector nf = apply_N(m, f);
  cplx acc = 0.0;
  for (std::size_t t = 0; t < m.group.order(); ++t) {
    std::size_t c = m.states.shift(xi, m.group.neg(t));
    acc += n0[c] * nf[c];
  }
  return acc;
}

/// Entrywise product of the eigenfunctions along the symbols of v.
inline StateVector relator_product(const ProcessModel& m, const GeneratorBasis& b, const FSVector& v) {
  StateVector prod(m.size(), 1.0);
  for (std::size_t k : shortest_tuple(b, v)) {
    const StateVector& row = m.f[m.slot(k)];
    for (std::size_t c = 0; c < prod.size(); ++c)
      prod[c] *= row[c];
  }
  return prod;
}

struct PhaseData {
  PointMeasure omega;
  std::vector<FSVector> relators;  // generators of Z
  std::vector<Turn> phases;        // a*(v), read from the eigenfunction products
  PhaseForm form;
  double max_deviation = 0;        // worst relative spread of a product over X
};

/// Reads the phase form off the eigenfunctions: the product of f_k along a
/// relator is constant on X and equals a*(v) times the omega^(1/2) factors.
inline PhaseData extract_phase_data(const ProcessModel& m, std::shared_ptr<const RelatorLattice> lat) {
  const auto& b = *lat->basis;
  require_same_basis(m.a, b, "extract_phase_data");
  PhaseData d;
  d.omega = m.omega;
  std::vector<double> row_phases;
  for (const IntRow& row : lat->preimage) {
    FSVector v = project(b, row);
    if (v.is_identity()) {
      row_phases.push_back(0.0);
      continue;
    }
    StateVector prod = relator_product(m, b, v);
    cplx mean = 0.0;
    for (const cplx& z : prod)
      mean += z;
    mean /= static_cast<double>(prod.size());
    if (std::abs(mean) == 0.0)
      fail_contract("extract_phase_data: relator product vanishes");
    double dev = 0;
    for (const cplx& z : prod)
      dev = std::max(dev, std::abs(z - mean) / std::abs(mean));
    d.max_deviation = std::max(d.max_deviation, dev);
    if (dev > 1e-9)
      fail_contract("extract_phase_data: relator product " + v.str() + " is not constant on X");
    Turn ph = Turn::of(mean);
    // the lattice row may differ from v by torsion doublings; those carry no phase
    row_phases.push_back(ph.value());
    d.relators.push_back(v);
    d.phases.push_back(ph);
  }
  d.form = restrict_to(lift_phase_form(*lat, row_phases), lat);
  return d;
}

/// The u in X with b(k) = (k,u) a(k) on S, if the two models are translates.
inline std::optional<std::size_t> find_translation(const ProcessModel& ma, const ProcessModel& mb,
                                                   const RelatorLattice& lat, double tol = 1e-9) {
  require_same_group(ma.group, mb.group, "find_translation");
  if (ma.support() != mb.support())
    fail("find_translation: the diffraction measures differ");
  const double scale = std::max(ma.omega.max(), mb.omega.max());
  for (std::size_t k = 0; k < ma.group.order(); ++k)
    if (std::abs(ma.omega[k] - mb.omega[k]) > tol * scale)
      fail("find_translation: the diffraction measures differ");
  if (!same_phase_form(ma.a, mb.a, lat))
    return std::nullopt;
  for (std::size_t c = 0; c < ma.size(); ++c) {
    const std::size_t u = ma.states.representatives[c];
    bool ok = true;
    for (std::size_t k : ma.support())
      if (std::abs(ma.group.pairing(k, u) * evaluate(ma.a, k) - evaluate(mb.a, k)) > tol) {
        ok = false;
        break;
      }
    if (ok)
      return u;
  }
  fail_contract("find_translation: equal phase forms but no translating state");
}

constexpr std::size_t max_moment_order = 8;

/// E[N(F_1) ... N(F_m)] by direct summation over X.
inline cplx process_moment(const ProcessModel& m, const std::vector<GroupFunction>& fs) {
  if (fs.size() > max_moment_order)
    fail_cap("process moments are limited to order " + std::to_string(max_moment_order));
  StateVector prod(m.size(), 1.0);
  for (const GroupFunction& f : fs) {
    StateVector n = apply_N(m, f);
    for (std::size_t c = 0; c < prod.size(); ++c)
      prod[c] *= n[c];
  }
  cplx acc = 0.0;
  for (const cplx& z : prod)
    acc += z;
  return acc / static_cast<double>(prod.size());
}

/// Sum over (k_1..k_m) in S^m with k_1 + ... + k_m = 0 of
/// prod_j dft(F_j)(k_j) a(k_j) omega(k_j)^(1/2), accumulated over partial sums.
inline cplx moment_formula(const ProcessModel& m, const std::vector<GroupFunction>& fs) {
  if (fs.size() > max_moment_order)
    fail_cap("process moments are limited to order " + std::to_string(max_moment_order));
  const auto& g = m.group;
  std::vector<cplx> weight(g.order(), 0.0);
  for (std::size_t k : m.support())
    weight[k] = evaluate(m.a, k) * std::sqrt(m.omega[k]);
  std::vector<cplx> partial(g.order(), 0.0);
  partial[0] = 1.0;
  for (const GroupFunction& f : fs) {
    GroupFunction fh = dft(f);
    std::vector<cplx> next(g.order(), 0.0);
    for (std::size_t s = 0; s < g.order(); ++s) {
      if (partial[s] == cplx(0.0, 0.0))
        continue;
      for (std::size_t k : m.support())
        next[g.add(s, k)] += partial[s] * fh.values[k] * weight[k];
    }
    partial = std::move(next);
  }
  return partial[0];
}

inline double moment_formula_check(const ProcessModel& m, const std::vector<GroupFunction>& fs) {
  return relative_gap(process_moment(m, fs), moment_formula(m, fs));
}

/// The characters chi_k, k in S, generate the full character group of X.
inline bool pure_point_complete(const ProcessModel& m) {
  Subgroup gen = subgroup_generated(m.group, m.support());
  return gen.order() == m.size() && gen.members == m.span.members;
}

struct Check {
  std::string name;
  double residual = 0;
  double tol = 0;
  bool passed() const { return residual <= tol; }
};

struct VerificationReport {
  std::vector<Check> checks;
  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed(); });
  }
};

namespace detail {

inline GroupFunction seeded_function(const FiniteAbelianGroup& g, std::mt19937_64& rng, bool real) {
  std::normal_distribution<double> nd;
  std::vector<cplx> v(g.order());
  for (cplx& z : v)
    z = real ? cplx(nd(rng), 0.0) : cplx(nd(rng), nd(rng));
  return GroupFunction(g, std::move(v));
}

}  // namespace detail

/// Residuals of the model invariants on deterministic test inputs.
inline VerificationReport verify_process(const ProcessModel& m, const RelatorLattice& lat,
                                         std::uint64_t seed = 1) {
  VerificationReport r;
  const auto& s = m.support();
  const double scale = std::max(1.0, m.omega.max());
  std::mt19937_64 rng(seed);

  double orth = 0, conj_sym = 0, modulus = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = 0; j < s.size(); ++j) {
      cplx expect = i == j ? cplx(m.omega[s[i]], 0.0) : cplx(0.0, 0.0);
      orth = std::max(orth, std::abs(inner(m.f[i], m.f[j]) - expect) / scale);
    }
    const StateVector& fm = m.f[m.slot(m.group.neg(s[i]))];
    const double amp = std::sqrt(m.omega[s[i]]);
    for (std::size_t c = 0; c < m.size(); ++c) {
      conj_sym = std::max(conj_sym, std::abs(fm[c] - std::conj(m.f[i][c])) / std::sqrt(scale));
      modulus = std::max(modulus, std::abs(std::abs(m.f[i][c]) - amp) / std::sqrt(scale));
    }
  }
  r.checks.push_back({"eigenfunction orthogonality", orth, 1e-9});
  r.checks.push_back({"f(-k) = conj f(k)", conj_sym, 1e-12});
  r.checks.push_back({"constant modulus", modulus, 1e-12});

  if (m.spectrum.contains_zero()) {
    double dev = 0;
    const double amp = std::sqrt(m.omega[0]);
    for (const cplx& z : m.f[0])
      dev = std::max(dev, std::abs(z - amp) / std::sqrt(scale));
    r.checks.push_back({"f(0) = omega(0)^(1/2)", dev, 1e-12});
  }

  GroupFunction f1 = detail::seeded_function(m.group, rng, true);
  GroupFunction f2 = detail::seeded_function(m.group, rng, true);
  std::vector<cplx> h(m.group.order());
  for (cplx& z : h)
    z = cplx(std::normal_distribution<double>()(rng), std::normal_distribution<double>()(rng));

  StateVector n1 = apply_N(m, f1);
  double reality = 0;
  for (const cplx& z : n1)
    reality = std::max(reality, std::abs(z.imag()) / std::sqrt(scale));
  r.checks.push_back({"N(real F) is real", reality, 1e-12});

  double equiv = 0;
  for (std::size_t t = 0; t < m.group.order(); ++t) {
    StateVector lhs = apply_N(m, translate(f1, t));
    StateVector rhs = translate(m, n1, t);
    for (std::size_t c = 0; c < lhs.size(); ++c)
      equiv = std::max(equiv, std::abs(lhs[c] - rhs[c]) / std::sqrt(scale));
  }
  r.checks.push_back({"N(T_t F) = T_t N(F)", equiv, 1e-9});

  StateVector th = theta(m, h);
  double iso_rhs = 0;
  for (std::size_t k : s)
    iso_rhs += std::norm(h[k]) * m.omega[k];
  r.checks.push_back({"theta isometry", relative_gap(norm_sq(th), iso_rhs), 1e-9});

  SpectralMeasure sm = spectral_measure(m, th);
  double spec = 0;
  for (std::size_t k = 0; k < m.group.order(); ++k) {
    double expect = m.spectrum.contains(k) ? std::norm(h[k]) * m.omega[k] : 0.0;
    spec = std::max(spec, std::abs(sm.mass[k] - expect) / std::max(1.0, iso_rhs));
  }
  r.checks.push_back({"spectral measure of theta(H)", spec, 1e-9});

  r.checks.push_back({"second moment", second_moment_check(m, f1, f2), 1e-9});

  cplx gamma_f = apply_measure(autocorrelation_of(m.omega), f1);
  double two_point = 0;
  for (std::size_t xi = 0; xi < m.size(); ++xi)
    two_point = std::max(two_point, relative_gap(two_point_correlation(m, xi, f1), gamma_f));
  r.checks.push_back({"two-point correlation", two_point, 1e-9});

  double mom = 0;
  for (std::size_t order = 1; order <= 4; ++order) {
    std::vector<GroupFunction> fs;
    for (std::size_t j = 0; j < order; ++j)
      fs.push_back(detail::seeded_function(m.group, rng, false));
    mom = std::max(mom, moment_formula_check(m, fs));
  }
  r.checks.push_back({"moment formula", mom, 1e-8});

  r.checks.push_back({"pure point completeness", pure_point_complete(m) ? 0.0 : 1.0, 0.0});

  auto shared = std::make_shared<const RelatorLattice>(lat);
  PhaseData pd = extract_phase_data(m, shared);
  r.checks.push_back({"relator products constant", pd.max_deviation, 1e-9});
  r.checks.push_back({"extract/build roundtrip", same_phase_form(m.a, pd.form.rep, lat) ? 0.0 : 1.0, 0.0});
  return r;
}

}  // namespace diffrakt

#endif
