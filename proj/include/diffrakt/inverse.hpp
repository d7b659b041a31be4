// The inverse problem: densities with a prescribed diffraction.
//
//   rho_a(x) = sum_{k in S} a(k) omega(k)^(1/2) conj (k,x)
//
// has plus-pairing coefficients a(k) omega(k)^(1/2), hence diffraction
// omega.  Every solution arises this way, and two solutions are translates
// of one another exactly when their phase forms agree.

#ifndef DIFFRAKT_INVERSE_HPP_
#define DIFFRAKT_INVERSE_HPP_

#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <numbers>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "density.hpp"
#include "phaseforms.hpp"
#include "relators.hpp"

namespace diffrakt {

inline void require_symmetric(const PointMeasure& omega) {
  if (!is_symmetric(omega, omega.tol))
    fail("diffraction is not symmetric under k -> -k");
}

inline Density density_from_phase(const PointMeasure& omega, const ElementaryPhaseForm& a) {
  require_symmetric(omega);
  BraggSpectrum s = bragg_spectrum(omega, omega.tol);
  require_same_basis(a, *canonical_basis(s), "density_from_phase");
  const auto& g = omega.group;
  // idft sums h(k) (k,x); storing the coefficient of k at -k gives conj (k,x)
  std::vector<cplx> h(g.order(), 0.0);
  for (std::size_t k : s.elements)
    h[g.neg(k)] = evaluate(a, k) * std::sqrt(omega[k]);
  GroupFunction rho = idft(GroupFunction(g, std::move(h)));
  const double scale = std::max(1.0, std::sqrt(omega.max()));
  for (cplx& z : rho.values) {
    if (std::abs(z.imag()) > 1e-9 * scale)
      fail_contract("density_from_phase: density has imaginary part " + std::to_string(z.imag()));
    z = cplx(z.real(), 0.0);
  }
  return Density(g, std::move(rho.values));
}

/// True when <S> is a proper subgroup of the dual, so every solution is
/// periodic under the annihilator of <S>.
inline bool periodic_solutions(const PointMeasure& omega) {
  BraggSpectrum s = bragg_spectrum(omega, omega.tol);
  return subgroup_generated(omega.group, s.elements).order() != omega.group.order();
}

struct FamilyDescription {
  PointMeasure omega;
  BasisPtr basis;
  std::shared_ptr<const RelatorLattice> lattice;
  PhaseGroup class_group;
  bool periodic = false;

  std::size_t p() const { return basis->p(); }
  std::size_t q() const { return basis->q(); }

  Density sample(std::vector<Turn> angles, std::vector<int> signs) const {
    return density_from_phase(omega, make_elementary(basis, std::move(angles), std::move(signs)));
  }
};

inline FamilyDescription solve_family(const PointMeasure& omega) {
  require_symmetric(omega);
  FamilyDescription fam;
  fam.omega = omega;
  fam.basis = canonical_basis(bragg_spectrum(omega, omega.tol));
  fam.lattice = std::make_shared<const RelatorLattice>(relator_lattice(fam.basis));
  fam.class_group = phase_group_structure(*fam.lattice);
  fam.periodic = periodic_solutions(omega);
  return fam;
}

struct PhaseExtraction {
  PointMeasure omega;
  ElementaryPhaseForm a;
  bool negated = false;
};

/// a(k) = c(k) / |c(k)| on the Bragg spectrum of rho.  A density with
/// negative mean is negated first so that a(0) = 1.
inline PhaseExtraction extract_phase_from_density(const Density& rho, double rel_tol = default_rel_tol) {
  if (!rho.is_real(1e-12))
    fail("extract_phase_from_density: density is not real");
  PhaseExtraction out;
  std::vector<cplx> c = phase_coefficients(rho);
  out.omega = diffraction(rho, rel_tol);
  BraggSpectrum s = bragg_spectrum(out.omega, rel_tol);
  BasisPtr basis = canonical_basis(s);
  if (basis->has_zero) {
    if (c[0].real() < 0) {
      out.negated = true;
      for (cplx& z : c)
        z = -z;
    }
    if (!(c[0].real() > 0))
      fail_contract("extract_phase_from_density: mean is zero although 0 is a Bragg peak");
  }
  std::vector<Turn> angles;
  for (std::size_t k : basis->free)
    angles.push_back(Turn::of(c[k]));
  std::vector<int> signs;
  for (std::size_t k : basis->torsion) {
    if (std::abs(c[k].imag()) > 1e-9 * std::abs(c[k]))
      fail_contract("extract_phase_from_density: coefficient at a point of order 2 is not real");
    signs.push_back(c[k].real() >= 0 ? 1 : -1);
  }
  out.a = make_elementary(basis, std::move(angles), std::move(signs));
  return out;
}

/// Continued-fraction test: x = n/d with d <= max_den, within tol.
inline bool is_rational(double x, std::int64_t max_den = 10'000, double tol = 1e-12) {
  if (!std::isfinite(x))
    return false;
  double r = x;
  std::int64_t h0 = 1, h1 = 0, k0 = 0, k1 = 1;
  for (int it = 0; it < 64; ++it) {
    double fl = std::floor(r);
    if (std::abs(fl) > 9e15)
      return false;
    auto q = static_cast<std::int64_t>(fl);
    std::int64_t h2 = q * h0 + h1, k2 = q * k0 + k1;
    if (k2 > max_den)
      return false;
    if (std::abs(x - static_cast<double>(h2) / static_cast<double>(k2)) <= tol * std::max(1.0, std::abs(x)))
      return true;
    h1 = h0;
    h0 = h2;
    k1 = k0;
    k0 = k2;
    double frac = r - fl;
    if (frac == 0)
      return true;
    r = 1.0 / frac;
  }
  return false;
}

struct OrbitViolation {
  std::int64_t k;
  std::int64_t j;
  friend bool operator==(const OrbitViolation&, const OrbitViolation&) = default;
};

/// Pairs (k, j) with k in S, gcd(j, ord k) = 1 and j k not in S, for a
/// subset S of Z/M.
inline std::vector<OrbitViolation> unit_orbit_closure(std::int64_t M, const std::vector<std::int64_t>& support) {
  if (M < 1)
    fail("unit_orbit_closure: modulus must be positive");
  std::vector<char> in(static_cast<std::size_t>(M), 0);
  for (std::int64_t k : support)
    in[static_cast<std::size_t>(detail::floor_mod(k, M))] = 1;
  std::vector<OrbitViolation> out;
  for (std::int64_t k = 0; k < M; ++k) {
    if (!in[static_cast<std::size_t>(k)])
      continue;
    const std::int64_t ord = M / std::gcd(k, M);
    for (std::int64_t j = 1; j < ord; ++j)
      if (std::gcd(j, ord) == 1 && !in[static_cast<std::size_t>((j * k) % M)])
        out.push_back({k, j});
  }
  return out;
}

struct RationalDensityReport {
  bool is_rational = false;
  bool closed = false;
  std::vector<std::int64_t> support;
  std::vector<OrbitViolation> violations;
  int moment_bound = 0;  // moments needed to pin down the homometry class
};

inline RationalDensityReport gm_rational_check(const Density& rho, double rel_tol = default_rel_tol) {
  if (rho.group.rank() != 1)
    fail("gm_rational_check: the group must be a single cyclic factor Z/M");
  const std::int64_t M = rho.group.moduli()[0];
  RationalDensityReport r;
  r.is_rational = rho.is_real(1e-12);
  for (const cplx& w : rho.weights)
    r.is_rational = r.is_rational && is_rational(w.real());
  BraggSpectrum s = bragg_spectrum(diffraction(rho, rel_tol), rel_tol);
  for (std::size_t k : s.elements)
    r.support.push_back(static_cast<std::int64_t>(k));
  r.violations = unit_orbit_closure(M, r.support);
  r.closed = r.violations.empty();
  r.moment_bound = M % 2 == 0 ? 6 : 4;
  return r;
}

struct CircleFamilyReport {
  std::int64_t window = 0;  // coefficients checked on [-window, window]
  std::vector<std::pair<std::int64_t, cplx>> coefficients;
  double max_modulus_error = 0;
  double max_phase_error = 0;  // |rho^(k) - a(k)| over k in K

  bool passed(double tol = 1e-12) const { return max_modulus_error <= tol && max_phase_error <= tol; }
};

/// Fourier coefficients rho^(j) = int chi_j drho of
///   rho = delta_0 + sum_{k in K} (a(k) - 1) conj chi_k
/// on U(1), by an exact equispaced quadrature for the smooth part.
inline CircleFamilyReport circle_family_check(const std::map<std::int64_t, cplx>& a, double tol = 1e-12) {
  std::int64_t kmax = 0;
  for (const auto& [k, v] : a) {
    if (k == 0)
      fail("circle_family_check: 0 must not be in K");
    auto it = a.find(-k);
    if (it == a.end())
      fail("circle_family_check: K is not symmetric (" + std::to_string(k) + ")");
    if (std::abs(it->second - std::conj(v)) > tol)
      fail("circle_family_check: a(-k) != conj a(k) at k = " + std::to_string(k));
    if (std::abs(std::abs(v) - 1.0) > tol)
      fail("circle_family_check: a(k) is not of unit modulus at k = " + std::to_string(k));
    kmax = std::max(kmax, std::abs(k));
  }
  CircleFamilyReport r;
  r.window = kmax + 2;
  // no aliasing while |j| + |k| < n
  const std::int64_t n = 2 * (r.window + kmax) + 1;
  std::vector<cplx> smooth(static_cast<std::size_t>(n), 0.0);
  for (std::int64_t x = 0; x < n; ++x)
    for (const auto& [k, v] : a)
      smooth[static_cast<std::size_t>(x)] += (v - 1.0) * unit_root(-k * x, n);
  for (std::int64_t j = -r.window; j <= r.window; ++j) {
    cplx acc = 0.0;
    for (std::int64_t x = 0; x < n; ++x)
      acc += unit_root(j * x, n) * smooth[static_cast<std::size_t>(x)];
    cplx coef = 1.0 + acc / static_cast<double>(n);
    r.coefficients.emplace_back(j, coef);
    r.max_modulus_error = std::max(r.max_modulus_error, std::abs(std::abs(coef) - 1.0));
    auto it = a.find(j);
    cplx expect = it == a.end() ? cplx(1.0, 0.0) : it->second;
    r.max_phase_error = std::max(r.max_phase_error, std::abs(coef - expect));
  }
  return r;
}

}  // namespace diffrakt

#endif
