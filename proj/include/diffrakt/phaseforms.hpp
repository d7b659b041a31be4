// Elementary phase forms (characters of F(S)) and phase forms (their
// restrictions to the relator group Z).
//
// A character of F(S) ~ Z^p + (Z/2)^q is one angle per free generator and
// one sign per torsion generator; a(0) = 1, a(-k) = conj a(k) and
// a(k) = +-1 for 2k = 0 hold by construction.  Phase forms are carried by
// elementary representatives and compared on a generating set of Z.

#ifndef DIFFRAKT_PHASEFORMS_HPP_
#define DIFFRAKT_PHASEFORMS_HPP_

#include <cmath>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lattice.hpp"
#include "relators.hpp"
#include "turn.hpp"

namespace diffrakt {

/// Absolute tolerance, in radians, for deciding that two phases agree.
constexpr double phase_tol = 1e-10;

struct ElementaryPhaseForm {
  BasisPtr basis;
  std::vector<Turn> free;   // angle of a(k) for each free generator k
  std::vector<int> signs;   // a(k) for each torsion generator k
};

inline ElementaryPhaseForm make_elementary(const BasisPtr& basis, std::vector<Turn> free_angles,
                                           std::vector<int> torsion_signs) {
  if (!basis)
    fail("make_elementary: missing generator basis");
  if (free_angles.size() != basis->p())
    fail("make_elementary: expected " + std::to_string(basis->p()) + " free angles, got " +
         std::to_string(free_angles.size()));
  if (torsion_signs.size() != basis->q())
    fail("make_elementary: expected " + std::to_string(basis->q()) + " torsion signs, got " +
         std::to_string(torsion_signs.size()));
  for (int s : torsion_signs)
    if (s != 1 && s != -1)
      fail("make_elementary: torsion signs must be +1 or -1");
  return {basis, std::move(free_angles), std::move(torsion_signs)};
}

/// Angles given as unit complex numbers a(k) for the free generators.
inline ElementaryPhaseForm make_elementary(const BasisPtr& basis, const std::vector<cplx>& free_values,
                                           std::vector<int> torsion_signs, double tol = 1e-9) {
  std::vector<Turn> angles;
  for (const cplx& z : free_values) {
    if (std::abs(std::abs(z) - 1.0) > tol)
      fail("make_elementary: free value is not of unit modulus");
    angles.push_back(Turn::of(z));
  }
  return make_elementary(basis, std::move(angles), std::move(torsion_signs));
}

inline ElementaryPhaseForm trivial_phase_form(const BasisPtr& basis) {
  return make_elementary(basis, std::vector<Turn>(basis->p()), std::vector<int>(basis->q(), 1));
}

inline void require_same_basis(const ElementaryPhaseForm& a, const GeneratorBasis& b, const char* what) {
  if (!a.basis || !(*a.basis == b))
    fail(std::string(what) + ": phase form belongs to a different Bragg spectrum");
}

/// Angle of a(k) for k in S.
inline Turn phase_of(const ElementaryPhaseForm& a, std::size_t k) {
  auto slot = a.basis->slot(k);
  switch (slot.kind) {
    case GeneratorBasis::Kind::zero: return Turn();
    case GeneratorBasis::Kind::plus: return a.free[slot.pos];
    case GeneratorBasis::Kind::minus: return -a.free[slot.pos];
    case GeneratorBasis::Kind::torsion: return a.signs[slot.pos] < 0 ? Turn::half() : Turn();
  }
  return Turn();
}

inline cplx evaluate(const ElementaryPhaseForm& a, std::size_t k) { return phase_of(a, k).unit(); }

/// Angle of a(v) for v in F(S), summed in turns before a single unit().
inline Turn phase_of_vector(const ElementaryPhaseForm& a, const FSVector& v) {
  const auto& b = *a.basis;
  if (v.free.size() != b.p() || v.torsion.size() != b.q())
    fail("phase_of_vector: vector has the wrong shape");
  Turn acc;
  for (std::size_t i = 0; i < b.p(); ++i)
    if (v.free[i] != 0)
      acc = acc + a.free[i].scaled(v.free[i]);
  for (std::size_t j = 0; j < b.q(); ++j)
    if (v.torsion[j] && a.signs[j] < 0)
      acc = acc + Turn::half();
  return acc;
}

inline cplx evaluate_vector(const ElementaryPhaseForm& a, const FSVector& v) { return phase_of_vector(a, v).unit(); }

inline bool phase_is_trivial(const Turn& t, double tol = phase_tol) { return t.phase_error() <= tol; }

/// a kills every relator of reduced length <= m.  With exact_length set,
/// only relators represented by a tuple of exactly m elements of S count:
/// padding needs a 0 in S or an even number of extra symbols.
inline bool moment_condition(const ElementaryPhaseForm& a, const RelatorLattice& lat, std::int64_t m,
                             bool exact_length = false) {
  require_same_basis(a, *lat.basis, "moment_condition");
  for (const FSVector& v : relators_up_to(lat, m)) {
    if (exact_length && !lat.basis->has_zero && (m - reduced_length(v)) % 2 != 0)
      continue;
    if (!phase_is_trivial(phase_of_vector(a, v)))
      return false;
  }
  return true;
}

/// A character of Z, carried by an elementary representative.
struct PhaseForm {
  ElementaryPhaseForm rep;
  std::shared_ptr<const RelatorLattice> lattice;

  /// a*(v) for each generator of Z.
  std::vector<Turn> generator_phases() const {
    std::vector<Turn> out;
    for (const FSVector& v : lattice->generators)
      out.push_back(phase_of_vector(rep, v));
    return out;
  }
};

inline PhaseForm restrict_to(const ElementaryPhaseForm& a, std::shared_ptr<const RelatorLattice> lat) {
  require_same_basis(a, *lat->basis, "restrict_to");
  return {a, std::move(lat)};
}

/// b/a kills a generating set of Z.
inline bool same_phase_form(const ElementaryPhaseForm& a, const ElementaryPhaseForm& b, const RelatorLattice& lat,
                            double tol = phase_tol) {
  require_same_basis(a, *lat.basis, "same_phase_form");
  require_same_basis(b, *lat.basis, "same_phase_form");
  for (const FSVector& v : lat.generators)
    if (!phase_is_trivial(phase_of_vector(b, v) - phase_of_vector(a, v), tol))
      return false;
  return true;
}

inline bool same_phase_form(const PhaseForm& a, const PhaseForm& b, double tol = phase_tol) {
  return same_phase_form(a.rep, b.rep, *a.lattice, tol);
}

/// Extends to a character of E: kills all of Z.
inline bool extends_to_character(const ElementaryPhaseForm& a, const RelatorLattice& lat) {
  return same_phase_form(trivial_phase_form(lat.basis), a, lat);
}

struct MomentEntry {
  FSVector relator;
  Turn phase;
};

struct MomentTable {
  std::int64_t order = 0;
  std::vector<MomentEntry> entries;  // every relator of reduced length <= order
};

inline MomentTable moments(const ElementaryPhaseForm& a, const RelatorLattice& lat, std::int64_t m) {
  require_same_basis(a, *lat.basis, "moments");
  MomentTable t;
  t.order = m;
  for (FSVector& v : relators_up_to(lat, m)) {
    Turn ph = phase_of_vector(a, v);
    t.entries.push_back({std::move(v), ph});
  }
  return t;
}

/// Least m at which the moment tables of a and b differ by more than 1e-9
/// in phase, or nullopt if they agree through m_max.
inline std::optional<std::int64_t> first_divergent_moment(const ElementaryPhaseForm& a, const ElementaryPhaseForm& b,
                                                          const RelatorLattice& lat, std::int64_t m_max) {
  require_same_basis(a, *lat.basis, "first_divergent_moment");
  require_same_basis(b, *lat.basis, "first_divergent_moment");
  // relators come sorted by length, so the first disagreement is the least m
  for (const FSVector& v : relators_up_to(lat, m_max))
    if (!phase_is_trivial(phase_of_vector(a, v) - phase_of_vector(b, v), 1e-9))
      return reduced_length(v);
  return std::nullopt;
}

/// b(k) = (k,u) a(k), with u an element of G (same moduli as the dual).
inline ElementaryPhaseForm twist_by_group_element(const ElementaryPhaseForm& a, std::size_t u) {
  const auto& b = *a.basis;
  const auto& g = b.group;
  if (u >= g.order())
    fail("twist_by_group_element: element outside the group");
  ElementaryPhaseForm t = a;
  const auto L = g.exponent();
  for (std::size_t i = 0; i < b.p(); ++i)
    t.free[i] = a.free[i] + Turn::exact(g.phase_index(b.free[i], u), L);
  for (std::size_t j = 0; j < b.q(); ++j)
    if (g.phase_index(b.torsion[j], u) != 0)
      t.signs[j] = -t.signs[j];
  return t;
}

/// Elementary representative of a character of Z given on the rows of the
/// preimage lattice K: solve H theta = phases by back-substitution.  Rows
/// whose image in F(S) is the identity must carry phase 0.
inline ElementaryPhaseForm lift_phase_form(const RelatorLattice& lat, const std::vector<double>& row_phases) {
  const auto& b = *lat.basis;
  const auto& h = lat.preimage;
  if (row_phases.size() != h.size())
    fail("lift_phase_form: one phase per lattice row is required");
  const std::size_t n = b.dim();
  std::vector<double> theta(n, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    double r = row_phases[i];
    for (std::size_t j = i + 1; j < n; ++j)
      r -= static_cast<double>(h[i][j]) * theta[j];
    theta[i] = r / static_cast<double>(h[i][i]);
  }
  std::vector<Turn> free;
  for (std::size_t i = 0; i < b.p(); ++i)
    free.push_back(Turn::approx(theta[i]));
  std::vector<int> signs;
  for (std::size_t j = 0; j < b.q(); ++j) {
    Turn t = Turn::approx(theta[b.p() + j]);
    if (std::abs(t.value() - 0.5) < 1e-6)
      signs.push_back(-1);
    else if (t.distance_to_zero() < 1e-6)
      signs.push_back(1);
    else
      fail_contract("lift_phase_form: torsion coordinate " + std::to_string(j) + " has angle " + t.str() +
                    ", not 0 or 1/2");
  }
  return make_elementary(lat.basis, std::move(free), std::move(signs));
}

/// Abstract structure of the group of phase forms: U(1)^circles x Z/d_1 x ...
struct PhaseGroup {
  std::size_t circles = 0;
  std::vector<std::int64_t> finite;  // invariant factors > 1

  bool trivial() const { return circles == 0 && finite.empty(); }

  std::string str() const {
    if (trivial())
      return "trivial";
    std::string s;
    if (circles > 0)
      s = "U(1)^" + std::to_string(circles);
    for (std::int64_t d : finite)
      s += (s.empty() ? "" : " x ") + ("Z/" + std::to_string(d));
    return s;
  }
};

/// Z = K / T with T = <2 e_j>; the Smith form of T in a basis of K gives
/// Z ~ Z^p + sum Z/d_i, whose dual is U(1)^p x sum Z/d_i.
inline PhaseGroup phase_group_structure(const RelatorLattice& lat) {
  const auto& b = *lat.basis;
  PhaseGroup pg;
  pg.circles = b.p();
  if (b.q() == 0)
    return pg;
  IntMatrix coords;
  for (const IntRow& t : torsion_relations(b))
    coords.push_back(solve_in_basis(lat.preimage, t));
  std::vector<std::int64_t> d = smith_invariants(std::move(coords));
  if (d.size() != b.q())
    fail_contract("phase_group_structure: torsion relations are not independent");
  for (std::int64_t x : d)
    if (x > 1)
      pg.finite.push_back(x);
  return pg;
}

}  // namespace diffrakt

#endif
