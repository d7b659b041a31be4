// Relators of a Bragg spectrum S.
//
// F(S) is the abelian group on symbols e(k), k in S, with e(0) = 1 and
// e(-k) e(k) = 1.  Choosing one representative per pair {k, -k} gives
// F(S) ~ Z^p + (Z/2)^q, where the q torsion generators are the k != 0 with
// 2k = 0.  The relator group Z is the kernel of the sum map F(S) -> E = <S>.
//
// Lattice computations happen in Z^(p+q): the preimage K of Z contains
// 2 e_j for each torsion coordinate j, and subgroups of F(S) are compared
// through the Hermite normal form of their preimages.

#ifndef DIFFRAKT_RELATORS_HPP_
#define DIFFRAKT_RELATORS_HPP_

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "abelian.hpp"
#include "density.hpp"
#include "lattice.hpp"

namespace diffrakt {

struct GeneratorBasis {
  FiniteAbelianGroup group;          // the dual group holding S
  std::vector<std::size_t> spectrum; // S, ascending
  std::vector<std::size_t> free;     // one representative per pair {k,-k}, ascending
  std::vector<std::size_t> torsion;  // k != 0 with 2k = 0, ascending
  bool has_zero = false;

  std::size_t p() const { return free.size(); }
  std::size_t q() const { return torsion.size(); }
  std::size_t dim() const { return free.size() + torsion.size(); }

  enum class Kind { zero, plus, minus, torsion };
  struct Slot {
    Kind kind;
    std::size_t pos;
  };

  bool contains(std::size_t k) const { return std::binary_search(spectrum.begin(), spectrum.end(), k); }

  Slot slot(std::size_t k) const {
    if (!contains(k))
      fail(group.element_str(k) + " is not in the Bragg spectrum");
    if (k == 0)
      return {Kind::zero, 0};
    if (auto it = std::lower_bound(torsion.begin(), torsion.end(), k); it != torsion.end() && *it == k)
      return {Kind::torsion, static_cast<std::size_t>(it - torsion.begin())};
    if (auto it = std::lower_bound(free.begin(), free.end(), k); it != free.end() && *it == k)
      return {Kind::plus, static_cast<std::size_t>(it - free.begin())};
    std::size_t m = group.neg(k);
    auto it = std::lower_bound(free.begin(), free.end(), m);
    return {Kind::minus, static_cast<std::size_t>(it - free.begin())};
  }

  friend bool operator==(const GeneratorBasis& a, const GeneratorBasis& b) {
    return a.group == b.group && a.spectrum == b.spectrum;
  }
};

using BasisPtr = std::shared_ptr<const GeneratorBasis>;

/// Partition of a symmetric set S into zero, free pairs and torsion points.
inline BasisPtr canonical_basis(const FiniteAbelianGroup& dual, std::vector<std::size_t> spectrum) {
  std::sort(spectrum.begin(), spectrum.end());
  spectrum.erase(std::unique(spectrum.begin(), spectrum.end()), spectrum.end());
  auto b = std::make_shared<GeneratorBasis>();
  b->group = dual;
  b->spectrum = spectrum;
  for (std::size_t k : spectrum) {
    if (k >= dual.order())
      fail("spectrum element outside the dual group");
    std::size_t m = dual.neg(k);
    if (!std::binary_search(spectrum.begin(), spectrum.end(), m))
      fail("spectrum is not symmetric: missing " + dual.element_str(m));
    if (k == 0)
      b->has_zero = true;
    else if (m == k)
      b->torsion.push_back(k);
    else if (k < m)
      b->free.push_back(k);
  }
  return b;
}

inline BasisPtr canonical_basis(const BraggSpectrum& s) { return canonical_basis(s.group, s.elements); }

/// An element of F(S) in canonical coordinates.
struct FSVector {
  IntRow free;
  std::vector<std::uint8_t> torsion;

  static FSVector zero(const GeneratorBasis& b) { return {IntRow(b.p(), 0), std::vector<std::uint8_t>(b.q(), 0)}; }

  bool is_identity() const {
    return std::all_of(free.begin(), free.end(), [](std::int64_t v) { return v == 0; }) &&
           std::all_of(torsion.begin(), torsion.end(), [](std::uint8_t v) { return v == 0; });
  }

  FSVector operator+(const FSVector& o) const {
    FSVector r = *this;
    for (std::size_t i = 0; i < free.size(); ++i)
      r.free[i] = detail::checked_add(r.free[i], o.free[i]);
    for (std::size_t i = 0; i < torsion.size(); ++i)
      r.torsion[i] ^= o.torsion[i];
    return r;
  }

  FSVector operator-() const {
    FSVector r = *this;
    for (std::int64_t& v : r.free)
      v = -v;
    return r;
  }

  FSVector operator-(const FSVector& o) const { return *this + (-o); }

  friend bool operator==(const FSVector&, const FSVector&) = default;
  friend auto operator<=>(const FSVector&, const FSVector&) = default;

  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < free.size(); ++i)
      s += (i ? "," : "") + std::to_string(free[i]);
    if (!torsion.empty()) {
      s += " | ";
      for (std::size_t i = 0; i < torsion.size(); ++i)
        s += (i ? "," : "") + std::to_string(static_cast<int>(torsion[i]));
    }
    return s + ")";
  }
};

/// Class of a tuple (k_1, ..., k_m) of spectrum elements in F(S).
inline FSVector tuple_to_vector(const GeneratorBasis& b, std::span<const std::size_t> tuple) {
  FSVector v = FSVector::zero(b);
  for (std::size_t k : tuple) {
    auto slot = b.slot(k);
    switch (slot.kind) {
      case GeneratorBasis::Kind::zero: break;
      case GeneratorBasis::Kind::plus: v.free[slot.pos] += 1; break;
      case GeneratorBasis::Kind::minus: v.free[slot.pos] -= 1; break;
      case GeneratorBasis::Kind::torsion: v.torsion[slot.pos] ^= 1; break;
    }
  }
  return v;
}

/// The sum map F(S) -> E, e(k) |-> k.
inline std::size_t sum_map(const GeneratorBasis& b, const FSVector& v) {
  const auto& g = b.group;
  std::size_t acc = 0;
  for (std::size_t i = 0; i < b.p(); ++i)
    if (v.free[i] != 0)
      acc = g.add(acc, g.multiple(b.free[i], v.free[i]));
  for (std::size_t j = 0; j < b.q(); ++j)
    if (v.torsion[j])
      acc = g.add(acc, b.torsion[j]);
  return acc;
}

/// Length of the shortest tuple representing v: each symbol moves one
/// coordinate by one.
inline std::int64_t reduced_length(const FSVector& v) {
  std::int64_t n = 0;
  for (std::int64_t c : v.free)
    n = detail::checked_add(n, c < 0 ? -c : c);
  for (std::uint8_t t : v.torsion)
    n += t;
  return n;
}

/// A shortest tuple representing v (free symbols first, then torsion).
inline std::vector<std::size_t> shortest_tuple(const GeneratorBasis& b, const FSVector& v) {
  std::vector<std::size_t> t;
  for (std::size_t i = 0; i < b.p(); ++i) {
    std::size_t k = v.free[i] >= 0 ? b.free[i] : b.group.neg(b.free[i]);
    for (std::int64_t c = 0; c < (v.free[i] < 0 ? -v.free[i] : v.free[i]); ++c)
      t.push_back(k);
  }
  for (std::size_t j = 0; j < b.q(); ++j)
    if (v.torsion[j])
      t.push_back(b.torsion[j]);
  return t;
}

inline IntRow lift(const FSVector& v) {
  IntRow r = v.free;
  for (std::uint8_t t : v.torsion)
    r.push_back(t);
  return r;
}

inline FSVector project(const GeneratorBasis& b, const IntRow& row) {
  FSVector v = FSVector::zero(b);
  for (std::size_t i = 0; i < b.p(); ++i)
    v.free[i] = row[i];
  for (std::size_t j = 0; j < b.q(); ++j)
    v.torsion[j] = static_cast<std::uint8_t>(detail::floor_mod(row[b.p() + j], 2));
  return v;
}

/// Rows 2 e_j for the torsion coordinates of Z^(p+q).
inline IntMatrix torsion_relations(const GeneratorBasis& b) {
  IntMatrix t;
  for (std::size_t j = 0; j < b.q(); ++j) {
    IntRow r(b.dim(), 0);
    r[b.p() + j] = 2;
    t.push_back(std::move(r));
  }
  return t;
}

/// The relator group Z = ker(F(S) -> E).
struct RelatorLattice {
  BasisPtr basis;
  Subgroup span;                   // E = <S>
  IntMatrix preimage;              // HNF of K, the preimage of Z in Z^(p+q)
  std::vector<FSVector> generators;  // images of the rows of K, identity dropped

  bool trivial() const { return generators.empty(); }
  /// |Z^(p+q) / K|, which equals |F(S) / Z| = |E|.
  std::int64_t index() const { return preimage.empty() ? 1 : hnf_index(preimage); }
  bool contains(const FSVector& v) const { return sum_map(*basis, v) == 0; }
};

inline RelatorLattice relator_lattice(const BasisPtr& basis, const Subgroup& span) {
  const auto& b = *basis;
  require_same_group(b.group, span.group, "relator_lattice");
  for (std::size_t k : b.spectrum)
    if (!span.contains(k))
      fail("relator_lattice: subgroup does not contain the spectrum");
  Subgroup generated = subgroup_generated(b.group, b.spectrum);
  if (generated.members != span.members)
    fail("relator_lattice: subgroup is not generated by the spectrum");

  RelatorLattice lat;
  lat.basis = basis;
  lat.span = span;
  std::vector<IntRow> images;
  for (std::size_t k : b.free)
    images.push_back(b.group.element(k));
  for (std::size_t k : b.torsion)
    images.push_back(b.group.element(k));
  lat.preimage = kernel_mod(images, b.group.moduli());
  for (const IntRow& row : lat.preimage) {
    FSVector v = project(b, row);
    if (!v.is_identity())
      lat.generators.push_back(std::move(v));
  }
  for (const FSVector& v : lat.generators)
    if (sum_map(b, v) != 0)
      fail_contract("relator_lattice: generator " + v.str() + " is not a relator");
  if (lat.index() != static_cast<std::int64_t>(span.order()))
    fail_contract("relator_lattice: |F(S)/Z| = " + std::to_string(lat.index()) + " but |E| = " +
                  std::to_string(span.order()));
  return lat;
}

inline RelatorLattice relator_lattice(const BasisPtr& basis) {
  return relator_lattice(basis, subgroup_generated(basis->group, basis->spectrum));
}

constexpr std::size_t max_enumeration_dim = 12;
constexpr std::int64_t max_enumeration_length = 12;
constexpr std::size_t max_enumeration_nodes = 50'000'000;

/// Every relator of reduced length <= n, ordered by (length, coordinates).
inline std::vector<FSVector> relators_up_to(const RelatorLattice& lat, std::int64_t n) {
  const auto& b = *lat.basis;
  if (n < 0)
    fail("relators_up_to: length must be nonnegative");
  if (b.dim() > max_enumeration_dim)
    fail_cap("relator enumeration needs p + q <= " + std::to_string(max_enumeration_dim) + ", got " +
             std::to_string(b.dim()));
  if (n > max_enumeration_length)
    fail_cap("relator enumeration needs n <= " + std::to_string(max_enumeration_length));

  const auto& g = b.group;
  std::vector<FSVector> out;
  FSVector cur = FSVector::zero(b);
  std::size_t nodes = 0;

  // Depth-first over coordinates, tracking the running image in E.
  auto visit = [&](auto&& self, std::size_t coord, std::int64_t budget, std::size_t image) -> void {
    if (++nodes > max_enumeration_nodes)
      fail_cap("relator enumeration exceeded " + std::to_string(max_enumeration_nodes) + " nodes");
    if (coord == b.dim()) {
      if (image == 0)
        out.push_back(cur);
      return;
    }
    if (coord < b.p()) {
      const std::size_t k = b.free[coord];
      const std::size_t mk = g.neg(k);
      self(self, coord + 1, budget, image);
      std::size_t up = image, down = image;
      for (std::int64_t c = 1; c <= budget; ++c) {
        up = g.add(up, k);
        down = g.add(down, mk);
        cur.free[coord] = c;
        self(self, coord + 1, budget - c, up);
        cur.free[coord] = -c;
        self(self, coord + 1, budget - c, down);
      }
      cur.free[coord] = 0;
    } else {
      const std::size_t j = coord - b.p();
      self(self, coord + 1, budget, image);
      if (budget >= 1) {
        cur.torsion[j] = 1;
        self(self, coord + 1, budget - 1, g.add(image, b.torsion[j]));
        cur.torsion[j] = 0;
      }
    }
  };
  visit(visit, 0, n, 0);

  std::sort(out.begin(), out.end(), [](const FSVector& x, const FSVector& y) {
    std::int64_t lx = reduced_length(x), ly = reduced_length(y);
    if (lx != ly)
      return lx < ly;
    return x < y;
  });
  return out;
}

/// HNF of the preimage of <vs> in Z^(p+q).
inline IntMatrix generated_preimage(const GeneratorBasis& b, std::span<const FSVector> vs) {
  IntMatrix rows = torsion_relations(b);
  for (const FSVector& v : vs)
    rows.push_back(lift(v));
  if (rows.empty())
    return {};
  return hnf(std::move(rows));
}

/// Whether the relators of reduced length <= n generate Z.
inline bool generated_equals(const RelatorLattice& lat, std::int64_t n) {
  std::vector<FSVector> zn = relators_up_to(lat, n);
  return generated_preimage(*lat.basis, zn) == lat.preimage;
}

/// Least n with <Z_n> = Z, or nullopt if none up to n_max.  A trivial Z
/// gives 0.
inline std::optional<std::int64_t> n_zero(const RelatorLattice& lat, std::int64_t n_max) {
  if (lat.trivial())
    return 0;
  for (std::int64_t n = 1; n <= n_max; ++n)
    if (generated_equals(lat, n))
      return n;
  return std::nullopt;
}

struct CoveringNumber {
  std::optional<std::int64_t> r;  // least r with S + ... + S (r summands) = E

  std::optional<std::int64_t> bound() const {
    if (!r)
      return std::nullopt;
    return 2 * *r + 1;
  }
};

/// Least r such that the r-fold sumset of S is all of E.  Without 0 in S
/// the sumsets need not grow monotonically and may never cover E.
inline CoveringNumber covering_number(const GeneratorBasis& b, const Subgroup& span) {
  const auto& g = b.group;
  std::vector<char> cur(g.order(), 0);
  for (std::size_t k : b.spectrum)
    cur[k] = 1;
  const std::int64_t limit = 2 * static_cast<std::int64_t>(span.order()) + 2;
  for (std::int64_t r = 1; r <= limit; ++r) {
    std::size_t count = 0;
    for (std::size_t x : span.members)
      count += cur[x] ? 1 : 0;
    if (count == span.order())
      return {r};
    std::vector<char> next(g.order(), 0);
    for (std::size_t x = 0; x < g.order(); ++x)
      if (cur[x])
        for (std::size_t k : b.spectrum)
          next[g.add(x, k)] = 1;
    cur = std::move(next);
  }
  return {std::nullopt};
}

}  // namespace diffrakt

#endif
