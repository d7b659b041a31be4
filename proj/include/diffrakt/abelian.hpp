// Finite abelian groups Z/m_1 x ... x Z/m_d and their harmonic analysis.
//
// Elements are addressed by a flat index in lexicographic coordinate order
// (first coordinate most significant).  The same index set serves as the
// dual group; the pairing is exp(2 pi i sum_j k_j x_j / m_j).
//
// Haar measure on G has total mass 1; the dual carries counting measure:
//   dft(f)(k)  = (1/|G|) sum_x conj(k,x) f(x)
//   idft(h)(x) = sum_k (k,x) h(k)
//   (f * g)(t) = (1/|G|) sum_s f(t - s) g(s)

#ifndef DIFFRAKT_ABELIAN_HPP_
#define DIFFRAKT_ABELIAN_HPP_

#include <algorithm>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "error.hpp"
#include "turn.hpp"

namespace diffrakt {

using Element = std::vector<std::int64_t>;

class FiniteAbelianGroup {
public:
  static constexpr std::size_t default_cap = 1'000'000;

  FiniteAbelianGroup() : FiniteAbelianGroup(std::vector<std::int64_t>{1}) {}

  explicit FiniteAbelianGroup(std::vector<std::int64_t> moduli, std::size_t cap = default_cap)
      : moduli_(std::move(moduli)) {
    if (moduli_.empty())
      fail("group needs at least one modulus");
    std::size_t order = 1;
    std::int64_t exponent = 1;
    for (std::int64_t m : moduli_) {
      if (m < 1)
        fail("modulus must be >= 1, got " + std::to_string(m));
      if (order > cap / static_cast<std::size_t>(m))
        fail_cap("group order exceeds cap " + std::to_string(cap));
      order *= static_cast<std::size_t>(m);
      exponent = std::lcm(exponent, m);
    }
    order_ = order;
    exponent_ = exponent;
    strides_.assign(moduli_.size(), 1);
    for (std::size_t j = moduli_.size() - 1; j > 0; --j)
      strides_[j - 1] = strides_[j] * static_cast<std::size_t>(moduli_[j]);
    scale_.resize(moduli_.size());
    for (std::size_t j = 0; j < moduli_.size(); ++j)
      scale_[j] = exponent_ / moduli_[j];
    auto roots = std::make_shared<std::vector<cplx>>(static_cast<std::size_t>(exponent_));
    for (std::int64_t j = 0; j < exponent_; ++j)
      (*roots)[static_cast<std::size_t>(j)] = unit_root(j, exponent_);
    roots_ = std::move(roots);
  }

  const std::vector<std::int64_t>& moduli() const { return moduli_; }
  std::size_t rank() const { return moduli_.size(); }
  std::size_t order() const { return order_; }
  /// lcm of the moduli; every pairing value is an exponent()-th root of unity.
  std::int64_t exponent() const { return exponent_; }

  bool is_cyclic_factor() const { return moduli_.size() == 1; }

  std::size_t index(const Element& e) const {
    if (e.size() != moduli_.size())
      fail("element has " + std::to_string(e.size()) + " coordinates, group has " +
           std::to_string(moduli_.size()));
    std::size_t idx = 0;
    for (std::size_t j = 0; j < e.size(); ++j)
      idx += static_cast<std::size_t>(detail::floor_mod(e[j], moduli_[j])) * strides_[j];
    return idx;
  }

  Element element(std::size_t idx) const {
    Element e(moduli_.size());
    for (std::size_t j = 0; j < moduli_.size(); ++j) {
      e[j] = static_cast<std::int64_t>(idx / strides_[j]);
      idx %= strides_[j];
    }
    return e;
  }

  std::int64_t coord(std::size_t idx, std::size_t axis) const {
    return static_cast<std::int64_t>((idx / strides_[axis]) % static_cast<std::size_t>(moduli_[axis]));
  }

  std::size_t add(std::size_t a, std::size_t b) const {
    std::size_t r = 0;
    for (std::size_t j = 0; j < moduli_.size(); ++j) {
      std::int64_t c = coord(a, j) + coord(b, j);
      if (c >= moduli_[j])
        c -= moduli_[j];
      r += static_cast<std::size_t>(c) * strides_[j];
    }
    return r;
  }

  std::size_t neg(std::size_t a) const {
    std::size_t r = 0;
    for (std::size_t j = 0; j < moduli_.size(); ++j) {
      std::int64_t c = coord(a, j);
      r += static_cast<std::size_t>(c == 0 ? 0 : moduli_[j] - c) * strides_[j];
    }
    return r;
  }

  std::size_t sub(std::size_t a, std::size_t b) const { return add(a, neg(b)); }

  std::size_t multiple(std::size_t a, std::int64_t n) const {
    std::size_t r = 0;
    for (std::size_t j = 0; j < moduli_.size(); ++j) {
      __int128 c = static_cast<__int128>(coord(a, j)) * n;
      std::int64_t m = moduli_[j];
      std::int64_t red = static_cast<std::int64_t>(((c % m) + m) % m);
      r += static_cast<std::size_t>(red) * strides_[j];
    }
    return r;
  }

  /// Additive order of an element.
  std::int64_t element_order(std::size_t a) const {
    std::int64_t o = 1;
    for (std::size_t j = 0; j < moduli_.size(); ++j) {
      std::int64_t c = coord(a, j);
      o = std::lcm(o, moduli_[j] / std::gcd(c, moduli_[j]));
    }
    return o;
  }

  /// j with (k,x) = e^{2 pi i j / exponent()}, 0 <= j < exponent().
  std::int64_t phase_index(std::size_t k, std::size_t x) const {
    __int128 acc = 0;
    for (std::size_t j = 0; j < moduli_.size(); ++j)
      acc += static_cast<__int128>(coord(k, j)) * coord(x, j) % moduli_[j] * scale_[j];
    return static_cast<std::int64_t>(acc % exponent_);
  }

  Turn pairing_turn(std::size_t k, std::size_t x) const { return Turn::exact(phase_index(k, x), exponent_); }

  cplx pairing(std::size_t k, std::size_t x) const { return root(phase_index(k, x)); }

  /// e^{2 pi i j / exponent()}.
  const cplx& root(std::int64_t j) const {
    return (*roots_)[static_cast<std::size_t>(detail::floor_mod(j, exponent_))];
  }

  std::int64_t axis_scale(std::size_t axis) const { return scale_[axis]; }
  std::size_t stride(std::size_t axis) const { return strides_[axis]; }

  std::string str() const {
    std::string s;
    for (std::size_t j = 0; j < moduli_.size(); ++j) {
      if (j)
        s += " x ";
      s += "Z/" + std::to_string(moduli_[j]);
    }
    return s;
  }

  std::string element_str(std::size_t idx) const {
    Element e = element(idx);
    if (e.size() == 1)
      return std::to_string(e[0]);
    std::string s = "(";
    for (std::size_t j = 0; j < e.size(); ++j)
      s += (j ? "," : "") + std::to_string(e[j]);
    return s + ")";
  }

  friend bool operator==(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) {
    return a.moduli_ == b.moduli_;
  }

private:
  std::vector<std::int64_t> moduli_;
  std::vector<std::size_t> strides_;
  std::vector<std::int64_t> scale_;
  std::size_t order_ = 1;
  std::int64_t exponent_ = 1;
  std::shared_ptr<const std::vector<cplx>> roots_;
};

inline FiniteAbelianGroup make_group(std::vector<std::int64_t> moduli,
                                     std::size_t cap = FiniteAbelianGroup::default_cap) {
  return FiniteAbelianGroup(std::move(moduli), cap);
}

inline cplx pairing(const FiniteAbelianGroup& g, const Element& k, const Element& x) {
  return g.pairing(g.index(k), g.index(x));
}

inline void require_same_group(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b,
                               const char* what) {
  if (!(a == b))
    fail(std::string(what) + ": group mismatch (" + a.str() + " vs " + b.str() + ")");
}

/// A complex-valued function on G (or on the dual), lexicographic order.
struct GroupFunction {
  FiniteAbelianGroup group;
  std::vector<cplx> values;

  GroupFunction() = default;
  explicit GroupFunction(FiniteAbelianGroup g) : group(std::move(g)), values(group.order()) {}
  GroupFunction(FiniteAbelianGroup g, std::vector<cplx> v) : group(std::move(g)), values(std::move(v)) {
    if (values.size() != group.order())
      fail("function has " + std::to_string(values.size()) + " values, group order is " +
           std::to_string(group.order()));
  }

  std::size_t size() const { return values.size(); }
  cplx& operator[](std::size_t i) { return values[i]; }
  const cplx& operator[](std::size_t i) const { return values[i]; }

  static GroupFunction delta(const FiniteAbelianGroup& g, std::size_t at, cplx weight = 1.0) {
    GroupFunction f(g);
    f.values.at(at) = weight;
    return f;
  }

  static GroupFunction constant(const FiniteAbelianGroup& g, cplx c) {
    return GroupFunction(g, std::vector<cplx>(g.order(), c));
  }
};

namespace detail {

// One-dimensional transform along `axis`: out[k] = sum_x root(sign*k*x) in[x].
// Summation order per output entry is fixed (x ascending).
inline void transform_axis(const FiniteAbelianGroup& g, std::vector<cplx>& data, std::size_t axis, int sign) {
  const std::int64_t m = g.moduli()[axis];
  if (m == 1)
    return;
  const std::size_t stride = g.stride(axis);
  const std::size_t block = stride * static_cast<std::size_t>(m);
  const std::int64_t scale = g.axis_scale(axis);
  std::vector<cplx> line(static_cast<std::size_t>(m));
  for (std::size_t base = 0; base < data.size(); base += block) {
    for (std::size_t off = 0; off < stride; ++off) {
      const std::size_t start = base + off;
      for (std::int64_t k = 0; k < m; ++k) {
        cplx acc = 0.0;
        for (std::int64_t x = 0; x < m; ++x)
          acc += g.root(sign * ((k * x) % m) * scale) * data[start + static_cast<std::size_t>(x) * stride];
        line[static_cast<std::size_t>(k)] = acc;
      }
      for (std::int64_t k = 0; k < m; ++k)
        data[start + static_cast<std::size_t>(k) * stride] = line[static_cast<std::size_t>(k)];
    }
  }
}

}  // namespace detail

/// Fourier transform with the conjugated character, normalized Haar on G.
inline GroupFunction dft(const GroupFunction& f) {
  GroupFunction out = f;
  for (std::size_t axis = 0; axis < f.group.rank(); ++axis)
    detail::transform_axis(f.group, out.values, axis, -1);
  const double inv = 1.0 / static_cast<double>(f.group.order());
  for (cplx& v : out.values)
    v *= inv;
  return out;
}

/// Inverse of dft(): counting measure on the dual.
inline GroupFunction idft(const GroupFunction& h) {
  GroupFunction out = h;
  for (std::size_t axis = 0; axis < h.group.rank(); ++axis)
    detail::transform_axis(h.group, out.values, axis, +1);
  return out;
}

/// Normalized convolution, computed directly from the definition.
inline GroupFunction convolve(const GroupFunction& f, const GroupFunction& g) {
  require_same_group(f.group, g.group, "convolve");
  const auto& grp = f.group;
  const std::size_t n = grp.order();
  GroupFunction out(grp);
  std::vector<std::size_t> negs(n);
  for (std::size_t s = 0; s < n; ++s)
    negs[s] = grp.neg(s);
  const double inv = 1.0 / static_cast<double>(n);
  for (std::size_t t = 0; t < n; ++t) {
    cplx acc = 0.0;
    for (std::size_t s = 0; s < n; ++s)
      acc += f.values[grp.add(t, negs[s])] * g.values[s];
    out.values[t] = acc * inv;
  }
  return out;
}

/// f~(x) = conj(f(-x)).
inline GroupFunction involute(const GroupFunction& f) {
  GroupFunction out(f.group);
  for (std::size_t x = 0; x < f.size(); ++x)
    out.values[x] = std::conj(f.values[f.group.neg(x)]);
  return out;
}

/// (T_t f)(x) = f(x - t).
inline GroupFunction translate(const GroupFunction& f, std::size_t t) {
  GroupFunction out(f.group);
  for (std::size_t x = 0; x < f.size(); ++x)
    out.values[x] = f.values[f.group.sub(x, t)];
  return out;
}

/// A subgroup with its membership table.
struct Subgroup {
  FiniteAbelianGroup group;
  std::vector<std::size_t> generators;
  std::vector<std::size_t> members;  // ascending
  std::vector<char> membership;

  std::size_t order() const { return members.size(); }
  bool contains(std::size_t x) const { return x < membership.size() && membership[x]; }
};

namespace detail {

inline Subgroup close_under_addition(const FiniteAbelianGroup& g, std::vector<std::size_t> gens) {
  Subgroup h;
  h.group = g;
  h.membership.assign(g.order(), 0);
  h.membership[0] = 1;
  std::vector<std::size_t> queue{0};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (std::size_t s : gens) {
      std::size_t y = g.add(queue[i], s);
      if (!h.membership[y]) {
        h.membership[y] = 1;
        queue.push_back(y);
      }
    }
  }
  std::sort(queue.begin(), queue.end());
  h.members = std::move(queue);
  h.generators = std::move(gens);
  return h;
}

}  // namespace detail

/// Smallest subgroup containing gens.
inline Subgroup subgroup_generated(const FiniteAbelianGroup& g, const std::vector<std::size_t>& gens) {
  for (std::size_t x : gens)
    if (x >= g.order())
      fail("generator index " + std::to_string(x) + " outside group of order " + std::to_string(g.order()));
  return detail::close_under_addition(g, gens);
}

/// Subgroup of G on which every character in `dual_sub` is trivial.
inline Subgroup annihilator(const Subgroup& dual_sub) {
  const auto& g = dual_sub.group;
  std::vector<std::size_t> members;
  for (std::size_t x = 0; x < g.order(); ++x) {
    bool killed = true;
    for (std::size_t k : dual_sub.generators)
      if (g.phase_index(k, x) != 0) {
        killed = false;
        break;
      }
    if (killed)
      members.push_back(x);
  }
  // greedy generating set
  std::vector<std::size_t> gens;
  std::vector<char> seen(g.order(), 0);
  seen[0] = 1;
  for (std::size_t x : members) {
    if (seen[x])
      continue;
    gens.push_back(x);
    Subgroup partial = detail::close_under_addition(g, gens);
    seen = partial.membership;
  }
  Subgroup h = detail::close_under_addition(g, gens);
  if (h.members != members)
    fail_contract("annihilator: greedy generators do not reproduce the member set");
  return h;
}

/// Cosets G/H with deterministic representatives (least index in each coset).
struct CosetSpace {
  FiniteAbelianGroup group;
  Subgroup sub;
  std::vector<std::size_t> representatives;  // ascending
  std::vector<std::size_t> coset_of;         // element index -> coset number

  std::size_t size() const { return representatives.size(); }
  /// Coset reached from coset c by adding x.
  std::size_t shift(std::size_t c, std::size_t x) const { return coset_of[group.add(representatives[c], x)]; }
};

inline CosetSpace quotient(const FiniteAbelianGroup& g, const Subgroup& sub) {
  require_same_group(g, sub.group, "quotient");
  CosetSpace q;
  q.group = g;
  q.sub = sub;
  const std::size_t none = static_cast<std::size_t>(-1);
  q.coset_of.assign(g.order(), none);
  for (std::size_t x = 0; x < g.order(); ++x) {
    if (q.coset_of[x] != none)
      continue;
    const std::size_t c = q.representatives.size();
    q.representatives.push_back(x);
    for (std::size_t h : sub.members)
      q.coset_of[g.add(x, h)] = c;
  }
  return q;
}

}  // namespace diffrakt

#endif
