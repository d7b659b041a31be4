// Integer lattices given by generator rows: Hermite normal form, Smith
// invariant factors, and kernels of maps Z^n -> Z/m_1 x ... x Z/m_d.
//
// All arithmetic is checked; overflow raises CapError.

#ifndef DIFFRAKT_LATTICE_HPP_
#define DIFFRAKT_LATTICE_HPP_

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <utility>
#include <vector>

#include "error.hpp"

namespace diffrakt {

using IntRow = std::vector<std::int64_t>;
using IntMatrix = std::vector<IntRow>;

namespace detail {

inline void axpy_row(IntRow& dst, const IntRow& src, std::int64_t q) {
  for (std::size_t j = 0; j < dst.size(); ++j)
    if (src[j] != 0)
      dst[j] = checked_add(dst[j], -checked_mul(q, src[j]));
}

inline bool is_zero(const IntRow& r) {
  for (std::int64_t v : r)
    if (v != 0)
      return false;
  return true;
}

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0)))
    --q;
  return q;
}

}  // namespace detail

/// Row Hermite normal form: echelon, positive pivots, entries above each
/// pivot reduced into [0, pivot).  Zero rows are dropped, so two generator
/// sets span the same lattice iff their HNFs are equal.
inline IntMatrix hnf(IntMatrix a) {
  if (a.empty())
    return a;
  const std::size_t cols = a.front().size();
  for (const IntRow& r : a)
    if (r.size() != cols)
      fail("hnf: ragged matrix");
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    while (true) {
      std::size_t best = a.size();
      for (std::size_t i = r; i < a.size(); ++i)
        if (a[i][c] != 0 && (best == a.size() || std::llabs(a[i][c]) < std::llabs(a[best][c])))
          best = i;
      if (best == a.size())
        break;
      std::swap(a[r], a[best]);
      bool done = true;
      for (std::size_t i = r + 1; i < a.size(); ++i) {
        if (a[i][c] == 0)
          continue;
        detail::axpy_row(a[i], a[r], a[i][c] / a[r][c]);
        if (a[i][c] != 0)
          done = false;
      }
      if (done)
        break;
    }
    if (r >= a.size() || a[r][c] == 0)
      continue;
    if (a[r][c] < 0)
      for (std::int64_t& v : a[r])
        v = -v;
    for (std::size_t i = 0; i < r; ++i)
      detail::axpy_row(a[i], a[r], detail::floor_div(a[i][c], a[r][c]));
    ++r;
  }
  a.resize(r);
  return a;
}

inline bool same_lattice(const IntMatrix& a, const IntMatrix& b) { return hnf(a) == hnf(b); }

/// Absolute determinant of a full-rank square HNF (product of pivots).
inline std::int64_t hnf_index(const IntMatrix& h) {
  std::int64_t d = 1;
  for (std::size_t i = 0; i < h.size(); ++i)
    d = detail::checked_mul(d, h[i][i]);
  return d;
}

/// Coefficients c with sum_i c_i h_i = v, for a square full-rank HNF h.
inline IntRow solve_in_basis(const IntMatrix& h, IntRow v) {
  IntRow c(h.size(), 0);
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (h[i][i] == 0)
      fail_contract("solve_in_basis: basis is not full rank");
    if (v[i] % h[i][i] != 0)
      fail_contract("solve_in_basis: vector is not in the lattice");
    c[i] = v[i] / h[i][i];
    detail::axpy_row(v, h[i], c[i]);
  }
  if (!detail::is_zero(v))
    fail_contract("solve_in_basis: residual after back-substitution");
  return c;
}

/// Nonzero Smith invariant factors d_1 | d_2 | ... of an integer matrix.
inline std::vector<std::int64_t> smith_invariants(IntMatrix a) {
  std::vector<std::int64_t> out;
  if (a.empty())
    return out;
  const std::size_t rows = a.size();
  const std::size_t cols = a.front().size();
  for (std::size_t t = 0; t < rows && t < cols; ++t) {
    while (true) {
      // smallest nonzero entry of the trailing block becomes the pivot
      std::size_t pi = rows, pj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (a[i][j] != 0 && (pi == rows || std::llabs(a[i][j]) < std::llabs(a[pi][pj]))) {
            pi = i;
            pj = j;
          }
      if (pi == rows) {
        std::sort(out.begin(), out.end());
        return out;
      }
      std::swap(a[t], a[pi]);
      for (std::size_t i = 0; i < rows; ++i)
        std::swap(a[i][t], a[i][pj]);
      const std::int64_t p = a[t][t];
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0)
          continue;
        detail::axpy_row(a[i], a[t], a[i][t] / p);
        if (a[i][t] != 0)
          clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0)
          continue;
        const std::int64_t q = a[t][j] / p;
        for (std::size_t i = 0; i < rows; ++i)
          a[i][j] = detail::checked_add(a[i][j], -detail::checked_mul(q, a[i][t]));
        if (a[t][j] != 0)
          clean = false;
      }
      if (!clean)
        continue;
      // divisibility: fold an offending row into the pivot row and retry
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a[i][j] % p != 0) {
            for (std::size_t jj = 0; jj < cols; ++jj)
              a[t][jj] = detail::checked_add(a[t][jj], a[i][jj]);
            divides = false;
            break;
          }
      if (divides) {
        out.push_back(std::llabs(p));
        break;
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Basis (square HNF) of {v in Z^n : sum_i v_i images[i] == 0 in Z/moduli}.
/// images[i] is the coordinate vector of the i-th generator's image.
inline IntMatrix kernel_mod(const std::vector<IntRow>& images, const IntRow& moduli) {
  const std::size_t n = images.size();
  const std::size_t d = moduli.size();
  if (n == 0)
    return {};
  IntMatrix m;
  m.reserve(n + d);
  for (std::size_t i = 0; i < n; ++i) {
    if (images[i].size() != d)
      fail("kernel_mod: image dimension mismatch");
    IntRow row(d + n, 0);
    for (std::size_t j = 0; j < d; ++j)
      row[j] = detail::floor_mod(images[i][j], moduli[j]);
    row[d + i] = 1;
    m.push_back(std::move(row));
  }
  for (std::size_t j = 0; j < d; ++j) {
    IntRow row(d + n, 0);
    row[j] = moduli[j];
    m.push_back(std::move(row));
  }
  IntMatrix h = hnf(std::move(m));
  IntMatrix ker;
  for (const IntRow& row : h) {
    bool head_zero = true;
    for (std::size_t j = 0; j < d; ++j)
      if (row[j] != 0) {
        head_zero = false;
        break;
      }
    if (head_zero)
      ker.emplace_back(row.begin() + static_cast<std::ptrdiff_t>(d), row.end());
  }
  ker = hnf(std::move(ker));
  if (ker.size() != n)
    fail_contract("kernel_mod: kernel lattice is not full rank");
  return ker;
}

}  // namespace diffrakt

#endif
