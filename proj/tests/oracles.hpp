// Brute-force reference computations used by the tests.  Nothing here calls
// into the library's transforms, pairing tables or lattice code.

#ifndef DIFFRAKT_TESTS_ORACLES_HPP_
#define DIFFRAKT_TESTS_ORACLES_HPP_

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
using Coords = std::vector<std::int64_t>;

inline std::size_t order(const Coords& moduli) {
  std::size_t n = 1;
  for (auto m : moduli)
    n *= static_cast<std::size_t>(m);
  return n;
}

// mixed radix, last coordinate fastest
inline Coords coords(const Coords& moduli, std::size_t idx) {
  Coords c(moduli.size());
  for (std::size_t i = moduli.size(); i-- > 0;) {
    c[i] = static_cast<std::int64_t>(idx % static_cast<std::size_t>(moduli[i]));
    idx /= static_cast<std::size_t>(moduli[i]);
  }
  return c;
}

inline std::size_t index(const Coords& moduli, const Coords& c) {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    std::int64_t v = ((c[i] % moduli[i]) + moduli[i]) % moduli[i];
    idx = idx * static_cast<std::size_t>(moduli[i]) + static_cast<std::size_t>(v);
  }
  return idx;
}

inline std::size_t add(const Coords& moduli, std::size_t a, std::size_t b) {
  Coords x = coords(moduli, a), y = coords(moduli, b);
  for (std::size_t i = 0; i < x.size(); ++i)
    x[i] += y[i];
  return index(moduli, x);
}

inline std::size_t neg(const Coords& moduli, std::size_t a) {
  Coords x = coords(moduli, a);
  for (auto& v : x)
    v = -v;
  return index(moduli, x);
}

/// (k, x) = exp(2 pi i sum k_j x_j / m_j) via std::polar on the float angle.
inline cplx pairing(const Coords& moduli, std::size_t k, std::size_t x) {
  Coords a = coords(moduli, k), b = coords(moduli, x);
  double t = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    t += static_cast<double>(a[i] * b[i]) / static_cast<double>(moduli[i]);
  return std::polar(1.0, 2 * std::numbers::pi * t);
}

/// c(k) = (1/|G|) sum_x (k,x) rho(x).
inline std::vector<cplx> plus_coefficients(const Coords& moduli, const std::vector<cplx>& rho) {
  const std::size_t n = order(moduli);
  std::vector<cplx> c(n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t x = 0; x < n; ++x)
      c[k] += pairing(moduli, k, x) * rho[x];
    c[k] /= static_cast<double>(n);
  }
  return c;
}

/// (1/|G|) sum_x conj (k,x) f(x).
inline std::vector<cplx> dft(const Coords& moduli, const std::vector<cplx>& f) {
  const std::size_t n = order(moduli);
  std::vector<cplx> h(n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t x = 0; x < n; ++x)
      h[k] += std::conj(pairing(moduli, k, x)) * f[x];
    h[k] /= static_cast<double>(n);
  }
  return h;
}

/// gamma(t) = (1/|G|) sum_s rho(s) conj rho(s - t).
inline std::vector<cplx> autocorrelation(const Coords& moduli, const std::vector<cplx>& rho) {
  const std::size_t n = order(moduli);
  std::vector<cplx> g(n);
  for (std::size_t t = 0; t < n; ++t) {
    for (std::size_t s = 0; s < n; ++s)
      g[t] += rho[s] * std::conj(rho[add(moduli, s, neg(moduli, t))]);
    g[t] /= static_cast<double>(n);
  }
  return g;
}

/// rho(x) = sum_k h(k) conj (k,x).
inline std::vector<cplx> synthesize(const Coords& moduli, const std::vector<cplx>& h) {
  const std::size_t n = order(moduli);
  std::vector<cplx> r(n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t k = 0; k < n; ++k)
      r[x] += h[k] * std::conj(pairing(moduli, k, x));
  return r;
}

/// The factored polynomial whose values at sixth roots of unity are
/// 6 c(k) for the density (11,25,42,45,31,14) on Z/6.
inline cplx z6_polynomial(cplx w) { return (w + 1.0) * (w * w + w + 1.0) * (2.0 * w * w + 5.0) * (3.0 * w + 1.0); }

/// All ordered tuples in S^m summing to 0, reported by their multiplicity
/// vector over S.
inline std::set<std::vector<int>> zero_sum_counts(const Coords& moduli, const std::vector<std::size_t>& s, int m) {
  std::set<std::vector<int>> out;
  std::vector<int> counts(s.size(), 0);
  std::function<void(std::size_t, int, std::size_t)> rec = [&](std::size_t from, int left, std::size_t sum) {
    if (left == 0) {
      if (sum == 0)
        out.insert(counts);
      return;
    }
    for (std::size_t i = from; i < s.size(); ++i) {
      ++counts[i];
      rec(i, left - 1, add(moduli, sum, s[i]));
      --counts[i];
    }
  };
  rec(0, m, 0);
  return out;
}

/// Unit-orbit closure by listing the multiplicative units of Z/M.
inline std::set<std::pair<std::int64_t, std::int64_t>> orbit_violations(std::int64_t M,
                                                                        const std::set<std::int64_t>& s) {
  std::set<std::pair<std::int64_t, std::int64_t>> out;
  for (std::int64_t k : s) {
    std::int64_t ord = 1;
    while ((ord * k) % M != 0)
      ++ord;
    for (std::int64_t j = 1; j < ord; ++j) {
      std::int64_t a = j, b = ord;
      while (b) {
        std::int64_t t = a % b;
        a = b;
        b = t;
      }
      if (a == 1 && !s.count((j * k) % M))
        out.insert({k, j});
    }
  }
  return out;
}

/// Random moduli with product <= max_order.
inline Coords random_moduli(std::mt19937_64& rng, std::size_t max_order) {
  std::uniform_int_distribution<int> nf(1, 3);
  for (;;) {
    int f = nf(rng);
    Coords m;
    std::size_t prod = 1;
    for (int i = 0; i < f; ++i) {
      std::uniform_int_distribution<int> md(1, 12);
      m.push_back(md(rng));
      prod *= static_cast<std::size_t>(m.back());
    }
    if (prod <= max_order && prod >= 1)
      return m;
  }
}

}  // namespace oracle

#endif
