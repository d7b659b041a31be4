// Weighted Dirac combs on a finite group: autocorrelation, diffraction,
// Bragg spectrum and the homometry predicate.
//
// Phase-bearing quantities use the plus-pairing coefficient
//   c(k) = (1/|G|) sum_x (k,x) rho(x) = dft(rho)(-k),
// so that a density built as sum_k c(k) conj(k,.) has c as its coefficients.
// The diffraction is omega(k) = |c(k)|^2 and the autocorrelation
// gamma = rho * rho~ is a function on G (density w.r.t. normalized Haar);
// it acts on test functions by gamma(F) = (1/|G|) sum_x gamma(x) F(x).

#ifndef DIFFRAKT_DENSITY_HPP_
#define DIFFRAKT_DENSITY_HPP_

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "abelian.hpp"

namespace diffrakt {

constexpr double default_rel_tol = 1e-9;

/// A weighted Dirac comb sum_x w_x delta_x on G.
struct Density {
  FiniteAbelianGroup group;
  std::vector<cplx> weights;

  Density() = default;
  Density(FiniteAbelianGroup g, std::vector<cplx> w) : group(std::move(g)), weights(std::move(w)) {
    if (weights.size() != group.order())
      fail("density has " + std::to_string(weights.size()) + " weights, group order is " +
           std::to_string(group.order()));
  }

  static Density real(FiniteAbelianGroup g, const std::vector<double>& w) {
    return Density(std::move(g), std::vector<cplx>(w.begin(), w.end()));
  }

  GroupFunction function() const { return GroupFunction(group, weights); }

  double max_abs() const {
    double m = 0;
    for (const cplx& w : weights)
      m = std::max(m, std::abs(w));
    return m;
  }

  bool is_real(double rel_tol = 1e-12) const {
    double scale = std::max(1.0, max_abs());
    return std::all_of(weights.begin(), weights.end(),
                       [&](const cplx& w) { return std::abs(w.imag()) <= rel_tol * scale; });
  }

  bool is_nonnegative(double rel_tol = 1e-12) const {
    double scale = std::max(1.0, max_abs());
    return is_real(rel_tol) && std::all_of(weights.begin(), weights.end(), [&](const cplx& w) {
             return w.real() >= -rel_tol * scale;
           });
  }
};

/// A nonnegative real weight per element: a diffraction measure on the dual.
struct PointMeasure {
  FiniteAbelianGroup group;
  std::vector<double> weights;
  double tol = default_rel_tol;

  PointMeasure() = default;
  PointMeasure(FiniteAbelianGroup g, std::vector<double> w, double t = default_rel_tol)
      : group(std::move(g)), weights(std::move(w)), tol(t) {
    if (weights.size() != group.order())
      fail("measure has " + std::to_string(weights.size()) + " weights, group order is " +
           std::to_string(group.order()));
    if (!(tol >= 0))
      fail("measure tolerance must be nonnegative");
    for (double v : weights)
      if (!(v >= 0) || !std::isfinite(v))
        fail("measure weights must be finite and nonnegative");
  }

  double max() const { return weights.empty() ? 0.0 : *std::max_element(weights.begin(), weights.end()); }
  double total() const {
    double s = 0;
    for (double v : weights)
      s += v;
    return s;
  }
  double operator[](std::size_t k) const { return weights[k]; }
};

/// omega(-k) == omega(k) within rel_tol of the peak.
inline bool is_symmetric(const PointMeasure& omega, double rel_tol = default_rel_tol) {
  const double scale = omega.max();
  for (std::size_t k = 0; k < omega.weights.size(); ++k)
    if (std::abs(omega.weights[k] - omega.weights[omega.group.neg(k)]) > rel_tol * scale)
      return false;
  return true;
}

/// Atoms of a diffraction measure above a relative threshold.
struct BraggSpectrum {
  FiniteAbelianGroup group;
  std::vector<std::size_t> elements;  // ascending
  double rel_tol = default_rel_tol;
  double threshold = 0;

  std::size_t size() const { return elements.size(); }
  bool contains(std::size_t k) const { return std::binary_search(elements.begin(), elements.end(), k); }
  bool contains_zero() const { return !elements.empty() && elements.front() == 0; }
};

/// c(k) = (1/|G|) sum_x (k,x) rho(x).
inline cplx phase_coefficient(const Density& rho, std::size_t k) {
  const auto& g = rho.group;
  cplx acc = 0.0;
  for (std::size_t x = 0; x < g.order(); ++x)
    acc += g.pairing(k, x) * rho.weights[x];
  return acc / static_cast<double>(g.order());
}

/// All plus-pairing coefficients, via dft(rho)(-k).
inline std::vector<cplx> phase_coefficients(const Density& rho) {
  GroupFunction hat = dft(rho.function());
  std::vector<cplx> c(rho.group.order());
  for (std::size_t k = 0; k < c.size(); ++k)
    c[k] = hat.values[rho.group.neg(k)];
  return c;
}

/// gamma = rho * rho~.
inline GroupFunction autocorrelation(const Density& rho) {
  GroupFunction f = rho.function();
  return convolve(f, involute(f));
}

/// gamma(F) = (1/|G|) sum_x gamma(x) F(x).
inline cplx apply_measure(const GroupFunction& gamma, const GroupFunction& f) {
  require_same_group(gamma.group, f.group, "apply_measure");
  cplx acc = 0.0;
  for (std::size_t x = 0; x < f.size(); ++x)
    acc += gamma.values[x] * f.values[x];
  return acc / static_cast<double>(f.group.order());
}

/// omega(k) = |c(k)|^2.
inline PointMeasure diffraction(const Density& rho, double tol = default_rel_tol) {
  std::vector<cplx> c = phase_coefficients(rho);
  std::vector<double> w(c.size());
  for (std::size_t k = 0; k < c.size(); ++k)
    w[k] = std::norm(c[k]);
  return PointMeasure(rho.group, std::move(w), tol);
}

/// The autocorrelation determined by a diffraction measure:
/// gamma(t) = sum_k omega(k) conj(k,t), so that dft(gamma)(-k) = omega(k).
inline GroupFunction autocorrelation_of(const PointMeasure& omega) {
  std::vector<cplx> w(omega.weights.size());
  for (std::size_t k = 0; k < w.size(); ++k)
    w[k] = omega.weights[omega.group.neg(k)];
  return idft(GroupFunction(omega.group, std::move(w)));
}

/// max_k |dft(gamma)(-k) - omega(k)| / max omega, with gamma from the
/// direct convolution.  Zero up to rounding for every density.
inline double wiener_khinchin_residual(const Density& rho) {
  PointMeasure omega = diffraction(rho);
  GroupFunction gh = dft(autocorrelation(rho));
  double worst = 0;
  for (std::size_t k = 0; k < gh.size(); ++k)
    worst = std::max(worst, std::abs(gh.values[rho.group.neg(k)] - omega.weights[k]));
  double scale = omega.max();
  return scale > 0 ? worst / scale : worst;
}

inline BraggSpectrum bragg_spectrum(const PointMeasure& omega, double rel_tol = default_rel_tol) {
  const double peak = omega.max();
  if (!(peak > 0))
    fail("empty diffraction: all weights are zero");
  BraggSpectrum s;
  s.group = omega.group;
  s.rel_tol = rel_tol;
  s.threshold = rel_tol * peak;
  for (std::size_t k = 0; k < omega.weights.size(); ++k)
    if (omega.weights[k] > s.threshold)
      s.elements.push_back(k);
  for (std::size_t k : s.elements)
    if (!s.contains(omega.group.neg(k)))
      fail("Bragg spectrum is not symmetric: " + omega.group.element_str(k) + " is a peak but " +
           omega.group.element_str(omega.group.neg(k)) + " is not");
  return s;
}

/// |sum_k |F^(k)|^2 omega(k) - gamma(F * F~)| relative to the larger side.
inline double transform_identity_check(const Density& rho, const GroupFunction& f) {
  require_same_group(rho.group, f.group, "transform_identity_check");
  PointMeasure omega = diffraction(rho);
  GroupFunction fh = dft(f);
  double lhs = 0;
  for (std::size_t k = 0; k < fh.size(); ++k)
    lhs += std::norm(fh.values[k]) * omega.weights[k];
  cplx rhs = apply_measure(autocorrelation(rho), convolve(f, involute(f)));
  double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
  return std::abs(lhs - rhs) / scale;
}

/// Equality of diffraction, pointwise within rel_tol of the larger peak.
inline bool homometric(const Density& a, const Density& b, double rel_tol = default_rel_tol) {
  require_same_group(a.group, b.group, "homometric");
  PointMeasure wa = diffraction(a);
  PointMeasure wb = diffraction(b);
  double scale = std::max(wa.max(), wb.max());
  for (std::size_t k = 0; k < wa.weights.size(); ++k)
    if (std::abs(wa.weights[k] - wb.weights[k]) > rel_tol * scale)
      return false;
  return true;
}

/// (T_t rho)(x) = rho(x - t).
inline Density translate(const Density& rho, std::size_t t) {
  GroupFunction f = translate(rho.function(), t);
  return Density(rho.group, std::move(f.values));
}

}  // namespace diffrakt

#endif
