// Angles measured in full turns, reduced mod 1.
//
// A Turn is either an exact reduced fraction num/den or a floating value.
// Unit complex numbers are produced by quadrant reduction so that
// unit(-t) == conj(unit(t)) bit for bit and quarter turns are exact.

#ifndef DIFFRAKT_TURN_HPP_
#define DIFFRAKT_TURN_HPP_

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <string>

#include "error.hpp"

namespace diffrakt {

using cplx = std::complex<double>;

namespace detail {

// i^quarter * e^{2 pi i f/4}. With mirrored set, the argument is the
// complement g = 1 - f and (cos, sin) are swapped, so callers can pass g
// directly without the rounding of 1 - (1 - g).
inline cplx cis_quarters(int quarter, double f, bool mirrored = false) {
  constexpr double half_pi = std::numbers::pi / 2;
  double c, s;
  if (f == 0.0 && !mirrored) {
    c = 1.0;
    s = 0.0;
  } else if (f == 0.5) {
    c = s = std::sqrt(0.5);
  } else if (!mirrored) {
    c = std::cos(half_pi * f);
    s = std::sin(half_pi * f);
  } else {
    c = std::sin(half_pi * f);
    s = std::cos(half_pi * f);
  }
  switch (quarter & 3) {
    case 0: return {c, s};
    case 1: return {-s, c};
    case 2: return {-c, -s};
    default: return {s, -c};
  }
}

}  // namespace detail

/// e^{2 pi i num/den}, computed from the exact fraction.
inline cplx unit_root(std::int64_t num, std::int64_t den) {
  if (den <= 0)
    fail("unit_root: denominator must be positive");
  num = detail::floor_mod(num, den);
  __int128 four = static_cast<__int128>(num) * 4;
  int quarter = static_cast<int>(four / den);
  __int128 rem = four - static_cast<__int128>(quarter) * den;
  // Mirror the upper half of a quarter so that den - num gives the exact conjugate.
  if (rem == 0)
    return detail::cis_quarters(quarter, 0.0);
  if (2 * rem <= den)
    return detail::cis_quarters(quarter, static_cast<double>(rem) / static_cast<double>(den));
  return detail::cis_quarters(quarter, static_cast<double>(den - rem) / static_cast<double>(den), true);
}

/// e^{2 pi i t} for a floating turn value.
inline cplx unit_turns(double t) {
  t -= std::floor(t);
  if (t >= 1.0)
    t = 0.0;
  double four = 4.0 * t;
  int quarter = static_cast<int>(std::floor(four));
  double frac = four - quarter;
  if (frac <= 0.5)
    return detail::cis_quarters(quarter, frac);
  return detail::cis_quarters(quarter, 1.0 - frac, true);
}

/// An angle in turns, mod 1; exact rational when constructed from a fraction.
class Turn {
public:
  Turn() = default;

  static Turn exact(std::int64_t num, std::int64_t den) {
    if (den <= 0)
      fail("Turn: denominator must be positive");
    Turn t;
    t.exact_ = true;
    num = detail::floor_mod(num, den);
    std::int64_t g = std::gcd(num, den);
    t.num_ = num / g;
    t.den_ = den / g;
    t.value_ = static_cast<double>(t.num_) / static_cast<double>(t.den_);
    return t;
  }

  static Turn approx(double value) {
    if (!std::isfinite(value))
      fail("Turn: non-finite angle");
    Turn t;
    t.exact_ = false;
    value -= std::floor(value);
    if (value >= 1.0)
      value = 0.0;
    t.value_ = value;
    return t;
  }

  /// Angle of a nonzero complex number.
  static Turn of(cplx z) {
    if (z == cplx(0.0, 0.0))
      fail("Turn::of: zero has no phase");
    return approx(std::arg(z) / (2 * std::numbers::pi));
  }

  static Turn half() { return exact(1, 2); }

  bool is_exact() const { return exact_; }
  double value() const { return value_; }
  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  cplx unit() const { return exact_ ? unit_root(num_, den_) : unit_turns(value_); }

  Turn operator-() const {
    if (exact_)
      return exact(-num_, den_);
    return approx(-value_);
  }

  Turn operator+(const Turn& o) const {
    if (exact_ && o.exact_) {
      std::int64_t l = std::lcm(den_, o.den_);
      __int128 n = static_cast<__int128>(num_) * (l / den_) + static_cast<__int128>(o.num_) * (l / o.den_);
      return exact(static_cast<std::int64_t>(n % l), l);
    }
    return approx(value_ + o.value_);
  }

  Turn operator-(const Turn& o) const { return *this + (-o); }

  Turn scaled(std::int64_t k) const {
    if (exact_) {
      __int128 n = static_cast<__int128>(num_) * k;
      n %= den_;
      return exact(static_cast<std::int64_t>(n), den_);
    }
    return approx(std::fmod(value_ * static_cast<double>(k), 1.0));
  }

  /// Shortest distance to 0 on the circle, in turns (0 .. 0.5).
  double distance_to_zero() const {
    if (exact_)
      return num_ == 0 ? 0.0 : std::min(value_, 1.0 - value_);
    return std::min(value_, 1.0 - value_);
  }

  /// Same as distance_to_zero(), in radians.
  double phase_error() const { return 2 * std::numbers::pi * distance_to_zero(); }

  std::string str() const {
    if (exact_)
      return std::to_string(num_) + "/" + std::to_string(den_);
    return std::to_string(value_);
  }

private:
  bool exact_ = true;
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  double value_ = 0.0;
};

}  // namespace diffrakt

#endif
