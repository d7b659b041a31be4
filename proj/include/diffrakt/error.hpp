// Error types shared by all diffrakt modules.
//
// Three failure classes map onto distinct CLI exit codes:
// bad input, a broken numerical contract, and an exceeded resource cap.

#ifndef DIFFRAKT_ERROR_HPP_
#define DIFFRAKT_ERROR_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace diffrakt {

/// Input violates a precondition (bad modulus, mismatched groups, ...).
struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A verified identity failed beyond its tolerance.
struct ContractError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An enumeration or size cap was exceeded.
struct CapError : std::length_error {
  using std::length_error::length_error;
};

[[noreturn]] inline void fail(const std::string& msg) { throw ValidationError(msg); }
[[noreturn]] inline void fail_contract(const std::string& msg) { throw ContractError(msg); }
[[noreturn]] inline void fail_cap(const std::string& msg) { throw CapError(msg); }

namespace detail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r))
    fail_cap("integer overflow in lattice arithmetic");
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    fail_cap("integer overflow in lattice arithmetic");
  return r;
}

inline std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace detail
}  // namespace diffrakt

#endif
