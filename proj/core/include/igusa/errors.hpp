#pragma once

/// Error taxonomy shared by every module.
///
/// All library failures derive from igusa::Error (itself a
/// std::runtime_error), so callers can catch either the precise condition or
/// the whole family.  Messages name the violated condition in the caller's
/// vocabulary (e.g. "p divides r*l"), never internal state.

#include <stdexcept>
#include <string>

namespace igusa {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input parameters violate a documented precondition (e.g. the hybrid-family
/// divisibility conditions).  The message names the condition.
class InvalidParams : public Error {
 public:
  using Error::Error;
};

/// A valuation or leading-unit query could not be certified at the stored
/// precision.
class InsufficientPrecision : public Error {
 public:
  using Error::Error;
};

/// An enumeration or recursion exceeded its configured budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Two values with different base primes (or incompatible scalar fields) were
/// combined.
class MismatchedBase : public Error {
 public:
  using Error::Error;
};

/// A geometric-series closure was requested with ratio of modulus >= 1.
class DivergentSeries : public Error {
 public:
  using Error::Error;
};

/// A two-variable polynomial fails the structural conditions required of the
/// separated-power form (pure powers, coprime leading exponents, strictly
/// dominant leading coefficients).  The message names the failed condition.
class NotForm12 : public Error {
 public:
  using Error::Error;
};

/// A stationary-phase step was attempted on a polynomial whose reduction mod
/// pi is identically zero (content must be extracted first).
class ZeroReduction : public Error {
 public:
  using Error::Error;
};

/// gcd(i0, j0) != 1 where coprimality is required.
class NotCoprime : public Error {
 public:
  using Error::Error;
};

/// An index lies outside its documented range.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// A proved identity failed to hold at runtime; indicates a bug, never bad
/// user input.
class InternalCheckFailed : public Error {
 public:
  using Error::Error;
};

/// Throws InternalCheckFailed when `cond` is false.
inline void check_internal(bool cond, const std::string& what) {
  if (!cond) throw InternalCheckFailed(what);
}

}  // namespace igusa
