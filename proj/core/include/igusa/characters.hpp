#pragma once

#include <vector>

#include "igusa/errors.hpp"
#include "igusa/ratfun.hpp"

namespace igusa {

/// A conductor-one multiplicative character of O_K^×, realized on F_p^×.
///
/// The character is pinned down by (m, e) against the smallest generator g of
/// F_p^×: chi(g^k) = zeta_m^{e*k}. The trivial character is m = 1, e = 0.
/// By convention chi(0) = 0.
struct MultChar {
  long p = 2;          ///< residue characteristic (prime); q = p
  long m = 1;          ///< divides p-1; the character's exact order divides m
  long e = 0;          ///< exponent in [0, m)
  long generator = 1;  ///< smallest generator of F_p^×
  /// dlog[u] for u in 1..p-1 with generator^dlog[u] = u (mod p); dlog[0] unused.
  std::vector<long> dlog;
};

/// Smallest generator of F_p^× (p prime). For p = 2 this is 1.
long primitive_root(long p);

/// Builds a character after validating p prime, m >= 1, m | p-1; e is reduced
/// mod m. Throws InvalidParams on violations.
MultChar make_character(long p, long m, long e);

/// True iff the character is trivial (acts as 1 on all of F_p^×).
bool char_is_trivial(const MultChar& chi);

/// chi^k as a character over the same p (exponent e*k reduced mod m).
MultChar char_power(const MultChar& chi, long k);

/// chi(u mod p) as an exact cyclotomic scalar; returns 0 when p | u.
CycloScalar char_eval(const MultChar& chi, long u);

/// True iff chi^k is the trivial character.
bool char_power_trivial(const MultChar& chi, long k);

/// The unit-box power integral q^{-1} * sum_{u in F_p^×} chi(u^k):
/// equals 1 - q^{-1} when chi^k is trivial and 0 otherwise.
CycloScalar unit_power_integral(const MultChar& chi, long k);

}  // namespace igusa
