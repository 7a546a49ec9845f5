#pragma once

#include <optional>

#include "igusa/errors.hpp"
#include "igusa/padic.hpp"

namespace igusa {

/// Parameters of the three-variable family
///   f = x^p + y^r z^l H(y, tau*z - y),
///   H(y, w) = sum_{i=0}^{k} C(k+r, i+r) y^i w^{k-i},
/// with tau = sigma^p for a unit sigma (so tau has a p-th root in O_K^×
/// by construction).
struct HybridParams {
  long p = 3;
  long k = 1;
  long r = 1;
  long l = 1;
  PadicScalar sigma;  ///< unit scalar; tau := sigma^p
};

/// Validates and normalizes parameters:
///   p prime; k, r, l >= 1; p does not divide r*l; p divides r+l+k;
///   (r mod p) + (l mod p) <= p; sigma a unit over the same p.
/// Throws InvalidParams naming the violated condition.
HybridParams make_hybrid_params(long p, long k, long r, long l,
                                const PadicScalar& sigma);

/// Same, with sigma = 1.
HybridParams make_hybrid_params(long p, long k, long r, long l);

/// tau = sigma^p.
PadicScalar hybrid_tau(const HybridParams& params);

/// omega = (k+r+l)/p (integral by the divisibility condition).
long hybrid_omega(const HybridParams& params);

/// The integer a_{k,r}(i) = C(k+r, k-i) * C(i+r-1, i) for 0 <= i <= k.
mpz_class hybrid_a(long k, long r, long i);

/// f as a polynomial in (x,y,z) = variables (0,1,2), built from the defining
/// product form and expanded.
TruncPoly build_hybrid(const HybridParams& params);

/// f from the closed expansion
///   x^p + sum_{i=0}^{k} (-1)^i a_{k,r}(i) tau^{k-i} y^{r+i} z^{k+l-i}.
TruncPoly expand_hybrid(const HybridParams& params);

/// Formal y-derivative of the non-Frobenius part y^r z^l H(y, tau*z - y).
TruncPoly hybrid_partial_y(const HybridParams& params);

/// The closed form of that derivative: r * C(k+r, r) * y^{r-1} z^l (tau*z - y)^k.
TruncPoly hybrid_partial_y_closed(const HybridParams& params);

/// Binomial sum S_{k,r}(j) for 1 <= j <= k+r, computed from its defining
/// alternating sum; equals 0 for j <= k and
/// C(k+r, j) * sum_{i=0}^{k} (-1)^i C(j, i) for j >= k+1.
mpz_class s_kr(long k, long r, long j);

/// The closed form of S_{k,r}(j) (used to cross-check the defining sum).
mpz_class s_kr_closed(long k, long r, long j);

enum class HybridCase { generic, degenerate };

/// Case classification: degenerate iff p | C(k+r, r), in which case f is the
/// Frobenius form x^p + h(y,z)^p and `witness_h` carries h (the identity is
/// checked exactly before returning).
struct CaseInfo {
  HybridCase kind = HybridCase::generic;
  std::optional<TruncPoly> witness_h;
};

CaseInfo classify_case(const HybridParams& params);

}  // namespace igusa
