#pragma once

/// Exact rational functions in T = q^{-s} with factored denominators.
///
/// Values are quotients N(T) / prod (1 - q^{-a} T^b) where N has coefficients
/// in a cyclotomic field Q(zeta_m) (m = 1 is plain Q).  Denominators are kept
/// factored — the shape statements of the theory are all about these factors —
/// and normalization cancels exactly those factors that divide the numerator,
/// by exact polynomial division.
///
/// Key properties:
///   - every operation is exact (GMP rationals; no tolerances anywhere);
///   - normalization is idempotent and equality is decided by
///     cross-multiplied numerator comparison;
///   - pole families are read directly off the normalized factors.

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "igusa/errors.hpp"

namespace igusa {

// ---- cyclotomic scalars -------------------------------------------------------

/// Element of Q(zeta_m) in the power basis 1, zeta, ..., zeta^{phi(m)-1}
/// modulo the m-th cyclotomic polynomial.  m = 1 is a plain rational.
struct CycloScalar {
  long m = 1;
  std::vector<mpq_class> coords;  ///< length phi(m)
};

/// Monic m-th cyclotomic polynomial, ascending dense coefficients
/// (size phi(m) + 1).  Cached; thread-safe.
const std::vector<mpq_class>& cyclotomic_poly(long m);

/// Euler totient (degree of the m-th cyclotomic polynomial).
long totient(long m);

CycloScalar cs_rational(const mpq_class& r);
CycloScalar cs_zero();
CycloScalar cs_one();

/// zeta_m^k, reduced into the power basis.
CycloScalar cs_zeta_pow(long m, long k);

/// Rewrites x in Q(zeta_L); requires m | L (zeta_m = zeta_L^{L/m}).
CycloScalar cs_promote(const CycloScalar& x, long L);

CycloScalar cs_add(const CycloScalar& x, const CycloScalar& y);
CycloScalar cs_neg(const CycloScalar& x);
CycloScalar cs_sub(const CycloScalar& x, const CycloScalar& y);
CycloScalar cs_mul(const CycloScalar& x, const CycloScalar& y);
CycloScalar cs_scale(const mpq_class& r, const CycloScalar& x);

bool cs_is_zero(const CycloScalar& x);
bool cs_eq(const CycloScalar& x, const CycloScalar& y);

/// True when x lies in Q (all non-constant coordinates vanish).
bool cs_is_rational(const CycloScalar& x);

/// The rational value of x; InternalCheckFailed unless cs_is_rational.
mpq_class cs_as_rational(const CycloScalar& x);

std::string cs_to_string(const CycloScalar& x);

// ---- rational functions in T --------------------------------------------------

/// Rational function in T = q^{-s}: numerator (finite T-power -> coefficient
/// map) over a multiset of factors (a, b) denoting (1 - q^{-a} T^b).
/// All numerator coefficients live in Q(zeta_{zeta_order}).
struct ZetaRat {
  long q = 0;
  long zeta_order = 1;
  std::map<long, CycloScalar> num;
  std::multiset<std::pair<long, long>> den;
};

/// One pole family s = real_part + 2*pi*i*Z / (period * log q), read off a
/// denominator factor (1 - q^{-a} T^b) as real_part = -a/b, period = b.
struct PoleDescriptor {
  mpq_class real_part;
  long period = 1;

  bool operator<(const PoleDescriptor& o) const {
    int c = cmp(real_part, o.real_part);
    if (c != 0) return c < 0;
    return period < o.period;
  }
  bool operator==(const PoleDescriptor& o) const {
    return period == o.period && real_part == o.real_part;
  }
};

ZetaRat rf_zero(long q);
ZetaRat rf_const(long q, const CycloScalar& c);
ZetaRat rf_rational(long q, const mpq_class& r);

/// c * T^t.
ZetaRat rf_monomial(long q, long t, const CycloScalar& c);

/// The rational q^{-a} (a >= 0) as an exact mpq.
mpq_class q_pow_neg(long q, long a);

ZetaRat rf_add(const ZetaRat& x, const ZetaRat& y);
ZetaRat rf_mul(const ZetaRat& x, const ZetaRat& y);
ZetaRat rf_scalar_mul(const CycloScalar& c, const ZetaRat& x);
ZetaRat rf_scalar_mul(const mpq_class& r, const ZetaRat& x);

/// Cancels every denominator factor that divides the numerator exactly;
/// idempotent.
ZetaRat rf_normalize(const ZetaRat& x);

/// First N power-series coefficients (T^0 .. T^{N-1}).
std::vector<CycloScalar> rf_series(const ZetaRat& x, long N);

/// Exact equality of values (cross-multiplied numerators compared).
bool rf_equals(const ZetaRat& x, const ZetaRat& y);

/// term * (q^{-ratio_a} T^{ratio_b})^{start} / (1 - q^{-ratio_a} T^{ratio_b}).
/// DivergentSeries unless ratio_a >= 1.
ZetaRat rf_geometric(const ZetaRat& term, long ratio_a, long ratio_b,
                     long start);

/// Pole families of the normalized value.
std::set<PoleDescriptor> poles_of(const ZetaRat& x);

/// Substitutes T := T^k (numerator powers and factor periods scale by k).
/// Realizes Z_{g^p}(T) = Z_g(T^p) for perfect p-th powers.
ZetaRat rf_substitute_T_power(const ZetaRat& x, long k);

/// Display form, e.g. "(4/5 + 1/5*T^3) / ((1-q^-1*T))" with q substituted.
std::string rf_to_string(const ZetaRat& x);

}  // namespace igusa
