#pragma once

/// Exact arithmetic in O = F_p[[pi]] (p prime), truncated to finite
/// precision, together with sparse polynomials over O and residue-ring
/// enumeration.
///
/// Key properties:
///   - Scalars are digit vectors over F_p indexed by pi-power.  A scalar is
///     either *exact* (a polynomial in pi; digits beyond the stored ones are
///     known to be zero) or *truncated* (digits beyond `coeffs.size()` are
///     unknown).  Products of exact scalars stay exact, so the structured
///     evaluators never lose precision.
///   - Valuations are certified: `ord` reports either the exact first
///     nonzero index or an explicit lower bound, and callers that need a
///     determined valuation get InsufficientPrecision instead of a guess.
///   - All values are immutable after construction and safe to share.

#include <climits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "igusa/errors.hpp"

namespace igusa {

/// Sentinel for "infinite" precision / valuation.
inline constexpr long kInfiniteOrd = LONG_MAX;

/// Element of F_p[[pi]] known up to some pi-power.
struct PadicScalar {
  long p = 0;                ///< prime base
  std::vector<int> coeffs;   ///< coeffs[i] in [0,p) multiplies pi^i
  bool exact = true;         ///< true: zero beyond coeffs; false: unknown

  /// Number of certified digits (kInfiniteOrd when exact).
  long precision() const {
    return exact ? kInfiniteOrd : static_cast<long>(coeffs.size());
  }
};

/// Valuation answer: either a determined index or a lower bound
/// ("every digit below `bound` is zero; beyond that, unknown").
/// For the exact zero scalar the bound is kInfiniteOrd.
struct Ord {
  bool finite = false;
  long value = 0;  ///< the valuation when finite, else the lower bound

  bool operator==(const Ord&) const = default;
};

// ---- scalar construction ----------------------------------------------------

/// Exact polynomial-in-pi scalar from a digit list (validated, canonicalized).
PadicScalar padic_exact(long p, std::vector<int> coeffs);

/// Truncated scalar: digits known only below `coeffs.size()` (must be >= 1).
PadicScalar padic_truncated(long p, std::vector<int> coeffs);

/// The image of an integer under Z -> F_p c O (a single exact digit).
PadicScalar padic_int(long p, const mpz_class& n);
PadicScalar padic_int(long p, long n);

PadicScalar padic_zero(long p);
PadicScalar padic_one(long p);

/// Exact pi^k (k >= 0).
PadicScalar pi_power(long p, long k);

/// Reinterpret x with at most `prec` certified digits (result is truncated).
PadicScalar padic_truncate(const PadicScalar& x, long prec);

// ---- scalar queries ---------------------------------------------------------

bool padic_is_exact_zero(const PadicScalar& x);

/// True when every stored digit vanishes (includes the exact zero).
bool padic_is_zero_to_precision(const PadicScalar& x);

/// Valuation of x; never guesses (see Ord).
Ord ord(const PadicScalar& x);

/// Valuation as a plain integer; InsufficientPrecision when undetermined
/// (zero to precision) and for the exact zero.
long ord_or_throw(const PadicScalar& x);

/// Angular component x * pi^{-ord(x)} (a unit).  InsufficientPrecision when
/// x is zero to precision.
PadicScalar ac(const PadicScalar& x);

/// Leading digit of x, i.e. the reduction of ac(x) mod pi, in [1, p).
int ac_digit(const PadicScalar& x);

/// Representation equality (same base, exactness, canonical digits).
bool padic_eq(const PadicScalar& x, const PadicScalar& y);

/// Canonical short form, e.g. "[2,0,1]" or "[1,0|4]" for a truncated scalar
/// with 4 certified digits.  Stable; used as a memo/cache key component.
std::string padic_key(const PadicScalar& x);

// ---- scalar arithmetic ------------------------------------------------------

PadicScalar padic_add(const PadicScalar& x, const PadicScalar& y);
PadicScalar padic_neg(const PadicScalar& x);
PadicScalar padic_sub(const PadicScalar& x, const PadicScalar& y);
PadicScalar padic_mul(const PadicScalar& x, const PadicScalar& y);
PadicScalar padic_pow(const PadicScalar& x, long n);

/// x * pi^k, k >= 0 (shifts digits; certified digits increase by k).
PadicScalar padic_mul_pi_power(const PadicScalar& x, long k);

/// x / pi^k; requires the first k digits to be certified zeros.
PadicScalar padic_div_pi_power(const PadicScalar& x, long k);

// ---- sparse polynomials over O ----------------------------------------------

/// Sparse multivariate polynomial with PadicScalar coefficients.  Zero
/// coefficients (exact zero or zero-to-precision) are never stored.
struct TruncPoly {
  int arity = 0;
  long p = 0;
  std::map<std::vector<int>, PadicScalar> terms;
};

TruncPoly tp_zero(int arity, long p);
TruncPoly tp_term(int arity, long p, std::vector<int> exps, PadicScalar coeff);

/// Accumulate `coeff * x^exps` into `poly` (drops vanished coefficients).
void tp_add_term(TruncPoly& poly, const std::vector<int>& exps,
                 const PadicScalar& coeff);

TruncPoly tp_add(const TruncPoly& a, const TruncPoly& b);
TruncPoly tp_neg(const TruncPoly& a);
TruncPoly tp_sub(const TruncPoly& a, const TruncPoly& b);
TruncPoly tp_mul(const TruncPoly& a, const TruncPoly& b);
TruncPoly tp_scalar_mul(const PadicScalar& c, const TruncPoly& a);
TruncPoly tp_pow(const TruncPoly& a, long n);

bool tp_is_zero(const TruncPoly& a);
bool tp_equal(const TruncPoly& a, const TruncPoly& b);

/// True when every stored coefficient is exact.
bool tp_is_exact(const TruncPoly& a);

/// Evaluate at a point of O^arity.
PadicScalar tp_eval(const TruncPoly& a, const std::vector<PadicScalar>& point);

/// Simultaneous substitution x_i := subs[i]; all subs share one target arity.
TruncPoly tp_substitute(const TruncPoly& a, const std::vector<TruncPoly>& subs);

/// Formal partial derivative with respect to variable `var`.
TruncPoly tp_partial(const TruncPoly& a, int var);

/// Truncate every coefficient to `prec` certified digits.
TruncPoly tp_truncate(const TruncPoly& a, long prec);

/// Minimal coefficient valuation (the pi-content).  Requires a nonzero
/// polynomial whose minimal valuation is determined within precision.
long tp_content(const TruncPoly& a);

TruncPoly tp_mul_pi_power(const TruncPoly& a, long k);
TruncPoly tp_div_pi_power(const TruncPoly& a, long k);

/// Canonical string (sorted terms, canonical scalar keys); stable across runs.
std::string tp_key(const TruncPoly& a);

/// Human-readable rendering, e.g. "pi^7*x0^5 + (4)*x1^3".
std::string tp_to_string(const TruncPoly& a);

/// If a == g^p exactly (char-p digit test on exponents and coefficients),
/// returns g; otherwise nullopt.  Requires an all-exact polynomial.
std::optional<TruncPoly> tp_pth_root(const TruncPoly& a);

// ---- reductions and residue polynomials --------------------------------------

/// Polynomial over the residue field F_p (degree-0 digit of each coefficient).
struct FpPoly {
  int arity = 0;
  long p = 0;
  std::map<std::vector<int>, int> terms;  ///< nonzero residues only
};

/// Coefficientwise reduction mod pi.
FpPoly reduce_mod_pi(const TruncPoly& a);

int fp_eval(const FpPoly& a, const std::vector<int>& point);
FpPoly fp_partial(const FpPoly& a, int var);
bool fp_is_zero(const FpPoly& a);
bool fp_equal(const FpPoly& a, const FpPoly& b);
std::string fp_to_string(const FpPoly& a);

// ---- residue-ring enumeration -------------------------------------------------

/// All p^{i*n} n-tuples over F_p[pi]/(pi^i), as truncated scalars of
/// precision i.  BudgetExceeded when p^{i*n} > budget.
std::vector<std::vector<PadicScalar>> enumerate_residue_ring(
    long p, long i, int n, unsigned long budget = 10'000'000UL);

}  // namespace igusa
