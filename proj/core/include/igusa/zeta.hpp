#pragma once

#include <map>
#include <set>
#include <string>

#include "igusa/characters.hpp"
#include "igusa/errors.hpp"
#include "igusa/hybrid.hpp"
#include "igusa/newton.hpp"
#include "igusa/padic.hpp"
#include "igusa/ratfun.hpp"
#include "igusa/spf.hpp"

namespace igusa {

/// A validated two-variable polynomial of the shape
///   g(u,v) = sum_{i >= i0} alpha_i u^i + sum_{j >= j0} beta_j v^j
/// with gcd(i0,j0) = 1 and both leading coefficients strictly dominant in
/// valuation (ord alpha_i > e1 for i > i0, ord beta_j > e2 for j > j0).
struct Form12Poly {
  TruncPoly poly;           ///< arity 2, variables (u, v)
  long i0 = 1, j0 = 1;      ///< minimal exponents on each axis
  long e1 = 0;              ///< ord of the leading u-coefficient
  long e2 = 0;              ///< ord of the leading v-coefficient
  long e0 = 0;              ///< min(e1, e2)
  PadicScalar alpha0;       ///< coefficient of u^{i0}
  PadicScalar beta0;        ///< coefficient of v^{j0}
};

/// Certifies the shape above; NotForm12 names the violated condition,
/// InsufficientPrecision reports undecidable valuation comparisons.
Form12Poly validate_form12(const TruncPoly& g);

/// Z of g over the unit box (O^x)^2, with g replaced by its leading binomial
/// alpha0 u^{i0} + beta0 v^{j0}: a constant times T^{e0} when e1 != e2, one
/// singular-free stationary-phase step when e1 == e2.
ZetaRat zeta_binomial_units(const Form12Poly& g, const MultChar& chi);

/// Z of g over the scaling region of cone c (1..5) of the Newton polyhedron,
/// summed over the cone's exact lattice parametrization.
ZetaRat zeta_cone_contribution(const Form12Poly& g, const MultChar& chi, int cone,
                               ConeIndexing indexing = ConeIndexing::partition);

/// Z of g over O^2: unit box plus the five cones. The normalized denominator
/// is contained in {(1,1), (i0+j0, i0*j0)}.
ZetaRat zeta_form12(const Form12Poly& g, const MultChar& chi);
ZetaRat zeta_form12(const TruncPoly& g, const MultChar& chi);

/// Z of g over O^x x O by the dominance case analysis: constant-valuation
/// band, singular-free stationary-phase step, or iterated v -> pi*v descent.
ZetaRat zeta_halfline(const Form12Poly& g, const MultChar& chi);
ZetaRat zeta_halfline(const TruncPoly& g, const MultChar& chi);

/// The unit-box slice h(u,v) = f(u,v,1) of the hybrid polynomial (arity 2).
TruncPoly hybrid_unit_slice(const HybridParams& params);

/// h translated at its unique unit-box singular point (-sigma^{k+r}, tau),
/// built from the closed binomial-sum coefficients:
///   pi^p u^p + sum_{j=k+1}^{k+r} S_{k,r}(j) tau^{k+r-j} pi^j v^j.
TruncPoly hybrid_unit_slice_translated(const HybridParams& params);

/// Z of h over (O^x)^2 (generic case only): one stationary-phase step around
/// the unique singular point, whose residual is handed to zeta_form12.
ZetaRat zeta_h_units(const HybridParams& params, const MultChar& chi);

/// Two-variable reductions feeding the assembly regions:
/// region 1: pi^{k+r} u^p + v^l H(1, tau*pi*v - 1)
/// region 2: pi^{k+l} u^p + v^r H(pi*v, tau - pi*v)
/// regions 5/6 at slice a: pi^{ap} u^p plus the expanded v-side with
/// pi-weights k+l-i (region 5) or r+i (region 6).
TruncPoly region1_form(const HybridParams& params);
TruncPoly region2_form(const HybridParams& params);
TruncPoly region5_form(const HybridParams& params, long a);
TruncPoly region6_form(const HybridParams& params, long a);

struct HybridBreakdown {
  ZetaRat total;
  /// keys "A1".."A7" and "global_factor" in the generic case; empty when
  /// degenerate.
  std::map<std::string, ZetaRat> per_region;
  HybridCase case_tag = HybridCase::generic;
};

/// Full zeta of the hybrid polynomial over O^3:
/// degenerate case (p | C(k+r,r)): (1-q^{-1})/(1-q^{-1}T^p) when chi^p is
/// trivial, 0 otherwise; generic case: the seven-region assembly divided by
/// (1 - q^{-(omega+2)} T^{k+r+l}).
HybridBreakdown zeta_hybrid(const HybridParams& params, const MultChar& chi);

/// Candidate pole families (real part, T-period): degenerate {(-1/p, p)};
/// generic {(-1,1), (-1/p - 2/(k+r+l), k+r+l)} plus (-1/p - 1/a, pa) for
/// a in {r, l, k+1}.
std::set<PoleDescriptor> candidate_poles(const HybridParams& params);

/// True iff a denominator factor (1 - q^{-a} T^b) lies in a candidate family:
/// -a/b equals the family's real part and b divides its period.
bool pole_factor_contained(const std::set<PoleDescriptor>& candidates, long a, long b);

/// True iff every normalized denominator factor of `value` is contained.
bool poles_contained(const ZetaRat& value, const std::set<PoleDescriptor>& candidates);

}  // namespace igusa
