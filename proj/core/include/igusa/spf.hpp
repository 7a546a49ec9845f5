#pragma once

#include <vector>

#include "igusa/characters.hpp"
#include "igusa/errors.hpp"
#include "igusa/padic.hpp"
#include "igusa/ratfun.hpp"

namespace igusa {

/// Per-coordinate integration range: the units O^x or the full ring O.
enum class CoordDomain { Unit, Full };

using Domain = std::vector<CoordDomain>;

Domain domain_full(int n);
Domain domain_unit(int n);

/// One pending integral: measure_factor * T^{t_power} *
/// integral over `domain` of chi(ac poly) |poly|^s.
struct IntegralState {
  TruncPoly poly;
  Domain domain;
  mpq_class measure_factor = 1;
  long t_power = 0;
  MultChar chi;
};

/// Result of one stationary-phase step: the closed contribution plus one
/// residual integral per singular zero of the reduction.
struct SpfOutcome {
  ZetaRat contribution;
  std::vector<IntegralState> residuals;
};

/// Points of the reduced domain where fbar and all its partials vanish,
/// in enumeration (odometer) order.
std::vector<std::vector<int>> singular_points(const FpPoly& fbar,
                                              const Domain& dbar,
                                              unsigned long budget = 10'000'000UL);

/// One stationary-phase step over the state's domain. Requires the reduction
/// of state.poly mod pi to be nonzero (ZeroReduction otherwise).
SpfOutcome spf_step(const IntegralState& state);

/// Substitutes x_i -> pi^{t_i} x_i, multiplies the measure by q^{-sum t_i},
/// and installs the given target domain.
IntegralState scale_vars(const IntegralState& state,
                         const std::vector<long>& exponents,
                         const Domain& target);

/// Pulls the maximal common pi-power c out of the polynomial:
/// poly /= pi^c, t_power += c. A zero polynomial is returned unchanged.
IntegralState extract_content(const IntegralState& state);

/// Substitutes x -> P + pi*x, multiplies the measure by q^{-n}, and resets
/// the domain to all-Full.
IntegralState translate_point(const IntegralState& state,
                              const std::vector<PadicScalar>& P);

/// L(f, P) = min(ord f(P), min_j ord (d_j f)(P)). InsufficientPrecision when
/// no listed valuation is determined below every undetermined bound.
long l_index(const TruncPoly& f, const std::vector<PadicScalar>& P);

/// Fallback evaluator: iterates content extraction + stationary-phase steps,
/// resolving recursion by exact state equality. A residual that reproduces
/// its own state closes into a geometric factor; a recursion that keeps
/// producing new states exhausts the budget (BudgetExceeded). `budget`
/// bounds the number of states processed.
ZetaRat generic_drive(const IntegralState& state, unsigned long budget);

}  // namespace igusa
