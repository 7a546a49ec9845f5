#include "igusa/spf.hpp"

#include <map>
#include <sstream>

namespace igusa {

namespace {

/// All points of the reduced domain, odometer order (last coordinate fastest).
std::vector<std::vector<int>> enumerate_domain(long p, const Domain& dbar,
                                               unsigned long budget) {
  mpz_class size = 1;
  for (CoordDomain c : dbar) size *= (c == CoordDomain::Unit) ? p - 1 : p;
  if (size > budget) throw BudgetExceeded("reduced domain too large to enumerate");

  std::vector<std::vector<int>> out;
  out.reserve(size.get_ui());
  std::vector<int> pt(dbar.size());
  for (size_t j = 0; j < dbar.size(); ++j) {
    pt[j] = (dbar[j] == CoordDomain::Unit) ? 1 : 0;
  }
  while (true) {
    out.push_back(pt);
    size_t j = dbar.size();
    while (j > 0) {
      --j;
      int lo = (dbar[j] == CoordDomain::Unit) ? 1 : 0;
      if (++pt[j] < p) break;
      pt[j] = lo;
      if (j == 0) return out;
    }
    if (dbar.empty()) return out;
  }
}

}  // namespace

Domain domain_full(int n) { return Domain(static_cast<size_t>(n), CoordDomain::Full); }

Domain domain_unit(int n) { return Domain(static_cast<size_t>(n), CoordDomain::Unit); }

std::vector<std::vector<int>> singular_points(const FpPoly& fbar, const Domain& dbar,
                                              unsigned long budget) {
  if (dbar.size() != static_cast<size_t>(fbar.arity)) {
    throw InvalidParams("domain arity mismatch");
  }
  std::vector<FpPoly> partials;
  for (int j = 0; j < fbar.arity; ++j) partials.push_back(fp_partial(fbar, j));
  std::vector<std::vector<int>> out;
  for (const auto& pt : enumerate_domain(fbar.p, dbar, budget)) {
    if (fp_eval(fbar, pt) != 0) continue;
    bool singular = true;
    for (const FpPoly& d : partials) {
      if (fp_eval(d, pt) != 0) {
        singular = false;
        break;
      }
    }
    if (singular) out.push_back(pt);
  }
  return out;
}

SpfOutcome spf_step(const IntegralState& state) {
  const long p = state.poly.p;
  const int n = state.poly.arity;
  if (state.domain.size() != static_cast<size_t>(n)) {
    throw InvalidParams("domain arity mismatch");
  }
  if (state.chi.p != p) throw MismatchedBase("character base differs from polynomial base");

  FpPoly fbar = reduce_mod_pi(state.poly);
  if (fp_is_zero(fbar)) {
    throw ZeroReduction("stationary-phase step needs a nonzero reduction");
  }
  std::vector<FpPoly> partials;
  for (int j = 0; j < n; ++j) partials.push_back(fp_partial(fbar, j));

  CycloScalar v_sum = cs_zero();          // sum of chi over nonzero values
  long nonsingular_zeros = 0;
  std::vector<std::vector<int>> singular;
  for (const auto& pt : enumerate_domain(p, state.domain, 10'000'000UL)) {
    int val = fp_eval(fbar, pt);
    if (val != 0) {
      v_sum = cs_add(v_sum, char_eval(state.chi, val));
      continue;
    }
    bool is_singular = true;
    for (const FpPoly& d : partials) {
      if (fp_eval(d, pt) != 0) {
        is_singular = false;
        break;
      }
    }
    if (is_singular) {
      singular.push_back(pt);
    } else {
      ++nonsingular_zeros;
    }
  }

  mpq_class qn_inv = q_pow_neg(p, n);
  ZetaRat value = rf_const(p, cs_scale(qn_inv, v_sum));
  if (char_is_trivial(state.chi) && nonsingular_zeros > 0) {
    // sigma * (1 - q^{-1}) T / (1 - q^{-1} T)
    mpq_class sigma = qn_inv * nonsingular_zeros;
    mpq_class c = sigma * (mpq_class(p - 1) / p);
    c.canonicalize();
    ZetaRat tail{p, 1, {}, {}};
    tail.num.emplace(1, cs_rational(c));
    tail.den.emplace(1, 1);
    value = rf_add(value, tail);
  }
  value = rf_scalar_mul(state.measure_factor, value);
  value = rf_mul(value, rf_monomial(p, state.t_power, cs_one()));

  SpfOutcome outcome;
  outcome.contribution = std::move(value);
  for (const auto& pt : singular) {
    std::vector<PadicScalar> lift;
    lift.reserve(pt.size());
    for (int d : pt) lift.push_back(padic_int(p, d));
    outcome.residuals.push_back(translate_point(state, lift));
  }
  return outcome;
}

IntegralState scale_vars(const IntegralState& state, const std::vector<long>& exponents,
                         const Domain& target) {
  const int n = state.poly.arity;
  if (exponents.size() != static_cast<size_t>(n) ||
      target.size() != static_cast<size_t>(n)) {
    throw InvalidParams("scaling data arity mismatch");
  }
  long total = 0;
  std::vector<TruncPoly> subs;
  for (int j = 0; j < n; ++j) {
    long t = exponents[static_cast<size_t>(j)];
    if (t < 0) throw InvalidParams("scaling exponents must be >= 0");
    total += t;
    std::vector<int> e(static_cast<size_t>(n), 0);
    e[static_cast<size_t>(j)] = 1;
    subs.push_back(tp_term(n, state.poly.p, e, pi_power(state.poly.p, t)));
  }
  IntegralState out = state;
  out.poly = tp_substitute(state.poly, subs);
  out.measure_factor *= q_pow_neg(state.poly.p, total);
  out.measure_factor.canonicalize();
  out.domain = target;
  return out;
}

IntegralState extract_content(const IntegralState& state) {
  if (tp_is_zero(state.poly)) return state;
  long c = tp_content(state.poly);
  if (c == 0) return state;
  IntegralState out = state;
  out.poly = tp_div_pi_power(state.poly, c);
  out.t_power += c;
  return out;
}

IntegralState translate_point(const IntegralState& state,
                              const std::vector<PadicScalar>& P) {
  const int n = state.poly.arity;
  if (P.size() != static_cast<size_t>(n)) {
    throw InvalidParams("translation point arity mismatch");
  }
  const long p = state.poly.p;
  std::vector<TruncPoly> subs;
  for (int j = 0; j < n; ++j) {
    std::vector<int> e(static_cast<size_t>(n), 0);
    e[static_cast<size_t>(j)] = 1;
    TruncPoly shifted = tp_term(n, p, e, pi_power(p, 1));
    shifted = tp_add(shifted, tp_term(n, p, std::vector<int>(static_cast<size_t>(n), 0),
                                      P[static_cast<size_t>(j)]));
    subs.push_back(shifted);
  }
  IntegralState out = state;
  out.poly = tp_substitute(state.poly, subs);
  out.measure_factor *= q_pow_neg(p, n);
  out.measure_factor.canonicalize();
  out.domain = domain_full(n);
  return out;
}

long l_index(const TruncPoly& f, const std::vector<PadicScalar>& P) {
  std::vector<Ord> ords;
  ords.push_back(ord(tp_eval(f, P)));
  for (int j = 0; j < f.arity; ++j) {
    ords.push_back(ord(tp_eval(tp_partial(f, j), P)));
  }
  long best = kInfiniteOrd;
  for (const Ord& o : ords) {
    if (o.finite) best = std::min(best, o.value);
  }
  if (best == kInfiniteOrd) {
    throw InsufficientPrecision("no valuation in L(f,P) is determined");
  }
  for (const Ord& o : ords) {
    if (!o.finite && o.value < best) {
      throw InsufficientPrecision("an undetermined valuation could undercut L(f,P)");
    }
  }
  return best;
}

namespace {

std::string drive_key(const TruncPoly& poly, const Domain& domain, const MultChar& chi) {
  std::ostringstream out;
  out << tp_key(poly) << '|';
  for (CoordDomain c : domain) out << (c == CoordDomain::Unit ? 'U' : 'F');
  out << "|chi:" << chi.m << ':' << chi.e;
  return out.str();
}

constexpr long kMaxDriveDepth = 4096;

struct DriveContext {
  unsigned long budget = 0;
  unsigned long nodes = 0;
  std::map<std::string, ZetaRat> memo;           // completed states
  std::map<std::string, long> open;              // states on the recursion stack
};

/// Value of the normalized integral (measure 1, t_power 0) of chi(ac g)|g|^s
/// over `domain`, for a content-free g.
ZetaRat drive_unit_value(DriveContext& ctx, const TruncPoly& g, const Domain& domain,
                         const MultChar& chi, long depth);

ZetaRat drive_value_of_state(DriveContext& ctx, const IntegralState& raw, long depth) {
  IntegralState st = extract_content(raw);
  if (tp_is_zero(st.poly)) return rf_zero(st.poly.p);
  ZetaRat unit = drive_unit_value(ctx, st.poly, st.domain, st.chi, depth);
  unit = rf_scalar_mul(st.measure_factor, unit);
  return rf_mul(unit, rf_monomial(st.poly.p, st.t_power, cs_one()));
}

ZetaRat drive_unit_value(DriveContext& ctx, const TruncPoly& g, const Domain& domain,
                         const MultChar& chi, long depth) {
  if (depth > kMaxDriveDepth) {
    throw BudgetExceeded("recursion depth exhausted without closing");
  }
  const long p = g.p;
  std::string key = drive_key(g, domain, chi);
  if (auto it = ctx.memo.find(key); it != ctx.memo.end()) return it->second;
  if (ctx.open.count(key)) {
    throw BudgetExceeded("recursion returned to an ancestor state without closing");
  }
  if (++ctx.nodes > ctx.budget) {
    throw BudgetExceeded("state budget exhausted without closing");
  }

  // Frobenius rewrite: g = root^p gives Z_g(T, chi) = Z_root(T^p, chi^p).
  if (auto root = tp_pth_root(g)) {
    ZetaRat inner = drive_unit_value(ctx, *root, domain, char_power(chi, p), depth + 1);
    ZetaRat value = rf_substitute_T_power(inner, p);
    ctx.memo.emplace(key, value);
    return value;
  }

  ctx.open.emplace(key, depth);
  IntegralState state{g, domain, mpq_class(1), 0, chi};
  SpfOutcome outcome = spf_step(state);

  ZetaRat acyclic = outcome.contribution;
  // Self-returning residuals: accumulated coefficient per T-power.
  std::map<long, mpq_class> self_loops;
  for (const IntegralState& residual : outcome.residuals) {
    IntegralState child = extract_content(residual);
    if (tp_is_zero(child.poly)) continue;
    check_internal(child.t_power >= 1, "residual must gain a pi-content");
    std::string child_key = drive_key(child.poly, child.domain, child.chi);
    if (child_key == key) {
      self_loops[child.t_power] += child.measure_factor;
      continue;
    }
    ZetaRat value = drive_unit_value(ctx, child.poly, child.domain, child.chi, depth + 1);
    value = rf_scalar_mul(child.measure_factor, value);
    value = rf_mul(value, rf_monomial(p, child.t_power, cs_one()));
    acyclic = rf_add(acyclic, value);
  }
  ctx.open.erase(key);

  ZetaRat total = acyclic;
  if (!self_loops.empty()) {
    if (self_loops.size() != 1) {
      throw BudgetExceeded("self-similar recursion with mixed return powers");
    }
    auto [t_step, ratio] = *self_loops.begin();
    ratio.canonicalize();
    // The cycle closes as acyclic / (1 - ratio T^{t_step}); the ratio must be
    // a negative q-power for the result to stay in binomial-denominator form.
    if (ratio.get_num() != 1) {
      throw BudgetExceeded("self-similar recursion with non-q-power ratio");
    }
    long a = 0;
    mpz_class den = ratio.get_den();
    while (den > 1) {
      if (den % p != 0) {
        throw BudgetExceeded("self-similar recursion with non-q-power ratio");
      }
      den /= p;
      ++a;
    }
    if (a < 1) throw DivergentSeries("self-similar recursion fails to contract");
    total = rf_geometric(acyclic, a, t_step, 0);
  }
  ctx.memo.emplace(key, total);
  return total;
}

}  // namespace

ZetaRat generic_drive(const IntegralState& state, unsigned long budget) {
  if (budget < 1) throw InvalidParams("drive budget must be >= 1");
  DriveContext ctx;
  ctx.budget = budget;
  return drive_value_of_state(ctx, state, 0);
}

}  // namespace igusa
