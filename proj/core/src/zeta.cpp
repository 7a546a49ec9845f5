#include "igusa/zeta.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace igusa {

namespace {

mpz_class binom(long n, long k) {
  if (k < 0 || k > n || n < 0) return 0;
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return out;
}

// One content extraction plus one stationary-phase step, asserting that the
// reduction has no singular zeros on the state's domain.
ZetaRat spf_closed(const IntegralState& state, const char* what) {
  IntegralState st = extract_content(state);
  SpfOutcome out = spf_step(st);
  check_internal(out.residuals.empty(), what);
  return out.contribution;
}

// Unit-box value of alpha pi^{i0*t1} u^{i0} + beta pi^{j0*t2} v^{j0}.
// The step is always closed: the content-free reduction is either a single
// monomial (no torus zeros at all) or a binomial with coprime exponents, in
// which case at least one partial survives at every torus zero.
ZetaRat scaled_binomial_value(const Form12Poly& g, const MultChar& chi,
                              long t1, long t2) {
  long p = g.poly.p;
  TruncPoly b = tp_term(2, p, {static_cast<int>(g.i0), 0},
                        padic_mul_pi_power(g.alpha0, g.i0 * t1));
  b = tp_add(b, tp_term(2, p, {0, static_cast<int>(g.j0)},
                        padic_mul_pi_power(g.beta0, g.j0 * t2)));
  return spf_closed({b, domain_unit(2), 1, 0, chi},
                    "leading-binomial unit box must be singular-free");
}

// q^{-A} + q^{-A-1} + ... = q^{-A} * q/(q-1).
mpq_class geometric_scalar(long q, long A) {
  mpq_class s = q_pow_neg(q, A) * mpq_class(q, q - 1);
  s.canonicalize();
  return s;
}

// q^{-2} * sum of chi(gbar(u,v)) over u in F^x and v in F^x (or all of F
// when v_full is set).
CycloScalar reduced_char_sum(const TruncPoly& g, const MultChar& chi,
                             bool v_full) {
  FpPoly red = reduce_mod_pi(g);
  long p = g.p;
  CycloScalar sum = cs_zero();
  for (int u = 1; u < p; ++u)
    for (int v = v_full ? 0 : 1; v < p; ++v)
      sum = cs_add(sum, char_eval(chi, fp_eval(red, {u, v})));
  return cs_scale(q_pow_neg(p, 2), sum);
}

}  // namespace

Form12Poly validate_form12(const TruncPoly& g) {
  if (g.arity != 2) throw NotForm12("the form must have exactly two variables");
  if (tp_is_zero(g)) throw NotForm12("the form must be nonzero");
  bool have_u = false, have_v = false;
  long i0 = 0, j0 = 0;
  for (const auto& [e, c] : g.terms) {
    long i = e[0], j = e[1];
    if (i > 0 && j > 0) throw NotForm12("mixed monomial u^i v^j present");
    if (i == 0 && j == 0) throw NotForm12("constant term present");
    if (i > 0) {
      if (!have_u || i < i0) i0 = i;
      have_u = true;
    } else {
      if (!have_v || j < j0) j0 = j;
      have_v = true;
    }
  }
  if (!have_u) throw NotForm12("no pure u-power term present");
  if (!have_v) throw NotForm12("no pure v-power term present");
  if (std::gcd(i0, j0) != 1) throw NotForm12("leading exponents are not coprime");

  Form12Poly out;
  out.poly = g;
  out.i0 = i0;
  out.j0 = j0;
  out.alpha0 = g.terms.at({static_cast<int>(i0), 0});
  out.beta0 = g.terms.at({0, static_cast<int>(j0)});
  Ord o1 = ord(out.alpha0);
  Ord o2 = ord(out.beta0);
  if (!o1.finite)
    throw InsufficientPrecision("leading u-coefficient valuation is undetermined");
  if (!o2.finite)
    throw InsufficientPrecision("leading v-coefficient valuation is undetermined");
  out.e1 = o1.value;
  out.e2 = o2.value;
  out.e0 = std::min(out.e1, out.e2);

  for (const auto& [e, c] : g.terms) {
    long i = e[0], j = e[1];
    if ((i > 0 && i == i0) || (i == 0 && j == j0)) continue;
    long lead = (i > 0) ? out.e1 : out.e2;
    Ord o = ord(c);
    if (o.finite) {
      if (o.value <= lead)
        throw NotForm12("a non-leading coefficient does not exceed the leading valuation");
    } else if (o.value <= lead) {
      throw InsufficientPrecision("a non-leading coefficient's valuation bound is inconclusive");
    }
  }
  return out;
}

ZetaRat zeta_binomial_units(const Form12Poly& g, const MultChar& chi) {
  return scaled_binomial_value(g, chi, 0, 0);
}

ZetaRat zeta_cone_contribution(const Form12Poly& g, const MultChar& chi,
                               int cone, ConeIndexing indexing) {
  long q = g.poly.p;
  ZetaRat total = rf_zero(q);
  switch (cone) {
    case 1: {
      // v scales by pi^a; explicit terms while the v-side valuation stays
      // dominant or tied, then a constant geometric tail.
      long a = 1;
      while (g.e2 + a * g.j0 <= g.e1) {
        total = rf_add(total, rf_scalar_mul(q_pow_neg(q, a),
                                            scaled_binomial_value(g, chi, 0, a)));
        ++a;
      }
      return rf_add(total, rf_scalar_mul(geometric_scalar(q, a),
                                         scaled_binomial_value(g, chi, 0, a)));
    }
    case 5: {
      long a = 1;
      while (g.e1 + a * g.i0 <= g.e2) {
        total = rf_add(total, rf_scalar_mul(q_pow_neg(q, a),
                                            scaled_binomial_value(g, chi, a, 0)));
        ++a;
      }
      return rf_add(total, rf_scalar_mul(geometric_scalar(q, a),
                                         scaled_binomial_value(g, chi, a, 0)));
    }
    case 3:
      // Both valuations shift by i0*j0 per step, so the whole ray is one
      // geometric series over the unscaled unit-box value.
      return rf_geometric(zeta_binomial_units(g, chi), g.i0 + g.j0,
                          g.i0 * g.j0, 1);
    case 2: {
      NewtonData nd = newton_faces(g.i0, g.j0);
      for (const ConeStratum& s : cone_lattice(nd, 2, indexing)) {
        long m = s.u0, w = s.v0;
        ZetaRat inner = rf_zero(q);
        long a = s.a_min;
        while (g.e2 + g.j0 * (w + a) <= g.e1 + g.i0 * m) {
          inner = rf_add(inner,
                         rf_scalar_mul(q_pow_neg(q, a),
                                       scaled_binomial_value(g, chi, m, w + a)));
          ++a;
        }
        inner = rf_add(inner,
                       rf_scalar_mul(geometric_scalar(q, a),
                                     scaled_binomial_value(g, chi, m, w + a)));
        inner = rf_scalar_mul(q_pow_neg(q, m + w), inner);
        total = rf_add(total,
                       rf_geometric(inner, g.i0 + g.j0, g.i0 * g.j0, s.b_min));
      }
      return total;
    }
    case 4: {
      NewtonData nd = newton_faces(g.i0, g.j0);
      for (const ConeStratum& s : cone_lattice(nd, 4, indexing)) {
        long m = s.v0, w = s.u0;
        ZetaRat inner = rf_zero(q);
        long a = s.a_min;
        while (g.e1 + g.i0 * (w + a) <= g.e2 + g.j0 * m) {
          inner = rf_add(inner,
                         rf_scalar_mul(q_pow_neg(q, a),
                                       scaled_binomial_value(g, chi, w + a, m)));
          ++a;
        }
        inner = rf_add(inner,
                       rf_scalar_mul(geometric_scalar(q, a),
                                     scaled_binomial_value(g, chi, w + a, m)));
        inner = rf_scalar_mul(q_pow_neg(q, m + w), inner);
        total = rf_add(total,
                       rf_geometric(inner, g.i0 + g.j0, g.i0 * g.j0, s.b_min));
      }
      return total;
    }
    default:
      throw RangeError("cone index must be between 1 and 5");
  }
}

ZetaRat zeta_form12(const Form12Poly& g, const MultChar& chi) {
  ZetaRat total = zeta_binomial_units(g, chi);
  for (int c = 1; c <= 5; ++c)
    total = rf_add(total, zeta_cone_contribution(g, chi, c));
  total = rf_normalize(total);
  for (const auto& [a, b] : total.den) {
    bool ok = (a == 1 && b == 1) ||
              (a == g.i0 + g.j0 && b == g.i0 * g.j0);
    check_internal(ok, "two-variable denominator left the expected family");
  }
  return total;
}

ZetaRat zeta_form12(const TruncPoly& g, const MultChar& chi) {
  return zeta_form12(validate_form12(g), chi);
}

ZetaRat zeta_halfline(const Form12Poly& g0, const MultChar& chi) {
  long q = g0.poly.p;
  TruncPoly cur = g0.poly;
  mpq_class prefix_scale = 1;
  long prefix_t = 0;
  ZetaRat total = rf_zero(q);
  for (long guard = 0;; ++guard) {
    check_internal(guard < 100000, "half-line descent failed to terminate");
    Form12Poly g = validate_form12(cur);
    if (g.e1 < g.e2) {
      // The u-side dominates everywhere on O^x x O: constant valuation e1.
      CycloScalar ci =
          reduced_char_sum(tp_div_pi_power(cur, g.e1), chi, /*v_full=*/true);
      total = rf_add(total, rf_scalar_mul(prefix_scale,
                                          rf_monomial(q, prefix_t + g.e1, ci)));
      break;
    }
    if (g.j0 == 1 || g.e1 == g.e2) {
      // One singular-free stationary-phase step finishes the region: with
      // j0 = 1 the v-partial of the reduction is a nonzero constant, and
      // with e1 = e2 a common zero of both partials would force v = 0 where
      // the value alpha' u^{i0} cannot vanish.
      ZetaRat piece =
          spf_closed({cur, {CoordDomain::Unit, CoordDomain::Full}, 1, 0, chi},
                     "half-line stationary-phase step must be singular-free");
      piece = rf_mul(piece, rf_monomial(q, prefix_t, cs_one()));
      total = rf_add(total, rf_scalar_mul(prefix_scale, piece));
      break;
    }
    // j0 > 1 and e1 > e2: the band where v is a unit has constant valuation
    // e2; the complement descends by v -> pi*v.
    TruncPoly shifted = tp_div_pi_power(cur, g.e2);
    CycloScalar vhat = reduced_char_sum(shifted, chi, /*v_full=*/false);
    total = rf_add(total, rf_scalar_mul(prefix_scale,
                                        rf_monomial(q, prefix_t + g.e2, vhat)));
    cur = tp_substitute(shifted, {tp_term(2, q, {1, 0}, padic_one(q)),
                                  tp_term(2, q, {0, 1}, pi_power(q, 1))});
    prefix_scale *= q_pow_neg(q, 1);
    prefix_t += g.e2;
  }
  ZetaRat out = rf_normalize(total);
  for (const auto& [a, b] : out.den)
    check_internal(a == 1 && b == 1,
                   "half-line denominator left the expected family");
  return out;
}

ZetaRat zeta_halfline(const TruncPoly& g, const MultChar& chi) {
  return zeta_halfline(validate_form12(g), chi);
}

TruncPoly hybrid_unit_slice(const HybridParams& params) {
  long p = params.p;
  TruncPoly f = build_hybrid(params);
  std::vector<TruncPoly> subs = {tp_term(2, p, {1, 0}, padic_one(p)),
                                 tp_term(2, p, {0, 1}, padic_one(p)),
                                 tp_term(2, p, {0, 0}, padic_one(p))};
  return tp_substitute(f, subs);
}

TruncPoly hybrid_unit_slice_translated(const HybridParams& params) {
  long p = params.p, k = params.k, r = params.r;
  PadicScalar tau = hybrid_tau(params);
  TruncPoly h1 = tp_term(2, p, {static_cast<int>(p), 0}, pi_power(p, p));
  for (long j = k + 1; j <= k + r; ++j) {
    PadicScalar c = padic_mul(padic_int(p, s_kr(k, r, j)),
                              padic_pow(tau, k + r - j));
    c = padic_mul(c, pi_power(p, j));
    tp_add_term(h1, {0, static_cast<int>(j)}, c);
  }
  return h1;
}

ZetaRat zeta_h_units(const HybridParams& params, const MultChar& chi) {
  long p = params.p, k = params.k, r = params.r;
  if (chi.p != p) throw InvalidParams("character base must match the parameter base");
  CaseInfo ci = classify_case(params);
  if (ci.kind != HybridCase::generic)
    throw InvalidParams("unit-box evaluator requires the non-Frobenius case");

  TruncPoly h = hybrid_unit_slice(params);
  IntegralState state{h, domain_unit(2), 1, 0, chi};

  // The reduction has exactly one singular torus zero, at (-sigma^{k+r}, tau).
  PadicScalar pu = padic_neg(padic_pow(params.sigma, k + r));
  PadicScalar pv = hybrid_tau(params);
  std::vector<std::vector<int>> sing =
      singular_points(reduce_mod_pi(h), domain_unit(2));
  check_internal(sing.size() == 1,
                 "unit box must have exactly one singular zero");
  check_internal(sing[0] == std::vector<int>{ac_digit(pu), ac_digit(pv)},
                 "unit-box singular zero must sit at (-sigma^{k+r}, tau)");

  SpfOutcome out = spf_step(state);
  check_internal(out.residuals.size() == 1,
                 "unit box must leave exactly one residual integral");

  // Translate at the exact lift of the singular point; the mechanical result
  // must match the closed binomial-sum expansion.
  IntegralState tr = translate_point(state, {pu, pv});
  TruncPoly h1 = hybrid_unit_slice_translated(params);
  check_internal(tp_equal(tr.poly, h1),
                 "translated unit-box polynomial differs from its closed form");

  ZetaRat res = rf_scalar_mul(tr.measure_factor, zeta_form12(h1, chi));
  ZetaRat total = rf_normalize(rf_add(out.contribution, res));
  for (const auto& [a, b] : total.den) {
    bool ok = (a == 1 && b == 1) || (a == p + k + 1 && b == p * (k + 1));
    check_internal(ok, "unit-box denominator left the expected family");
  }
  return total;
}

TruncPoly region1_form(const HybridParams& params) {
  long p = params.p, k = params.k, r = params.r, l = params.l;
  PadicScalar tau = hybrid_tau(params);
  TruncPoly w = tp_term(2, p, {0, 1}, padic_mul_pi_power(tau, 1));
  tp_add_term(w, {0, 0}, padic_neg(padic_one(p)));
  TruncPoly H = tp_zero(2, p);
  for (long i = 0; i <= k; ++i)
    H = tp_add(H, tp_scalar_mul(padic_int(p, binom(k + r, i + r)),
                                tp_pow(w, k - i)));
  TruncPoly out = tp_term(2, p, {static_cast<int>(p), 0}, pi_power(p, k + r));
  return tp_add(out, tp_mul(tp_term(2, p, {0, static_cast<int>(l)},
                                    padic_one(p)),
                            H));
}

TruncPoly region2_form(const HybridParams& params) {
  long p = params.p, k = params.k, r = params.r, l = params.l;
  PadicScalar tau = hybrid_tau(params);
  TruncPoly y = tp_term(2, p, {0, 1}, pi_power(p, 1));
  TruncPoly w = tp_term(2, p, {0, 0}, tau);
  tp_add_term(w, {0, 1}, padic_neg(pi_power(p, 1)));
  TruncPoly H = tp_zero(2, p);
  for (long i = 0; i <= k; ++i)
    H = tp_add(H, tp_scalar_mul(padic_int(p, binom(k + r, i + r)),
                                tp_mul(tp_pow(y, i), tp_pow(w, k - i))));
  TruncPoly out = tp_term(2, p, {static_cast<int>(p), 0}, pi_power(p, k + l));
  return tp_add(out, tp_mul(tp_term(2, p, {0, static_cast<int>(r)},
                                    padic_one(p)),
                            H));
}

TruncPoly region5_form(const HybridParams& params, long a) {
  if (a < 0) throw InvalidParams("slice index must be nonnegative");
  long p = params.p, k = params.k, r = params.r, l = params.l;
  PadicScalar tau = hybrid_tau(params);
  TruncPoly out = tp_term(2, p, {static_cast<int>(p), 0}, pi_power(p, a * p));
  for (long i = 0; i <= k; ++i) {
    mpz_class ai = hybrid_a(k, r, i);
    if (i % 2 == 1) ai = -ai;
    PadicScalar c = padic_mul(padic_int(p, ai), padic_pow(tau, k - i));
    c = padic_mul(c, pi_power(p, k + l - i));
    tp_add_term(out, {0, static_cast<int>(k + l - i)}, c);
  }
  return out;
}

TruncPoly region6_form(const HybridParams& params, long a) {
  if (a < 0) throw InvalidParams("slice index must be nonnegative");
  long p = params.p, k = params.k, r = params.r;
  PadicScalar tau = hybrid_tau(params);
  TruncPoly out = tp_term(2, p, {static_cast<int>(p), 0}, pi_power(p, a * p));
  for (long i = 0; i <= k; ++i) {
    mpz_class ai = hybrid_a(k, r, i);
    if (i % 2 == 1) ai = -ai;
    PadicScalar c = padic_mul(padic_int(p, ai), padic_pow(tau, k - i));
    c = padic_mul(c, pi_power(p, r + i));
    tp_add_term(out, {0, static_cast<int>(r + i)}, c);
  }
  return out;
}

HybridBreakdown zeta_hybrid(const HybridParams& params, const MultChar& chi) {
  long p = params.p, k = params.k, r = params.r, l = params.l;
  if (chi.p != p) throw InvalidParams("character base must match the parameter base");
  CaseInfo ci = classify_case(params);

  HybridBreakdown out;
  out.case_tag = ci.kind;

  if (ci.kind == HybridCase::degenerate) {
    // f = x^p + h^p takes only p-th power values up to units, so the whole
    // integral collapses to a single geometric band.
    CycloScalar upi = unit_power_integral(chi, p);
    out.total = rf_normalize(rf_geometric(rf_const(p, upi), 1, p, 0));
    return out;
  }

  long om = hybrid_omega(params);
  TruncPoly f = build_hybrid(params);
  CycloScalar upi_krl = unit_power_integral(chi, k + r + l);
  CycloScalar upi_p = unit_power_integral(chi, p);
  bool gate_krl = !cs_is_zero(upi_krl);
  bool gate_p = !cs_is_zero(upi_p);

  // A1 / A2: the wedges where one of z, y dominates, mapped to two-variable
  // forms by the unit substitution that spends the character gate.
  ZetaRat a1 = rf_zero(p), a2 = rf_zero(p);
  if (gate_krl) {
    ZetaRat z1 = zeta_form12(region1_form(params), chi);
    a1 = rf_scalar_mul(upi_krl,
                       rf_scalar_mul(q_pow_neg(p, om + 1),
                                     rf_mul(rf_monomial(p, l, cs_one()), z1)));
    ZetaRat z2 = zeta_form12(region2_form(params), chi);
    a2 = rf_scalar_mul(upi_krl,
                       rf_scalar_mul(q_pow_neg(p, om + 1),
                                     rf_mul(rf_monomial(p, r, cs_one()), z2)));
  }

  // A3: x in pi^omega O with y, z units. Singular-free: at every torus zero
  // of the reduction the y-partial r C(k+r,r) y^{r-1} z^l (tau z - y)^k is a
  // unit (tau z = y would force the value y^{k+r} z^l != 0).
  IntegralState st3{f, domain_full(3), 1, 0, chi};
  st3 = scale_vars(st3, {om, 0, 0},
                   {CoordDomain::Full, CoordDomain::Unit, CoordDomain::Unit});
  ZetaRat a3 = spf_closed(st3, "deep-x region must be singular-free");

  // A4: the band where the Frobenius term dominates outright.
  ZetaRat a4 = rf_zero(p);
  if (gate_p) {
    ZetaRat s = rf_zero(p);
    for (long a = 0; a < om; ++a)
      s = rf_add(s, rf_scalar_mul(q_pow_neg(p, a + 2),
                                  rf_monomial(p, a * p, cs_one())));
    a4 = rf_scalar_mul(upi_p, s);
  }

  // A5 / A6: finitely many half-line slices in the x-depth.
  ZetaRat a5 = rf_zero(p), a6 = rf_zero(p);
  if (gate_krl) {
    for (long a = 0; a < om; ++a) {
      a5 = rf_add(a5, rf_scalar_mul(q_pow_neg(p, a + 1),
                                    zeta_halfline(region5_form(params, a), chi)));
      a6 = rf_add(a6, rf_scalar_mul(q_pow_neg(p, a + 1),
                                    zeta_halfline(region6_form(params, a), chi)));
    }
    a5 = rf_scalar_mul(upi_krl, a5);
    a6 = rf_scalar_mul(upi_krl, a6);
  }

  // A7: y, z units with 0 <= ord x < omega. The x-unit slice is the unit-box
  // evaluator; the deeper slices all share one singular-free step because
  // the reduction no longer sees the Frobenius term.
  ZetaRat a7 = rf_zero(p);
  if (gate_krl) a7 = rf_scalar_mul(upi_krl, zeta_h_units(params, chi));
  if (om >= 2) {
    std::vector<TruncPoly> subs = {tp_term(3, p, {1, 0, 0}, pi_power(p, 1)),
                                   tp_term(3, p, {0, 1, 0}, padic_one(p)),
                                   tp_term(3, p, {0, 0, 1}, padic_one(p))};
    IntegralState st7{tp_substitute(f, subs), domain_unit(3), 1, 0, chi};
    ZetaRat v7 = spf_closed(st7, "unit-band region must be singular-free");
    mpq_class band = 0;
    for (long a = 1; a < om; ++a) band += q_pow_neg(p, a);
    a7 = rf_add(a7, rf_scalar_mul(band, v7));
  }

  ZetaRat sum = rf_add(rf_add(rf_add(a1, a2), rf_add(a3, a4)),
                       rf_add(rf_add(a5, a6), a7));
  ZetaRat total = rf_normalize(rf_geometric(sum, om + 2, k + r + l, 0));

  out.per_region["A1"] = a1;
  out.per_region["A2"] = a2;
  out.per_region["A3"] = a3;
  out.per_region["A4"] = a4;
  out.per_region["A5"] = a5;
  out.per_region["A6"] = a6;
  out.per_region["A7"] = a7;
  out.per_region["global_factor"] =
      rf_geometric(rf_const(p, cs_one()), om + 2, k + r + l, 0);
  out.total = total;

  check_internal(poles_contained(total, candidate_poles(params)),
                 "total denominator left the candidate pole families");
  return out;
}

std::set<PoleDescriptor> candidate_poles(const HybridParams& params) {
  long p = params.p, k = params.k, r = params.r, l = params.l;
  CaseInfo ci = classify_case(params);
  std::set<PoleDescriptor> out;
  if (ci.kind == HybridCase::degenerate) {
    mpq_class rp(mpz_class(-1), mpz_class(p));
    rp.canonicalize();
    out.insert({rp, p});
    return out;
  }
  out.insert({mpq_class(-1), 1});
  mpq_class base(mpz_class(-1), mpz_class(p));
  base.canonicalize();
  {
    mpq_class rp = base - mpq_class(mpz_class(2), mpz_class(k + r + l));
    rp.canonicalize();
    out.insert({rp, k + r + l});
  }
  for (long a : {r, l, k + 1}) {
    mpq_class rp = base - mpq_class(mpz_class(1), mpz_class(a));
    rp.canonicalize();
    out.insert({rp, p * a});
  }
  return out;
}

bool pole_factor_contained(const std::set<PoleDescriptor>& candidates, long a,
                           long b) {
  if (b < 1 || a < 1) return false;
  mpq_class rp(mpz_class(-a), mpz_class(b));
  rp.canonicalize();
  for (const PoleDescriptor& c : candidates)
    if (c.real_part == rp && c.period % b == 0) return true;
  return false;
}

bool poles_contained(const ZetaRat& value,
                     const std::set<PoleDescriptor>& candidates) {
  ZetaRat n = rf_normalize(value);
  for (const auto& [a, b] : n.den)
    if (!pole_factor_contained(candidates, a, b)) return false;
  return true;
}

}  // namespace igusa
