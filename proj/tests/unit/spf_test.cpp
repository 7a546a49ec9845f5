#include <random>
#include <vector>

#include "doctest.h"
#include "igusa/hybrid.hpp"
#include "igusa/oracle.hpp"
#include "igusa/spf.hpp"
#include "test_support.hpp"

using namespace igusa;
using igusa::testing::poly;
using igusa::testing::rq;
using igusa::testing::TermSpec;

namespace {

MultChar triv(long p) { return make_character(p, 1, 0); }

IntegralState full_state(const TruncPoly& f) {
  return IntegralState{f, domain_full(f.arity), 1, 0, triv(f.p)};
}

/// h(u,v) of the unit-box reduction: the hybrid polynomial with z = 1.
TruncPoly h_units_poly(const HybridParams& params) {
  const long p = params.p;
  std::vector<TruncPoly> subs = {tp_term(2, p, {1, 0}, padic_one(p)),
                                 tp_term(2, p, {0, 1}, padic_one(p)),
                                 tp_term(2, p, {0, 0}, padic_one(p))};
  return tp_substitute(build_hybrid(params), subs);
}

/// Z for f = x^d with trivial character: (1 - q^{-1}) / (1 - q^{-1} T^d).
ZetaRat monomial_zeta(long q, long d) {
  return igusa::testing::over_factor(
      igusa::testing::rf_poly(q, {{0, rq(q - 1, q)}}), 1, d);
}

}  // namespace

TEST_SUITE_BEGIN("spf");

TEST_CASE("singular points of reduced polynomials") {
  // f = x over F_3: the derivative is 1 everywhere, so no singular zeros.
  TruncPoly fx = poly(3, 1, {{{1}}});
  CHECK(singular_points(reduce_mod_pi(fx), domain_full(1)).empty());

  // f = x^2 over F_3: 0 is a double zero.
  TruncPoly fx2 = poly(3, 1, {{{2}}});
  auto pts = singular_points(reduce_mod_pi(fx2), domain_full(1));
  REQUIRE(pts.size() == 1);
  CHECK(pts[0] == std::vector<int>{0});

  // The unit-box reduction of the (5,5,2,3) hybrid has exactly one singular
  // point on the unit torus: (-sigma^{k+r}, tau) = (-1, 1) = (4, 1).
  TruncPoly h = h_units_poly(make_hybrid_params(5, 5, 2, 3));
  auto hpts = singular_points(reduce_mod_pi(h), domain_unit(2));
  REQUIRE(hpts.size() == 1);
  CHECK(hpts[0] == std::vector<int>{4, 1});

  CHECK_THROWS_AS(singular_points(reduce_mod_pi(fx2), domain_full(1), 2),
                  BudgetExceeded);
}

TEST_CASE("one step on f = x is already closed") {
  for (long q : {2L, 3L, 5L}) {
    SpfOutcome out = spf_step(full_state(poly(q, 1, {{{1}}})));
    CHECK(out.residuals.empty());
    CHECK(rf_equals(out.contribution, monomial_zeta(q, 1)));
  }
}

TEST_CASE("one step on f = x^2 leaves one residual") {
  SpfOutcome out = spf_step(full_state(poly(3, 1, {{{2}}})));

  // v = 2/3 (both units square to nonzero values), sigma = 0.
  auto series = rf_series(out.contribution, 2);
  CHECK(cs_as_rational(series[0]) == rq(2, 3));
  CHECK(cs_is_zero(series[1]));

  REQUIRE(out.residuals.size() == 1);
  const IntegralState& res = out.residuals[0];
  CHECK(tp_equal(res.poly, poly(3, 1, {{{2}, 1, 2}})));  // pi^2 x^2
  CHECK(res.measure_factor == rq(1, 3));
  CHECK(res.domain == domain_full(1));
}

TEST_CASE("zero reduction is rejected") {
  TruncPoly f = poly(3, 1, {{{1}, 1, 1}});  // pi*x
  CHECK_THROWS_AS(spf_step(full_state(f)), ZeroReduction);
}

TEST_CASE("deep-x hybrid region is singular-free and closed") {
  HybridParams params = make_hybrid_params(5, 5, 2, 3);
  IntegralState st = full_state(build_hybrid(params));
  st = scale_vars(st, {hybrid_omega(params), 0, 0},
                  {CoordDomain::Full, CoordDomain::Unit, CoordDomain::Unit});

  // The scaled polynomial pi^{10} x^5 + y^2 z^8 H has unit content.
  IntegralState extracted = extract_content(st);
  CHECK(extracted.t_power == 0);
  CHECK(tp_equal(extracted.poly, st.poly));

  SpfOutcome out = spf_step(extracted);
  CHECK(out.residuals.empty());
  CHECK(rf_equals(out.contribution, igusa::testing::ref_A3()));
}

TEST_CASE("variable scaling") {
  TruncPoly g = poly(5, 2, {{{2, 0}}, {{0, 3}}});  // u^2 + v^3
  IntegralState st = full_state(g);

  SUBCASE("all-zero exponents change nothing but the domain") {
    IntegralState out = scale_vars(st, {0, 0}, domain_unit(2));
    CHECK(tp_equal(out.poly, g));
    CHECK(out.measure_factor == 1);
    CHECK(out.domain == domain_unit(2));
  }

  SUBCASE("second-coordinate depth a scales the v-term by pi^{a j}") {
    IntegralState out = scale_vars(st, {0, 2}, domain_full(2));
    CHECK(tp_equal(out.poly, poly(5, 2, {{{2, 0}}, {{0, 3}, 1, 6}})));
    CHECK(out.measure_factor == rq(1, 25));
  }

  SUBCASE("hybrid scaling by (omega,1,1) extracts content k+r+l") {
    HybridParams params = make_hybrid_params(5, 5, 2, 3);
    TruncPoly f = build_hybrid(params);
    IntegralState scaled =
        scale_vars(full_state(f), {2, 1, 1}, domain_full(3));
    IntegralState out = extract_content(scaled);
    CHECK(out.t_power == 10);
    CHECK(tp_equal(out.poly, f));
    CHECK(out.measure_factor == rq(1, 625));
  }

  CHECK_THROWS_AS(scale_vars(st, {0, -1}, domain_full(2)), InvalidParams);
}

TEST_CASE("content extraction") {
  IntegralState st = full_state(poly(3, 1, {{{2}, 1, 2}}));  // pi^2 x^2
  IntegralState out = extract_content(st);
  CHECK(out.t_power == 2);
  CHECK(tp_equal(out.poly, poly(3, 1, {{{2}}})));

  IntegralState zero = full_state(tp_zero(1, 3));
  CHECK(tp_is_zero(extract_content(zero).poly));
  CHECK(extract_content(zero).t_power == 0);
}

TEST_CASE("point translation") {
  SUBCASE("at the origin it is a pure pi-scaling") {
    IntegralState st = full_state(poly(3, 1, {{{2}}}));
    IntegralState tr = translate_point(st, {padic_zero(3)});
    CHECK(tp_equal(tr.poly, poly(3, 1, {{{2}, 1, 2}})));
    CHECK(tr.measure_factor == rq(1, 3));
    CHECK(tr.domain == domain_full(1));

    // Extracting the content exposes the self-similar step q^{-1} T^2.
    IntegralState again = extract_content(tr);
    CHECK(again.t_power == 2);
    CHECK(tp_equal(again.poly, st.poly));
    IntegralState twice = extract_content(translate_point(again, {padic_zero(3)}));
    CHECK(twice.t_power == 4);
    CHECK(tp_equal(twice.poly, st.poly));
    CHECK(twice.measure_factor == rq(1, 9));
  }

  SUBCASE("the unit-box singular point produces the shifted form") {
    HybridParams params = make_hybrid_params(5, 5, 2, 3);
    TruncPoly h = h_units_poly(params);
    IntegralState st{h, domain_unit(2), 1, 0, triv(5)};
    IntegralState tr =
        translate_point(st, {padic_int(5, -1), padic_one(5)});
    CHECK(tp_equal(tr.poly, igusa::testing::h1_poly()));
    CHECK(tr.measure_factor == rq(1, 25));
    CHECK(tr.domain == domain_full(2));
  }
}

TEST_CASE("singularity index L(f, P)") {
  CHECK(l_index(poly(3, 1, {{{1}}}), {padic_zero(3)}) == 0);

  // f = pi^3 x + pi at P = 1: min(ord(pi^3 + pi), ord(pi^3)) = 1.
  TruncPoly f = poly(3, 1, {{{1}, 1, 3}, {{0}, 1, 1}});
  CHECK(l_index(f, {padic_one(3)}) == 1);

  // Two-term form with p coprime to the leading exponent: the index at a
  // unit point is ord(alpha) via the u-derivative.
  TruncPoly g = poly(5, 2, {{{2, 0}, 2, 3}, {{0, 3}, 1, 7}});
  CHECK(l_index(g, {padic_one(5), padic_one(5)}) == 3);

  // Bound on unit points: L <= max(ord alpha, ord beta) across the corpus
  // leading terms.
  TruncPoly g1 = igusa::testing::g1_poly();  // ord alpha = 7, ord beta = 0
  for (int u = 1; u < 5; ++u) {
    for (int v = 1; v < 5; ++v) {
      CHECK(l_index(g1, {padic_int(5, u), padic_int(5, v)}) <= 7);
    }
  }

  // All-undetermined input has no certified valuation.
  PadicScalar fuzz = padic_truncated(3, {0, 0, 0});
  TruncPoly bad = tp_term(1, 3, {1}, fuzz);
  CHECK_THROWS_AS(l_index(bad, {padic_one(3)}), InsufficientPrecision);
}

TEST_CASE("measure conservation across one step") {
  std::mt19937 rng(20260814u);
  const long primes[] = {2, 3, 5};
  int checked = 0;
  while (checked < 100) {
    long p = primes[rng() % 3];
    int n = 1 + static_cast<int>(rng() % 2);
    TruncPoly f = tp_zero(n, p);
    int terms = 1 + static_cast<int>(rng() % 3);
    for (int t = 0; t < terms; ++t) {
      std::vector<int> e(static_cast<size_t>(n));
      for (int j = 0; j < n; ++j) e[static_cast<size_t>(j)] = static_cast<int>(rng() % 4);
      long c = 1 + static_cast<long>(rng() % (p - 1 > 0 ? p - 1 : 1));
      long k = static_cast<long>(rng() % 3);
      tp_add_term(f, e, padic_mul_pi_power(padic_int(p, c), k));
    }
    Domain dom;
    for (int j = 0; j < n; ++j) {
      dom.push_back((rng() % 2) ? CoordDomain::Unit : CoordDomain::Full);
    }
    IntegralState st = extract_content(IntegralState{f, dom, 1, 0, triv(p)});
    if (fp_is_zero(reduce_mod_pi(st.poly))) continue;
    st.t_power = 0;  // isolate the step itself

    SpfOutcome out = spf_step(st);
    auto series = rf_series(out.contribution, 2);
    mpq_class v = cs_as_rational(series[0]);
    mpq_class sigma = cs_as_rational(series[1]) * p / (p - 1);
    mpq_class qn = 1;
    for (int j = 0; j < n; ++j) qn *= p;
    mpq_class dbar_size = 1;
    for (CoordDomain c : dom) dbar_size *= (c == CoordDomain::Unit) ? p - 1 : p;
    mpq_class lhs = v + sigma +
                    mpq_class(static_cast<long>(out.residuals.size())) / qn;
    CHECK(lhs == dbar_size / qn);
    ++checked;
  }
}

TEST_CASE("generic drive on monomials") {
  for (long q : {2L, 3L, 5L}) {
    CHECK(rf_equals(generic_drive(full_state(poly(q, 1, {{{1}}})), 1000),
                    monomial_zeta(q, 1)));
    CHECK(rf_equals(generic_drive(full_state(poly(q, 1, {{{2}}})), 1000),
                    monomial_zeta(q, 2)));
    CHECK(rf_equals(generic_drive(full_state(poly(q, 1, {{{3}}})), 1000),
                    monomial_zeta(q, 3)));
  }
}

TEST_CASE("generic drive reproduces the degenerate hybrid value") {
  TruncPoly f = build_hybrid(make_hybrid_params(3, 6, 4, 2));
  ZetaRat z = generic_drive(full_state(f), 100000);
  CHECK(rf_equals(z, monomial_zeta(3, 3)));
}

TEST_CASE("generic drive is invariant under a no-op scaling") {
  TruncPoly f = poly(3, 2, {{{1, 1}}});  // xy
  IntegralState st = full_state(f);
  ZetaRat direct = generic_drive(st, 100000);
  ZetaRat scaled = generic_drive(scale_vars(st, {0, 0}, domain_full(2)), 100000);
  CHECK(rf_equals(direct, scaled));
}

TEST_CASE("generic drive agrees with the oracle on small closing inputs") {
  struct Entry {
    long p;
    TruncPoly f;
  };
  std::vector<Entry> corpus;
  for (long p : {2L, 3L, 5L}) {
    corpus.push_back({p, poly(p, 1, {{{1}}})});
    corpus.push_back({p, poly(p, 1, {{{2}}})});
    corpus.push_back({p, poly(p, 1, {{{2}}, {{0}, 1, 1}})});   // x^2 + pi
    corpus.push_back({p, poly(p, 2, {{{1, 0}}, {{0, 1}}})});   // x + y
    corpus.push_back({p, poly(p, 2, {{{1, 1}}})});             // xy
    corpus.push_back({p, poly(p, 2, {{{2, 0}}, {{0, 2}}})});   // x^2 + y^2
    corpus.push_back({p, poly(p, 2, {{{2, 0}}, {{1, 1}}, {{0, 2}}})});
    corpus.push_back({p, poly(p, 2, {{{2, 1}}, {{1, 2}}})});   // xy(x+y)
    corpus.push_back({p, poly(p, 2, {{{1, 0}}, {{0, 1}, 1, 1}})});  // x + pi y
  }
  corpus.push_back({3, poly(3, 1, {{{3}}})});
  corpus.push_back({3, poly(3, 2, {{{1, 0}}, {{0, 2}}})});     // x + y^2
  corpus.push_back({5, poly(5, 2, {{{2, 0}}, {{0, 1}, 1, 1}})});  // x^2 + pi y

  for (const Entry& entry : corpus) {
    INFO("p = ", entry.p, ", f = ", tp_to_string(entry.f));
    ZetaRat z = generic_drive(full_state(entry.f), 500000);
    CHECK(igusa::testing::series_matches_oracle(z, entry.f, triv(entry.p), 6));
  }

  // A non-trivial character rides along: f = x^2 with the quadratic character
  // still collapses to the classical value.
  MultChar quad = make_character(5, 2, 1);
  TruncPoly fx2 = poly(5, 1, {{{2}}});
  ZetaRat z = generic_drive(IntegralState{fx2, domain_full(1), 1, 0, quad}, 1000);
  CHECK(rf_equals(z, monomial_zeta(5, 2)));
  CHECK(igusa::testing::series_matches_oracle(z, fx2, quad, 6));
}

TEST_CASE("generic drive reports budget exhaustion honestly") {
  TruncPoly cusp = poly(5, 2, {{{2, 0}}, {{0, 3}}});  // u^2 + v^3
  CHECK_THROWS_AS(generic_drive(full_state(cusp), 1), BudgetExceeded);
  CHECK_THROWS_AS(generic_drive(full_state(cusp), 2000), BudgetExceeded);
}

TEST_SUITE_END();
