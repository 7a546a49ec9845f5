// Acceptance gate: one pass/fail line per criterion, exact (zero-tolerance)
// comparisons throughout, optional per-criterion wall-clock limits enforced
// in-process. Usage: acceptance [N] runs criterion N (1..10); with no
// argument all criteria run. Exit status 0 iff every selected criterion
// passes.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "igusa/hybrid.hpp"
#include "igusa/newton.hpp"
#include "igusa/oracle.hpp"
#include "igusa/spf.hpp"
#include "igusa/zeta.hpp"
#include "test_support.hpp"

using namespace igusa;
using igusa::testing::over_factor;
using igusa::testing::poly;
using igusa::testing::rf_poly;
using igusa::testing::rq;

namespace {

struct Gate {
  std::vector<std::string> failures;
  std::vector<std::string> notes;

  void fail(const char* file, int line, const std::string& msg) {
    failures.push_back("[FAIL] " + std::string(file) + ":" +
                       std::to_string(line) + " " + msg);
  }
  void note(const std::string& msg) { notes.push_back(msg); }
};

#define ACHECK(gate, ...)                                \
  do {                                                   \
    if (!(__VA_ARGS__)) {                                \
      (gate).fail(__FILE__, __LINE__, #__VA_ARGS__);     \
    }                                                    \
  } while (0)

MultChar triv(long p) { return make_character(p, 1, 0); }

HybridParams p36() { return make_hybrid_params(3, 6, 4, 2); }
HybridParams p51() { return make_hybrid_params(5, 5, 2, 3); }

/// First index (< N) where the series of x and y differ; -1 when the first
/// N coefficients agree.
long first_series_diff(const ZetaRat& x, const ZetaRat& y, long N) {
  std::vector<CycloScalar> a = rf_series(x, N);
  std::vector<CycloScalar> b = rf_series(y, N);
  for (long m = 0; m < N; ++m) {
    if (!cs_eq(a[static_cast<size_t>(m)], b[static_cast<size_t>(m)])) return m;
  }
  return -1;
}

std::string compare_note(const ZetaRat& got, const ZetaRat& printed, long N) {
  long d = first_series_diff(got, printed, N);
  if (d < 0) return "matches the computed value";
  return "differs from the computed value (first series difference at T^" +
         std::to_string(d) + ")";
}

bool valid_family_params(long p, long k, long r, long l) {
  if (k < 1 || r < 1 || l < 1) return false;
  if ((r * l) % p == 0) return false;
  if ((r + l + k) % p != 0) return false;
  return (r % p) + (l % p) <= p;
}

// ---- criteria ---------------------------------------------------------------

// Exact closed form of the worked Frobenius-form instance.
void criterion_1(Gate& g) {
  HybridBreakdown out = zeta_hybrid(p36(), triv(3));
  ACHECK(g, out.case_tag == HybridCase::degenerate);
  ACHECK(g, rf_equals(out.total,
                      over_factor(rf_poly(3, {{0, rq(2, 3)}}), 1, 3)));
}

// An order-2 character annihilates the same instance exactly.
void criterion_2(Gate& g) {
  HybridBreakdown out = zeta_hybrid(p36(), make_character(3, 2, 1));
  ACHECK(g, out.case_tag == HybridCase::degenerate);
  ACHECK(g, rf_equals(out.total, rf_zero(3)));
}

// Per-region and per-cone reference values of the generic worked instance.
void criterion_3(Gate& g) {
  MultChar t5 = triv(5);
  HybridBreakdown out = zeta_hybrid(p51(), t5);
  ACHECK(g, rf_equals(out.per_region.at("A3"), igusa::testing::ref_A3()));
  ACHECK(g, rf_equals(out.per_region.at("A4"), igusa::testing::ref_A4()));
  ACHECK(g, rf_equals(out.per_region.at("A5"), igusa::testing::ref_A5()));
  ACHECK(g, rf_equals(out.per_region.at("A6"), igusa::testing::ref_A6()));

  Form12Poly g1 = validate_form12(igusa::testing::g1_poly());
  ACHECK(g, rf_equals(zeta_cone_contribution(g1, t5, 1),
                      igusa::testing::ref_g1_cone1()));
  ACHECK(g, rf_equals(zeta_cone_contribution(g1, t5, 3),
                      igusa::testing::ref_g1_cone3()));
  ACHECK(g, rf_equals(zeta_cone_contribution(g1, t5, 5),
                      igusa::testing::ref_g1_cone5()));

  // Cone 4: the tabulated row enumerates only the interior lattice family;
  // the production evaluator uses the partition-complete indexing. Both are
  // asserted exactly against their respective reference values.
  ACHECK(g, rf_equals(
                zeta_cone_contribution(g1, t5, 4, ConeIndexing::interior),
                igusa::testing::ref_g1_cone4_interior()));
  ACHECK(g, rf_equals(
                zeta_cone_contribution(g1, t5, 4, ConeIndexing::partition),
                igusa::testing::ref_g1_cone4_partition()));
  g.note("cone 4: tabulated row reproduced under interior indexing; "
         "production uses partition indexing (both asserted)");

  // Cone 2: the tabulated row is compared and the discrepancy reported; the
  // asserted regression value is the independently derived anchor.
  ZetaRat c2 = zeta_cone_contribution(g1, t5, 2);
  ACHECK(g, rf_equals(c2, igusa::testing::ref_g1_cone2_anchor()));
  g.note("cone 2: tabulated row with T^15-corrected denominator " +
         compare_note(c2, igusa::testing::ref_g1_cone2_printed(15), 40));
  g.note("cone 2: tabulated row as printed (T^18 denominator) " +
         compare_note(c2, igusa::testing::ref_g1_cone2_printed(18), 40));
  g.note("cone 2: asserted against the independently derived "
         "partition-complete anchor value");
}

// Two-variable evaluator vs. the residue-ring oracle across the corpus.
void criterion_4(Gate& g) {
  std::vector<igusa::testing::CorpusEntry> corpus =
      igusa::testing::form12_corpus();
  ACHECK(g, corpus.size() >= 20);
  for (const auto& entry : corpus) {
    ZetaRat z = zeta_form12(entry.g, entry.chi);
    if (!igusa::testing::series_matches_oracle(z, entry.g, entry.chi, 8)) {
      g.fail(__FILE__, __LINE__, "oracle mismatch on corpus entry: " + entry.name);
    }
  }
}

// Assembled three-variable totals vs. the residue-ring oracle.
void criterion_5(Gate& g) {
  const unsigned long budget = 100'000'000UL;
  HybridBreakdown b36 = zeta_hybrid(p36(), triv(3));
  ACHECK(g, igusa::testing::series_matches_oracle(
                b36.total, build_hybrid(p36()), triv(3), 6, budget));
  HybridBreakdown b51 = zeta_hybrid(p51(), triv(5));
  ACHECK(g, igusa::testing::series_matches_oracle(
                b51.total, build_hybrid(p51()), triv(5), 4, budget));
}

// Solution-count generating-function identity.
void criterion_6(Gate& g) {
  TruncPoly fx = poly(3, 1, {{{1}}});
  ZetaRat zx = over_factor(rf_poly(3, {{0, rq(2, 3)}}), 1, 1);
  PoincareReport rx = poincare_check(fx, zx, 5);
  ACHECK(g, rx.ok);
  ACHECK(g, rx.mismatched_indices.empty());

  TruncPoly fx2 = poly(3, 1, {{{2}}});
  ZetaRat zx2 = over_factor(rf_poly(3, {{0, rq(2, 3)}}), 1, 2);
  PoincareReport rx2 = poincare_check(fx2, zx2, 5);
  ACHECK(g, rx2.ok);

  PoincareReport r36 =
      poincare_check(build_hybrid(p36()), zeta_hybrid(p36(), triv(3)).total, 5);
  ACHECK(g, r36.ok);

  PoincareReport r51 =
      poincare_check(build_hybrid(p51()), zeta_hybrid(p51(), triv(5)).total, 5);
  ACHECK(g, r51.ok);
}

// Pole containment plus the exact candidate list of the generic instance.
void criterion_7(Gate& g) {
  std::set<PoleDescriptor> cand51 = candidate_poles(p51());
  std::set<PoleDescriptor> expected = {{rq(-1), 1},
                                       {rq(-2, 5), 10},
                                       {rq(-7, 10), 10},
                                       {rq(-8, 15), 15},
                                       {rq(-11, 30), 30}};
  ACHECK(g, cand51 == expected);

  ACHECK(g, poles_contained(zeta_hybrid(p51(), triv(5)).total, cand51));
  ACHECK(g, poles_contained(zeta_hybrid(p51(), make_character(5, 2, 1)).total,
                            cand51));
  ACHECK(g, poles_contained(zeta_hybrid(p36(), triv(3)).total,
                            candidate_poles(p36())));
}

// The computed denominators never contain the naive heavy factor when r = 1.
void criterion_8(Gate& g) {
  const long instances[][4] = {{3, 3, 1, 2}, {3, 6, 1, 2}, {3, 9, 1, 2},
                               {3, 3, 1, 5}, {5, 6, 1, 3}, {5, 7, 1, 2},
                               {7, 9, 1, 4}};
  int checked = 0;
  for (const auto& inst : instances) {
    HybridParams params =
        make_hybrid_params(inst[0], inst[1], inst[2], inst[3]);
    HybridBreakdown out = zeta_hybrid(params, triv(inst[0]));
    if (out.case_tag != HybridCase::generic) {
      g.fail(__FILE__, __LINE__,
             "instance unexpectedly not generic: p=" + std::to_string(inst[0]) +
                 " k=" + std::to_string(inst[1]));
      continue;
    }
    for (const auto& [a, b] : out.total.den) {
      if (rq(a, b) == rq(inst[0] + 1, inst[0])) {
        g.fail(__FILE__, __LINE__,
               "heavy denominator factor present: p=" + std::to_string(inst[0]) +
                   " k=" + std::to_string(inst[1]) + " factor (" +
                   std::to_string(a) + "," + std::to_string(b) + ")");
      }
    }
    ++checked;
  }
  ACHECK(g, checked >= 5);
}

// Exact identity sweeps: expansion, derivative, binomial sums, cone
// partition, and one-step measure conservation.
void criterion_9(Gate& g) {
  // Product-form expansion equals the closed expansion, and the formal
  // derivative equals its closed form, for every valid parameter tuple with
  // k + r + l <= 30.
  const long primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29};
  int combos = 0;
  for (long p : primes) {
    for (long k = 1; k <= 28; ++k) {
      for (long r = 1; k + r <= 29; ++r) {
        for (long l = 1; k + r + l <= 30; ++l) {
          if (!valid_family_params(p, k, r, l)) continue;
          HybridParams params = make_hybrid_params(p, k, r, l);
          if (!tp_equal(build_hybrid(params), expand_hybrid(params))) {
            g.fail(__FILE__, __LINE__,
                   "expansion mismatch at p=" + std::to_string(p) +
                       " k=" + std::to_string(k) + " r=" + std::to_string(r) +
                       " l=" + std::to_string(l));
          }
          if (!tp_equal(hybrid_partial_y(params),
                        hybrid_partial_y_closed(params))) {
            g.fail(__FILE__, __LINE__,
                   "derivative mismatch at p=" + std::to_string(p) +
                       " k=" + std::to_string(k) + " r=" + std::to_string(r) +
                       " l=" + std::to_string(l));
          }
          ++combos;
        }
      }
    }
  }
  ACHECK(g, combos > 200);

  // Binomial sums: defining alternating sum equals the closed form.
  for (long k = 1; k <= 10; ++k) {
    for (long r = 1; r <= 10; ++r) {
      for (long j = 1; j <= k + r; ++j) {
        if (s_kr(k, r, j) != s_kr_closed(k, r, j)) {
          g.fail(__FILE__, __LINE__,
                 "binomial sum mismatch at k=" + std::to_string(k) +
                     " r=" + std::to_string(r) + " j=" + std::to_string(j));
        }
      }
    }
  }

  // Cone partition: every lattice point in [0,60]^2 minus the origin is
  // covered exactly once, for all coprime leading pairs up to (12,12).
  for (long i0 = 1; i0 <= 12; ++i0) {
    for (long j0 = 1; j0 <= 12; ++j0) {
      if (std::gcd(i0, j0) != 1) continue;
      PartitionReport rep = partition_check(newton_faces(i0, j0), 60);
      if (!rep.ok || !rep.violations.empty()) {
        g.fail(__FILE__, __LINE__,
               "partition violation at i0=" + std::to_string(i0) +
                   " j0=" + std::to_string(j0));
      }
    }
  }

  // One-step measure conservation on random small polynomials.
  std::mt19937 rng(20260814u);
  const long small_primes[] = {2, 3, 5};
  int checked = 0;
  while (checked < 100) {
    long p = small_primes[rng() % 3];
    int n = 1 + static_cast<int>(rng() % 2);
    TruncPoly f = tp_zero(n, p);
    int terms = 1 + static_cast<int>(rng() % 3);
    for (int t = 0; t < terms; ++t) {
      std::vector<int> e(static_cast<size_t>(n));
      for (int j = 0; j < n; ++j) {
        e[static_cast<size_t>(j)] = static_cast<int>(rng() % 4);
      }
      long c = 1 + static_cast<long>(rng() % (p - 1 > 0 ? p - 1 : 1));
      long kk = static_cast<long>(rng() % 3);
      tp_add_term(f, e, padic_mul_pi_power(padic_int(p, c), kk));
    }
    Domain dom;
    for (int j = 0; j < n; ++j) {
      dom.push_back((rng() % 2) ? CoordDomain::Unit : CoordDomain::Full);
    }
    IntegralState st = extract_content(IntegralState{f, dom, 1, 0, triv(p)});
    if (fp_is_zero(reduce_mod_pi(st.poly))) continue;
    st.t_power = 0;

    SpfOutcome out = spf_step(st);
    std::vector<CycloScalar> series = rf_series(out.contribution, 2);
    mpq_class v = cs_as_rational(series[0]);
    mpq_class sigma = cs_as_rational(series[1]) * p / (p - 1);
    mpq_class qn = 1;
    for (int j = 0; j < n; ++j) qn *= p;
    mpq_class dbar = 1;
    for (CoordDomain c : dom) dbar *= (c == CoordDomain::Unit) ? p - 1 : p;
    mpq_class lhs =
        v + sigma + mpq_class(static_cast<long>(out.residuals.size())) / qn;
    if (lhs != dbar / qn) {
      g.fail(__FILE__, __LINE__, "measure leak on a random one-step state");
    }
    ++checked;
  }
}

// Self-similar drive agreement and budget honesty.
void criterion_10(Gate& g) {
  MultChar t3 = triv(3);

  // Three-variable worked instance: the drive and the assembly agree.
  TruncPoly f36 = build_hybrid(p36());
  ZetaRat drive36 =
      generic_drive(IntegralState{f36, domain_full(3), 1, 0, t3}, 1'000'000UL);
  ACHECK(g, rf_equals(drive36, zeta_hybrid(p36(), t3).total));

  // f = x: the dummy-variable embedding u over O^2 agrees with the
  // one-variable drive and with the two-variable evaluator on u + v (the
  // valid two-axis embedding of the same integral).
  ZetaRat dx2 = generic_drive(
      IntegralState{poly(3, 2, {{{1, 0}}}), domain_full(2), 1, 0, t3}, 1000);
  ZetaRat dx1 = generic_drive(
      IntegralState{poly(3, 1, {{{1}}}), domain_full(1), 1, 0, t3}, 1000);
  ACHECK(g, rf_equals(dx2, dx1));
  ACHECK(g, rf_equals(dx2, zeta_form12(poly(3, 2, {{{1, 0}}, {{0, 1}}}), t3)));
  // u^2 + v has the same value after translating v; the drive agrees with
  // the two-variable evaluator on it directly.
  ZetaRat duv = generic_drive(
      IntegralState{poly(3, 2, {{{2, 0}}, {{0, 1}}}), domain_full(2), 1, 0, t3},
      1000);
  ACHECK(g, rf_equals(duv, zeta_form12(poly(3, 2, {{{2, 0}}, {{0, 1}}}), t3)));

  // f = x^2: no two-axis embedding stays in the validated two-variable
  // shape, so the drive is gated against the closed value instead.
  ZetaRat dy2 = generic_drive(
      IntegralState{poly(3, 2, {{{2, 0}}}), domain_full(2), 1, 0, t3}, 1000);
  ZetaRat dy1 = generic_drive(
      IntegralState{poly(3, 1, {{{2}}}), domain_full(1), 1, 0, t3}, 1000);
  ACHECK(g, rf_equals(dy2, dy1));
  ACHECK(g, rf_equals(dy2, over_factor(rf_poly(3, {{0, rq(2, 3)}}), 1, 2)));

  // Budget honesty: a state chain with no self-similar closure reports
  // BudgetExceeded instead of a wrong value.
  bool threw = false;
  try {
    generic_drive(IntegralState{poly(5, 2, {{{2, 0}}, {{0, 3}}}),
                                domain_full(2), 1, 0, triv(5)},
                  1);
  } catch (const BudgetExceeded&) {
    threw = true;
  }
  ACHECK(g, threw);
}

struct CriterionSpec {
  int id;
  const char* description;
  double limit_seconds;  // <= 0: no in-process limit
  void (*fn)(Gate&);
};

const CriterionSpec kCriteria[] = {
    {1, "worked Frobenius-form instance evaluates to its exact closed form",
     1.0, criterion_1},
    {2, "order-2 character annihilates the Frobenius-form instance", 0.0,
     criterion_2},
    {3, "per-region and per-cone reference values of the generic instance",
     10.0, criterion_3},
    {4, "two-variable corpus agrees with the residue-ring oracle to order 8",
     120.0, criterion_4},
    {5, "assembled totals agree with the residue-ring oracle (orders 6 and 4)",
     300.0, criterion_5},
    {6, "solution-count generating-function identity holds to order 5", 0.0,
     criterion_6},
    {7, "pole containment and the exact candidate list", 0.0, criterion_7},
    {8, "no spurious heavy denominator factor across r = 1 instances", 0.0,
     criterion_8},
    {9, "identity sweeps: expansion, derivative, sums, partition, measure",
     60.0, criterion_9},
    {10, "self-similar drive agrees with closed evaluators; budget honesty",
     0.0, criterion_10},
};

}  // namespace

int main(int argc, char** argv) {
  int selected = 0;
  if (argc == 2) {
    selected = std::atoi(argv[1]);
    if (selected < 1 || selected > 10) {
      std::fprintf(stderr, "usage: %s [criterion 1..10]\n", argv[0]);
      return 2;
    }
  } else if (argc > 2) {
    std::fprintf(stderr, "usage: %s [criterion 1..10]\n", argv[0]);
    return 2;
  }

  bool all_ok = true;
  for (const CriterionSpec& spec : kCriteria) {
    if (selected != 0 && spec.id != selected) continue;

    Gate gate;
    auto t0 = std::chrono::steady_clock::now();
    try {
      spec.fn(gate);
    } catch (const std::exception& e) {
      gate.fail("acceptance", 0,
                std::string("unhandled exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    if (spec.limit_seconds > 0 && secs > spec.limit_seconds) {
      char buf[128];
      std::snprintf(buf, sizeof(buf), "runtime %.2f s exceeds the %.0f s limit",
                    secs, spec.limit_seconds);
      gate.fail("acceptance", 0, buf);
    }

    for (const std::string& f : gate.failures) std::printf("%s\n", f.c_str());
    std::printf("criterion %d: %s (%.2f s) — %s\n", spec.id,
                gate.failures.empty() ? "PASS" : "FAIL", secs,
                spec.description);
    for (const std::string& n : gate.notes) {
      std::printf("  note: %s\n", n.c_str());
    }
    if (!gate.failures.empty()) all_ok = false;
  }
  return all_ok ? 0 : 1;
}
