// Microbenchmarks for the hot paths: the residue-ring oracle DFS, rational-
// function series expansion and normalization, one stationary-phase step,
// and the two end-to-end evaluators.

#include <benchmark/benchmark.h>

#include "igusa/characters.hpp"
#include "igusa/hybrid.hpp"
#include "igusa/oracle.hpp"
#include "igusa/ratfun.hpp"
#include "igusa/spf.hpp"
#include "igusa/zeta.hpp"

namespace {

using namespace igusa;

MultChar triv5() { return make_character(5, 1, 0); }

HybridParams worked_params() { return make_hybrid_params(5, 5, 2, 3); }

// pi^7 u^5 - v^3 + pi^2 v^5 + pi^5 v^8 over q = 5.
TruncPoly worked_form12() {
  TruncPoly g = tp_zero(2, 5);
  tp_add_term(g, {5, 0}, padic_mul_pi_power(padic_int(5, 1), 7));
  tp_add_term(g, {0, 3}, padic_int(5, -1));
  tp_add_term(g, {0, 5}, padic_mul_pi_power(padic_int(5, 1), 2));
  tp_add_term(g, {0, 8}, padic_mul_pi_power(padic_int(5, 1), 5));
  return g;
}

void BM_oracle_measure_distribution(benchmark::State& state) {
  TruncPoly f = build_hybrid(worked_params());
  long M = state.range(0);
  for (auto _ : state) {
    MeasureDistribution dist = measure_distribution(f, M);
    benchmark::DoNotOptimize(dist);
  }
}
BENCHMARK(BM_oracle_measure_distribution)->Arg(1)->Arg(2)->Arg(3);

void BM_rf_series(benchmark::State& state) {
  ZetaRat z = zeta_form12(worked_form12(), triv5());
  long N = state.range(0);
  for (auto _ : state) {
    std::vector<CycloScalar> series = rf_series(z, N);
    benchmark::DoNotOptimize(series);
  }
}
BENCHMARK(BM_rf_series)->Arg(16)->Arg(64);

void BM_rf_normalize(benchmark::State& state) {
  ZetaRat z = zeta_form12(worked_form12(), triv5());
  ZetaRat square = rf_mul(z, z);
  for (auto _ : state) {
    ZetaRat out = rf_normalize(square);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(BM_rf_normalize);

void BM_spf_step(benchmark::State& state) {
  TruncPoly f = build_hybrid(worked_params());
  IntegralState st = extract_content(scale_vars(
      IntegralState{f, domain_full(3), 1, 0, triv5()}, {2, 0, 0},
      {CoordDomain::Full, CoordDomain::Unit, CoordDomain::Unit}));
  for (auto _ : state) {
    SpfOutcome out = spf_step(st);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(BM_spf_step);

void BM_zeta_hybrid(benchmark::State& state) {
  HybridParams params = worked_params();
  MultChar chi = triv5();
  for (auto _ : state) {
    HybridBreakdown out = zeta_hybrid(params, chi);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(BM_zeta_hybrid);

void BM_zeta_form12(benchmark::State& state) {
  TruncPoly g = worked_form12();
  MultChar chi = triv5();
  for (auto _ : state) {
    ZetaRat out = zeta_form12(g, chi);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(BM_zeta_form12);

}  // namespace

BENCHMARK_MAIN();
