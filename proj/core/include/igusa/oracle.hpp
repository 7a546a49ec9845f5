#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "igusa/characters.hpp"
#include "igusa/errors.hpp"
#include "igusa/padic.hpp"
#include "igusa/ratfun.hpp"

namespace igusa {

/// Default cap on the number of DFS branches explored by the oracles.
inline constexpr unsigned long kDefaultOracleBudget = 100'000'000UL;

/// Measure decomposition of the unit cube O^n by the value of f:
/// level_ac[e][u] is the Haar measure of {x in O^n : ord f(x) = e,
/// ac f(x) = u mod pi} for 0 <= e <= M and u in 1..p-1 (index u); tail is the
/// measure of {ord f(x) >= M+1}. The rows sum to 1 together with the tail.
struct MeasureDistribution {
  long q = 0;
  int n = 0;
  long M = -1;
  std::vector<std::vector<mpq_class>> level_ac;  ///< (M+1) x p, column 0 unused
  mpq_class tail = 0;
};

/// Computes the measure distribution of f by pruned digit DFS: branches whose
/// value has a determined valuation are classified without refinement.
/// Requires every coefficient of f to be exact or carry precision >= M+1.
/// Throws BudgetExceeded when more than `budget` branches are explored.
MeasureDistribution measure_distribution(const TruncPoly& f, long M,
                                         unsigned long budget = kDefaultOracleBudget);

/// Append-only on-disk table of solution counts, newline-delimited JSON
/// records {"key":..., "i":..., "N":"..."}. An empty path disables persistence
/// (the in-memory table still works).
class CountCache {
 public:
  CountCache() = default;
  explicit CountCache(std::string path);

  std::optional<mpz_class> lookup(const std::string& key, long i) const;
  void store(const std::string& key, long i, const mpz_class& N);

 private:
  std::string path_;
  std::map<std::pair<std::string, long>, mpz_class> table_;
};

/// Number of solutions of f = 0 in (O/pi^i)^n, by pruned digit DFS.
mpz_class count_solutions(const TruncPoly& f, long i,
                          unsigned long budget = kDefaultOracleBudget,
                          CountCache* cache = nullptr);

/// Flat full-enumeration count over all q^{ni} residue points; a slow
/// reference used to validate the pruned DFS on tiny instances.
mpz_class count_solutions_flat(const TruncPoly& f, long i,
                               unsigned long budget = kDefaultOracleBudget);

/// First M series coefficients of Z_f(s, chi) in T = q^{-s}, from the measure
/// distribution: coefficient of T^m sums chi(ac f) over the level-m set.
std::vector<CycloScalar> zeta_series_oracle(const TruncPoly& f,
                                            const MultChar& chi, long M,
                                            unsigned long budget = kDefaultOracleBudget);

/// Result of checking the Poincare-series identity
/// sum_i N_i (q^{-n} t)^i == (1 - t Z(t)) / (1 - t) to a given order.
struct PoincareReport {
  bool ok = true;
  long order = 0;
  std::vector<long> mismatched_indices;
};

/// Verifies the identity coefficientwise to order I (Z must have been
/// computed with the trivial character).
PoincareReport poincare_check(const TruncPoly& f, const ZetaRat& Z, long I,
                              unsigned long budget = kDefaultOracleBudget,
                              CountCache* cache = nullptr);

}  // namespace igusa
