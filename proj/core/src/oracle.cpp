#include "igusa/oracle.hpp"

#include <algorithm>
#include <fstream>

#include "json.hpp"

namespace igusa {

namespace {

using u64 = unsigned long long;

constexpr int kMaxTotalDegree = 60;

/// Sparse polynomial with coefficients in the depth-(M+1) digit ring.
///
/// A coefficient is a base-p packed word: digit i of the word (in the usual
/// positional sense) is the pi^i digit of the ring element.  The base field
/// has characteristic p, so ring arithmetic is digit-wise and carry-free:
/// addition adds matching digits mod p and multiplication by a residue digit
/// scales every digit mod p.  Plain integer arithmetic mod p^{M+1} would
/// propagate carries between digit positions and count in the wrong ring.
struct FastPoly {
  std::vector<std::vector<int>> exps;    // parallel arrays, zero coeffs dropped
  std::vector<u64> coeffs;
};

struct DfsContext {
  int n = 0;
  long p = 0;
  long M = 0;
  u64 P = 0;  // p^{M+1}: packed words live in [0, P)
  unsigned long budget = 0;
  unsigned long nodes = 0;
  std::vector<u64> ppow;                // p^0 .. p^{M+1}
  std::vector<std::vector<u64>> binom;  // exact Pascal rows up to kMaxTotalDegree
  // counts[e][u]: weight exponent -> number of classified branches.
  std::vector<std::vector<std::map<long, u64>>> counts;
  std::map<long, u64> tail_counts;
};

/// Digit-wise sum of two packed words: each digit is (a_i + b_i) mod p.
u64 add_digits(u64 a, u64 b, long p, long M) {
  const u64 up = static_cast<u64>(p);
  u64 out = 0;
  u64 place = 1;
  for (long i = 0; i <= M && (a != 0 || b != 0); ++i) {
    out += ((a % up + b % up) % up) * place;
    a /= up;
    b /= up;
    place *= up;
  }
  return out;
}

/// Digit-wise scaling of a packed word by a residue digit s in [0, p).
u64 scale_digits(u64 a, long s, long p, long M) {
  const u64 up = static_cast<u64>(p);
  const u64 us = static_cast<u64>(s);
  u64 out = 0;
  u64 place = 1;
  for (long i = 0; i <= M && a != 0; ++i) {
    out += ((a % up) * us % up) * place;
    a /= up;
    place *= up;
  }
  return out;
}

/// Multiplies a packed word by pi^j: digits shift up, the top ones truncate.
u64 shift_digits(const DfsContext& ctx, u64 a, int j) {
  if (j > ctx.M) return 0;
  return (a % ctx.ppow[static_cast<size_t>(ctx.M + 1 - j)]) *
         ctx.ppow[static_cast<size_t>(j)];
}

long ord_p(u64 c, long p) {
  long o = 0;
  while (c % static_cast<u64>(p) == 0) {
    c /= static_cast<u64>(p);
    ++o;
  }
  return o;
}

std::vector<std::vector<u64>> pascal_rows() {
  std::vector<std::vector<u64>> rows(kMaxTotalDegree + 1);
  for (int i = 0; i <= kMaxTotalDegree; ++i) {
    rows[i].assign(static_cast<size_t>(i) + 1, 1);
    for (int j = 1; j < i; ++j) {
      rows[i][static_cast<size_t>(j)] =
          rows[i - 1][static_cast<size_t>(j - 1)] + rows[i - 1][static_cast<size_t>(j)];
    }
  }
  return rows;
}

/// Converts an exact-or-precise TruncPoly to packed digit-ring coefficients.
FastPoly to_fast(const TruncPoly& f, long M, long p) {
  FastPoly out;
  for (const auto& [e, c] : f.terms) {
    if (!c.exact && c.precision() < M + 1) {
      throw InsufficientPrecision(
          "oracle needs every coefficient exact or with precision >= M+1");
    }
    int total = 0;
    for (int d : e) total += d;
    if (total > kMaxTotalDegree) {
      throw InvalidParams("total degree too large for the oracle");
    }
    u64 v = 0;
    u64 place = 1;
    for (size_t j = 0; j < c.coeffs.size() && j < static_cast<size_t>(M + 1); ++j) {
      v += static_cast<u64>(c.coeffs[j]) * place;
      place *= static_cast<u64>(p);
    }
    if (v != 0) {
      out.exps.push_back(e);
      out.coeffs.push_back(v);
    }
  }
  return out;
}

/// Replaces variable j by (a + pi*x_j) and truncates at pi^{M+1}.
FastPoly substitute_digit(const DfsContext& ctx, const FastPoly& g, int j, long a) {
  std::map<std::vector<int>, u64> acc;
  const long p = ctx.p;
  for (size_t t = 0; t < g.exps.size(); ++t) {
    const std::vector<int>& e = g.exps[t];
    const u64 c = g.coeffs[t];
    const int d = e[static_cast<size_t>(j)];
    if (d == 0) {
      u64& slot = acc[e];
      slot = add_digits(slot, c, p, ctx.M);
      continue;
    }
    // (a + pi x)^d = sum_b C(d,b) a^{d-b} pi^b x^b.  The binomial factor and
    // the digit power are residue digits, so each summand scales the packed
    // coefficient digit-wise and shifts it b places.
    std::vector<long> apow(static_cast<size_t>(d) + 1, 1);
    for (int i = 1; i <= d; ++i) {
      apow[static_cast<size_t>(i)] =
          apow[static_cast<size_t>(i) - 1] * a % p;
    }
    std::vector<int> e2 = e;
    for (int b = 0; b <= d && b <= ctx.M; ++b) {
      const long sc =
          static_cast<long>(ctx.binom[static_cast<size_t>(d)][static_cast<size_t>(b)] %
                            static_cast<u64>(p)) *
          apow[static_cast<size_t>(d - b)] % p;
      if (sc == 0) continue;
      const u64 coef = shift_digits(ctx, scale_digits(c, sc, p, ctx.M), b);
      if (coef != 0) {
        e2[static_cast<size_t>(j)] = b;
        u64& slot = acc[e2];
        slot = add_digits(slot, coef, p, ctx.M);
      }
    }
  }
  FastPoly out;
  out.exps.reserve(acc.size());
  out.coeffs.reserve(acc.size());
  for (const auto& [e, c] : acc) {
    if (c != 0) {
      out.exps.push_back(e);
      out.coeffs.push_back(c);
    }
  }
  return out;
}

void dfs(DfsContext& ctx, const FastPoly& g, long weight_exp) {
  if (++ctx.nodes > ctx.budget) {
    throw BudgetExceeded("oracle branch budget exhausted");
  }

  u64 c0 = 0;
  long min_var_ord = kInfiniteOrd;
  std::vector<char> active(static_cast<size_t>(ctx.n), 0);
  for (size_t t = 0; t < g.exps.size(); ++t) {
    bool constant = true;
    for (int j = 0; j < ctx.n; ++j) {
      if (g.exps[t][static_cast<size_t>(j)] != 0) {
        constant = false;
        active[static_cast<size_t>(j)] = 1;
      }
    }
    if (constant) {
      c0 = g.coeffs[t];
    } else {
      min_var_ord = std::min(min_var_ord, ord_p(g.coeffs[t], ctx.p));
    }
  }
  long o = (c0 == 0) ? kInfiniteOrd : ord_p(c0, ctx.p);

  if (o < min_var_ord) {
    // Every point of the branch has ord = o and the same leading digit.
    u64 lead = c0;
    for (long k = 0; k < o; ++k) lead /= static_cast<u64>(ctx.p);
    long u = static_cast<long>(lead % static_cast<u64>(ctx.p));
    ++ctx.counts[static_cast<size_t>(o)][static_cast<size_t>(u)][weight_exp];
    return;
  }
  if (min_var_ord == kInfiniteOrd) {
    // No variable terms and the constant vanishes mod p^{M+1}.
    ++ctx.tail_counts[weight_exp];
    return;
  }

  std::vector<int> vars;
  for (int j = 0; j < ctx.n; ++j) {
    if (active[static_cast<size_t>(j)]) vars.push_back(j);
  }
  const long child_weight = weight_exp + static_cast<long>(vars.size());
  std::vector<long> digits(vars.size(), 0);
  while (true) {
    FastPoly child = g;
    for (size_t k = 0; k < vars.size(); ++k) {
      child = substitute_digit(ctx, child, vars[k], digits[k]);
    }
    dfs(ctx, child, child_weight);
    size_t k = 0;
    while (k < digits.size() && ++digits[k] == ctx.p) {
      digits[k] = 0;
      ++k;
    }
    if (k == digits.size()) break;
  }
}

mpq_class weighted_measure(const std::map<long, u64>& counts, long q) {
  mpq_class total = 0;
  for (const auto& [we, cnt] : counts) {
    total += mpq_class(mpz_class(static_cast<unsigned long>(cnt))) *
             q_pow_neg(q, we);
  }
  return total;
}

}  // namespace

MeasureDistribution measure_distribution(const TruncPoly& f, long M,
                                         unsigned long budget) {
  if (f.arity < 1) throw InvalidParams("oracle needs at least one variable");
  if (M < 0) throw InvalidParams("oracle order must be >= 0");
  if (f.p < 2) throw InvalidParams("oracle base must be >= 2");

  DfsContext ctx;
  ctx.n = f.arity;
  ctx.p = f.p;
  ctx.M = M;
  ctx.budget = budget;
  ctx.binom = pascal_rows();
  {
    // p^{M+1} with an overflow guard so packed words stay within a u64.
    u64 P = 1;
    ctx.ppow.push_back(1);
    for (long j = 0; j <= M; ++j) {
      if (P > (1ULL << 62) / static_cast<u64>(f.p)) {
        throw InvalidParams("oracle level too deep for machine-word arithmetic");
      }
      P *= static_cast<u64>(f.p);
      ctx.ppow.push_back(P);
    }
    ctx.P = P;
  }
  ctx.counts.assign(static_cast<size_t>(M + 1),
                    std::vector<std::map<long, u64>>(static_cast<size_t>(f.p)));

  FastPoly start = to_fast(f, M, f.p);
  dfs(ctx, start, 0);

  MeasureDistribution out;
  out.q = f.p;
  out.n = f.arity;
  out.M = M;
  out.level_ac.assign(static_cast<size_t>(M + 1),
                      std::vector<mpq_class>(static_cast<size_t>(f.p), mpq_class(0)));
  mpq_class classified = 0;
  for (long e = 0; e <= M; ++e) {
    for (long u = 0; u < f.p; ++u) {
      mpq_class m = weighted_measure(ctx.counts[static_cast<size_t>(e)][static_cast<size_t>(u)],
                                     f.p);
      out.level_ac[static_cast<size_t>(e)][static_cast<size_t>(u)] = m;
      classified += m;
    }
  }
  out.tail = weighted_measure(ctx.tail_counts, f.p);
  check_internal(classified + out.tail == 1, "level-set measures must sum to 1");
  return out;
}

CountCache::CountCache(std::string path) : path_(std::move(path)) {
  if (path_.empty()) return;
  std::ifstream in(path_);
  if (!in) return;  // absent file: starts empty
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    nlohmann::json rec = nlohmann::json::parse(line, nullptr, false);
    if (rec.is_discarded() || !rec.contains("key") || !rec.contains("i") ||
        !rec.contains("N")) {
      throw Error("corrupt count-cache record: " + line);
    }
    table_[{rec["key"].get<std::string>(), rec["i"].get<long>()}] =
        mpz_class(rec["N"].get<std::string>());
  }
}

std::optional<mpz_class> CountCache::lookup(const std::string& key, long i) const {
  auto it = table_.find({key, i});
  if (it == table_.end()) return std::nullopt;
  return it->second;
}

void CountCache::store(const std::string& key, long i, const mpz_class& N) {
  auto it = table_.find({key, i});
  if (it != table_.end()) {
    check_internal(it->second == N, "conflicting counts for the same cache key");
    return;
  }
  table_[{key, i}] = N;
  if (path_.empty()) return;
  nlohmann::ordered_json rec;
  rec["key"] = key;
  rec["i"] = i;
  rec["N"] = N.get_str();
  std::ofstream out(path_, std::ios::app);
  if (!out) throw Error("cannot append to count cache at " + path_);
  out << rec.dump() << '\n';
}

mpz_class count_solutions(const TruncPoly& f, long i, unsigned long budget,
                          CountCache* cache) {
  if (i < 0) throw InvalidParams("solution-count level must be >= 0");
  if (i == 0) return 1;
  std::string key;
  if (cache != nullptr) {
    key = tp_key(f);
    if (auto hit = cache->lookup(key, i)) return *hit;
  }
  MeasureDistribution dist = measure_distribution(f, i - 1, budget);
  mpz_class qni;
  mpz_ui_pow_ui(qni.get_mpz_t(), static_cast<unsigned long>(f.p),
                static_cast<unsigned long>(f.arity) * static_cast<unsigned long>(i));
  mpq_class N = dist.tail * mpq_class(qni);
  N.canonicalize();
  check_internal(N.get_den() == 1, "solution count must be an integer");
  mpz_class result = N.get_num();
  if (cache != nullptr) cache->store(key, i, result);
  return result;
}

mpz_class count_solutions_flat(const TruncPoly& f, long i, unsigned long budget) {
  if (i < 0) throw InvalidParams("solution-count level must be >= 0");
  if (i == 0) return 1;
  std::vector<std::vector<PadicScalar>> points =
      enumerate_residue_ring(f.p, i, f.arity, budget);
  mpz_class count = 0;
  for (const auto& point : points) {
    PadicScalar v = tp_eval(f, point);
    if (padic_is_exact_zero(v)) {
      ++count;
      continue;
    }
    Ord o = ord(v);
    check_internal(o.finite || o.value >= i, "value precision below count level");
    if (!o.finite || o.value >= i) ++count;
  }
  return count;
}

std::vector<CycloScalar> zeta_series_oracle(const TruncPoly& f, const MultChar& chi,
                                            long M, unsigned long budget) {
  if (M < 0) throw InvalidParams("series order must be >= 0");
  if (chi.p != f.p) throw MismatchedBase("character base differs from polynomial base");
  std::vector<CycloScalar> out(static_cast<size_t>(M), cs_zero());
  if (M == 0) return out;
  MeasureDistribution dist = measure_distribution(f, M - 1, budget);
  for (long m = 0; m < M; ++m) {
    CycloScalar sum = cs_zero();
    for (long u = 1; u < f.p; ++u) {
      const mpq_class& w = dist.level_ac[static_cast<size_t>(m)][static_cast<size_t>(u)];
      if (w == 0) continue;
      sum = cs_add(sum, cs_scale(w, char_eval(chi, u)));
    }
    out[static_cast<size_t>(m)] = sum;
  }
  return out;
}

PoincareReport poincare_check(const TruncPoly& f, const ZetaRat& Z, long I,
                              unsigned long budget, CountCache* cache) {
  if (I < 0) throw InvalidParams("check order must be >= 0");
  if (Z.q != f.p) throw MismatchedBase("zeta base differs from polynomial base");

  // P(t) = (1 - t Z(t)) / (1 - t), expanded as a series.
  ZetaRat one = rf_rational(Z.q, 1);
  ZetaRat tZ = rf_mul(rf_monomial(Z.q, 1, cs_one()), Z);
  ZetaRat numer = rf_add(one, rf_scalar_mul(mpq_class(-1), tZ));
  ZetaRat inv_one_minus_t{Z.q, 1, {{0, cs_one()}}, {{0, 1}}};
  ZetaRat P = rf_mul(numer, inv_one_minus_t);
  std::vector<CycloScalar> rhs = rf_series(P, I + 1);

  PoincareReport report;
  report.order = I;
  mpz_class qn;
  mpz_ui_pow_ui(qn.get_mpz_t(), static_cast<unsigned long>(f.p),
                static_cast<unsigned long>(f.arity));
  mpq_class qn_inv_pow = 1;
  for (long i = 0; i <= I; ++i) {
    mpz_class Ni = count_solutions(f, i, budget, cache);
    mpq_class lhs = mpq_class(Ni) * qn_inv_pow;
    lhs.canonicalize();
    const CycloScalar& r = rhs[static_cast<size_t>(i)];
    if (!cs_is_rational(r) || cs_as_rational(r) != lhs) {
      report.ok = false;
      report.mismatched_indices.push_back(i);
    }
    qn_inv_pow /= mpq_class(qn);
    qn_inv_pow.canonicalize();
  }
  return report;
}

}  // namespace igusa
