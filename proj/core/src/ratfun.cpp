#include "igusa/ratfun.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <sstream>

namespace igusa {

namespace {

using Dense = std::vector<mpq_class>;  // ascending coefficients

void dense_trim(Dense& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Dense dense_mul(const Dense& a, const Dense& b) {
  if (a.empty() || b.empty()) return {};
  Dense out(a.size() + b.size() - 1, mpq_class(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      if (b[j] == 0) continue;
      out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

/// Exact division by a monic divisor; the remainder must vanish.
Dense dense_divide_exact(Dense a, const Dense& b) {
  check_internal(!b.empty() && b.back() == 1, "divisor must be monic");
  dense_trim(a);
  if (a.empty()) return {};
  check_internal(a.size() >= b.size(), "division underflow");
  Dense quot(a.size() - b.size() + 1, mpq_class(0));
  for (size_t k = quot.size(); k-- > 0;) {
    mpq_class c = a[k + b.size() - 1];
    quot[k] = c;
    if (c == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) a[k + j] -= c * b[j];
  }
  dense_trim(a);
  check_internal(a.empty(), "inexact polynomial division");
  return quot;
}

long lcm_long(long a, long b) { return std::lcm(a, b); }

}  // namespace

// ---- cyclotomic scalars -------------------------------------------------------

long totient(long m) {
  check_internal(m >= 1, "totient of nonpositive order");
  long result = m;
  long n = m;
  for (long d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      result -= result / d;
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

const std::vector<mpq_class>& cyclotomic_poly(long m) {
  static std::map<long, Dense> cache;
  static std::mutex mtx;
  std::scoped_lock lock(mtx);

  auto it = cache.find(m);
  if (it != cache.end()) return it->second;

  // Compute iteratively so every divisor's polynomial lands in the cache.
  for (long d = 1; d <= m; ++d) {
    if (m % d != 0 || cache.count(d)) continue;
    Dense poly(static_cast<size_t>(d) + 1, mpq_class(0));
    poly.front() = -1;
    poly.back() = 1;  // x^d - 1
    for (long e = 1; e < d; ++e) {
      if (d % e == 0) poly = dense_divide_exact(std::move(poly), cache.at(e));
    }
    cache.emplace(d, std::move(poly));
  }
  return cache.at(m);
}

namespace {

/// Reduces an ascending dense polynomial in zeta_m into the power basis.
CycloScalar reduce_to_basis(long m, Dense poly) {
  const Dense& phi = cyclotomic_poly(m);
  const size_t deg = phi.size() - 1;  // = phi(m)
  while (true) {
    dense_trim(poly);
    if (poly.size() <= deg) break;
    size_t k = poly.size() - 1 - deg;
    mpq_class c = poly.back();
    for (size_t j = 0; j < phi.size(); ++j) poly[k + j] -= c * phi[j];
  }
  poly.resize(deg, mpq_class(0));
  return CycloScalar{m, std::move(poly)};
}

}  // namespace

CycloScalar cs_rational(const mpq_class& r) { return CycloScalar{1, {r}}; }

CycloScalar cs_zero() { return cs_rational(mpq_class(0)); }

CycloScalar cs_one() { return cs_rational(mpq_class(1)); }

CycloScalar cs_zeta_pow(long m, long k) {
  check_internal(m >= 1, "cyclotomic order must be >= 1");
  long e = ((k % m) + m) % m;
  Dense poly(static_cast<size_t>(e) + 1, mpq_class(0));
  poly.back() = 1;
  return reduce_to_basis(m, std::move(poly));
}

CycloScalar cs_promote(const CycloScalar& x, long L) {
  if (x.m == L) return x;
  check_internal(L % x.m == 0, "cyclotomic promotion needs m | L");
  long step = L / x.m;
  Dense poly;
  for (size_t i = 0; i < x.coords.size(); ++i) {
    if (x.coords[i] == 0) continue;
    size_t e = i * static_cast<size_t>(step);
    if (poly.size() <= e) poly.resize(e + 1, mpq_class(0));
    poly[e] += x.coords[i];
  }
  return reduce_to_basis(L, std::move(poly));
}

CycloScalar cs_add(const CycloScalar& x, const CycloScalar& y) {
  long L = lcm_long(x.m, y.m);
  CycloScalar a = cs_promote(x, L);
  CycloScalar b = cs_promote(y, L);
  for (size_t i = 0; i < a.coords.size(); ++i) a.coords[i] += b.coords[i];
  return a;
}

CycloScalar cs_neg(const CycloScalar& x) {
  CycloScalar out = x;
  for (auto& c : out.coords) c = -c;
  return out;
}

CycloScalar cs_sub(const CycloScalar& x, const CycloScalar& y) {
  return cs_add(x, cs_neg(y));
}

CycloScalar cs_mul(const CycloScalar& x, const CycloScalar& y) {
  long L = lcm_long(x.m, y.m);
  CycloScalar a = cs_promote(x, L);
  CycloScalar b = cs_promote(y, L);
  Dense prod = dense_mul(a.coords, b.coords);
  return reduce_to_basis(L, std::move(prod));
}

CycloScalar cs_scale(const mpq_class& r, const CycloScalar& x) {
  CycloScalar out = x;
  for (auto& c : out.coords) c *= r;
  return out;
}

bool cs_is_zero(const CycloScalar& x) {
  return std::all_of(x.coords.begin(), x.coords.end(),
                     [](const mpq_class& c) { return c == 0; });
}

bool cs_eq(const CycloScalar& x, const CycloScalar& y) {
  return cs_is_zero(cs_sub(x, y));
}

bool cs_is_rational(const CycloScalar& x) {
  for (size_t i = 1; i < x.coords.size(); ++i) {
    if (x.coords[i] != 0) return false;
  }
  return true;
}

mpq_class cs_as_rational(const CycloScalar& x) {
  check_internal(cs_is_rational(x), "scalar is not rational");
  return x.coords.empty() ? mpq_class(0) : x.coords.front();
}

std::string cs_to_string(const CycloScalar& x) {
  if (cs_is_rational(x)) return cs_as_rational(x).get_str();
  std::ostringstream out;
  out << '(';
  for (size_t i = 0; i < x.coords.size(); ++i) {
    if (i) out << ',';
    out << x.coords[i].get_str();
  }
  out << "|zeta" << x.m << ')';
  return out.str();
}

// ---- rational functions in T --------------------------------------------------

namespace {

void require_value(const ZetaRat& x) {
  if (x.q < 2) throw InvalidParams("base q must be >= 2");
}

/// Inserts c*T^t, promoting to the map's shared order; drops zeros.
void num_accumulate(std::map<long, CycloScalar>& num, long order, long t,
                    const CycloScalar& c) {
  CycloScalar v = cs_promote(c, order);
  auto it = num.find(t);
  if (it == num.end()) {
    if (!cs_is_zero(v)) num.emplace(t, std::move(v));
    return;
  }
  CycloScalar s = cs_add(it->second, v);
  if (cs_is_zero(s)) {
    num.erase(it);
  } else {
    it->second = std::move(s);
  }
}

std::map<long, CycloScalar> num_promote(const std::map<long, CycloScalar>& num,
                                        long order) {
  std::map<long, CycloScalar> out;
  for (const auto& [t, c] : num) num_accumulate(out, order, t, c);
  return out;
}

/// N * (1 - q^{-a} T^b).
std::map<long, CycloScalar> num_mul_factor(
    const std::map<long, CycloScalar>& num, long order, long q, long a,
    long b) {
  std::map<long, CycloScalar> out = num_promote(num, order);
  mpq_class c = q_pow_neg(q, a);
  for (const auto& [t, v] : num) {
    num_accumulate(out, order, t + b, cs_scale(-c, v));
  }
  return out;
}

std::map<long, CycloScalar> num_mul(const std::map<long, CycloScalar>& x,
                                    const std::map<long, CycloScalar>& y,
                                    long order) {
  std::map<long, CycloScalar> out;
  for (const auto& [tx, cx] : x) {
    for (const auto& [ty, cy] : y) {
      num_accumulate(out, order, tx + ty, cs_mul(cx, cy));
    }
  }
  return out;
}

bool num_equal(const std::map<long, CycloScalar>& x,
               const std::map<long, CycloScalar>& y) {
  if (x.size() != y.size()) return false;
  auto ix = x.begin();
  auto iy = y.begin();
  for (; ix != x.end(); ++ix, ++iy) {
    if (ix->first != iy->first || !cs_eq(ix->second, iy->second)) return false;
  }
  return true;
}

/// Attempts exact division of the numerator by (1 - q^{-a} T^b) via the
/// recurrence h_t = n_t + q^{-a} h_{t-b}; exact iff the top b values vanish.
bool num_divide_factor(const std::map<long, CycloScalar>& num, long order,
                       long q, long a, long b,
                       std::map<long, CycloScalar>* quotient) {
  if (num.empty()) {
    quotient->clear();
    return true;
  }
  long D = num.rbegin()->first;
  std::vector<CycloScalar> h(static_cast<size_t>(D) + 1, cs_zero());
  mpq_class c = q_pow_neg(q, a);
  for (long t = 0; t <= D; ++t) {
    auto it = num.find(t);
    CycloScalar v = (it == num.end()) ? cs_zero() : it->second;
    if (t >= b) v = cs_add(v, cs_scale(c, h[static_cast<size_t>(t - b)]));
    h[static_cast<size_t>(t)] = std::move(v);
  }
  for (long t = std::max<long>(0, D - b + 1); t <= D; ++t) {
    if (!cs_is_zero(h[static_cast<size_t>(t)])) return false;
  }
  quotient->clear();
  for (long t = 0; t <= D - b; ++t) {
    if (!cs_is_zero(h[static_cast<size_t>(t)])) {
      quotient->emplace(t, h[static_cast<size_t>(t)]);
    }
  }
  return true;
}

}  // namespace

mpq_class q_pow_neg(long q, long a) {
  check_internal(q >= 2 && a >= 0, "q_pow_neg domain");
  mpz_class qa;
  mpz_ui_pow_ui(qa.get_mpz_t(), static_cast<unsigned long>(q),
                static_cast<unsigned long>(a));
  mpq_class r(mpz_class(1), qa);
  r.canonicalize();
  return r;
}

ZetaRat rf_zero(long q) {
  ZetaRat out{q, 1, {}, {}};
  require_value(out);
  return out;
}

ZetaRat rf_const(long q, const CycloScalar& c) {
  return rf_monomial(q, 0, c);
}

ZetaRat rf_rational(long q, const mpq_class& r) {
  return rf_const(q, cs_rational(r));
}

ZetaRat rf_monomial(long q, long t, const CycloScalar& c) {
  if (t < 0) throw InvalidParams("numerator T-powers must be >= 0");
  ZetaRat out{q, c.m, {}, {}};
  require_value(out);
  num_accumulate(out.num, out.zeta_order, t, c);
  return out;
}

ZetaRat rf_add(const ZetaRat& x, const ZetaRat& y) {
  require_value(x);
  require_value(y);
  if (x.q != y.q) throw MismatchedBase("rational functions over different q");
  long order = lcm_long(x.zeta_order, y.zeta_order);

  // Common denominator: each factor with max multiplicity of the two sides.
  std::multiset<std::pair<long, long>> common = x.den;
  {
    auto rest = x.den;
    for (const auto& f : y.den) {
      auto it = rest.find(f);
      if (it != rest.end()) {
        rest.erase(it);
      } else {
        common.insert(f);
      }
    }
  }
  auto lift = [&](const ZetaRat& z) {
    std::map<long, CycloScalar> num = num_promote(z.num, order);
    auto missing = common;
    for (const auto& f : z.den) missing.erase(missing.find(f));
    for (const auto& [a, b] : missing) {
      num = num_mul_factor(num, order, x.q, a, b);
    }
    return num;
  };
  std::map<long, CycloScalar> nx = lift(x);
  std::map<long, CycloScalar> ny = lift(y);
  for (const auto& [t, c] : ny) num_accumulate(nx, order, t, c);
  return rf_normalize(ZetaRat{x.q, order, std::move(nx), std::move(common)});
}

ZetaRat rf_mul(const ZetaRat& x, const ZetaRat& y) {
  require_value(x);
  require_value(y);
  if (x.q != y.q) throw MismatchedBase("rational functions over different q");
  long order = lcm_long(x.zeta_order, y.zeta_order);
  std::map<long, CycloScalar> num =
      num_mul(num_promote(x.num, order), num_promote(y.num, order), order);
  std::multiset<std::pair<long, long>> den = x.den;
  den.insert(y.den.begin(), y.den.end());
  return rf_normalize(ZetaRat{x.q, order, std::move(num), std::move(den)});
}

ZetaRat rf_scalar_mul(const CycloScalar& c, const ZetaRat& x) {
  long order = lcm_long(c.m, x.zeta_order);
  std::map<long, CycloScalar> num;
  for (const auto& [t, v] : x.num) {
    num_accumulate(num, order, t, cs_mul(c, v));
  }
  return rf_normalize(ZetaRat{x.q, order, std::move(num), x.den});
}

ZetaRat rf_scalar_mul(const mpq_class& r, const ZetaRat& x) {
  return rf_scalar_mul(cs_rational(r), x);
}

ZetaRat rf_normalize(const ZetaRat& x) {
  require_value(x);
  ZetaRat out{x.q, x.zeta_order, {}, {}};
  for (const auto& [t, c] : x.num) num_accumulate(out.num, out.zeta_order, t, c);
  if (out.num.empty()) return out;  // canonical zero drops all factors
  out.den = x.den;

  bool changed = true;
  while (changed) {
    changed = false;
    std::pair<long, long> prev{-1, -1};
    for (const auto& f : out.den) {
      if (f == prev) continue;  // same factor value already tried
      prev = f;
      std::map<long, CycloScalar> quot;
      if (num_divide_factor(out.num, out.zeta_order, out.q, f.first, f.second,
                            &quot)) {
        out.num = std::move(quot);
        out.den.erase(out.den.find(f));
        changed = true;
        break;
      }
    }
    if (out.num.empty()) {
      out.den.clear();
      break;
    }
  }
  return out;
}

std::vector<CycloScalar> rf_series(const ZetaRat& x, long N) {
  require_value(x);
  if (N < 0) throw InvalidParams("series order must be >= 0");
  std::vector<CycloScalar> out(static_cast<size_t>(N), cs_zero());
  if (N == 0) return out;
  for (const auto& [t, c] : x.num) {
    if (t < N) out[static_cast<size_t>(t)] = cs_promote(c, x.zeta_order);
  }
  // 1/(1 - cT^b) satisfies out = in + c T^b out, applied factor by factor.
  for (const auto& [a, b] : x.den) {
    mpq_class c = q_pow_neg(x.q, a);
    for (long t = b; t < N; ++t) {
      out[static_cast<size_t>(t)] =
          cs_add(out[static_cast<size_t>(t)],
                 cs_scale(c, out[static_cast<size_t>(t - b)]));
    }
  }
  return out;
}

bool rf_equals(const ZetaRat& x, const ZetaRat& y) {
  require_value(x);
  require_value(y);
  if (x.q != y.q) throw MismatchedBase("rational functions over different q");
  long order = lcm_long(x.zeta_order, y.zeta_order);
  std::map<long, CycloScalar> lhs = num_promote(x.num, order);
  for (const auto& [a, b] : y.den) {
    lhs = num_mul_factor(lhs, order, x.q, a, b);
  }
  std::map<long, CycloScalar> rhs = num_promote(y.num, order);
  for (const auto& [a, b] : x.den) {
    rhs = num_mul_factor(rhs, order, x.q, a, b);
  }
  return num_equal(lhs, rhs);
}

ZetaRat rf_geometric(const ZetaRat& term, long ratio_a, long ratio_b,
                     long start) {
  require_value(term);
  if (ratio_a <= 0) {
    throw DivergentSeries("geometric ratio needs a positive q-exponent");
  }
  if (ratio_b < 1) throw InvalidParams("geometric ratio needs T-period >= 1");
  if (start < 0) throw InvalidParams("geometric start must be >= 0");
  ZetaRat factor{term.q, 1, {}, {}};
  num_accumulate(factor.num, 1, ratio_b * start,
                 cs_rational(q_pow_neg(term.q, ratio_a * start)));
  factor.den.emplace(ratio_a, ratio_b);
  return rf_mul(term, factor);
}

std::set<PoleDescriptor> poles_of(const ZetaRat& x) {
  ZetaRat n = rf_normalize(x);
  std::set<PoleDescriptor> out;
  for (const auto& [a, b] : n.den) {
    mpq_class rho(-a, b);
    rho.canonicalize();
    out.insert(PoleDescriptor{rho, b});
  }
  return out;
}

ZetaRat rf_substitute_T_power(const ZetaRat& x, long k) {
  require_value(x);
  if (k < 1) throw InvalidParams("T-power substitution needs k >= 1");
  ZetaRat out{x.q, x.zeta_order, {}, {}};
  for (const auto& [t, c] : x.num) out.num.emplace(t * k, c);
  for (const auto& [a, b] : x.den) out.den.emplace(a, b * k);
  return out;
}

std::string rf_to_string(const ZetaRat& x) {
  if (x.num.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [t, c] : x.num) {
    std::string cs = cs_to_string(c);
    if (!first) out << " + ";
    first = false;
    out << cs;
    if (t != 0) out << "*T^" << t;
  }
  std::string num = out.str();
  if (x.den.empty()) return num;
  std::ostringstream full;
  full << '(' << num << ") / (";
  bool fd = true;
  for (const auto& [a, b] : x.den) {
    if (!fd) full << " * ";
    fd = false;
    full << "(1 - " << x.q << "^-" << a << " T^" << b << ')';
  }
  full << ')';
  return full.str();
}

}  // namespace igusa
