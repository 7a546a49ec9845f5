#include "igusa/padic.hpp"

#include <algorithm>
#include <sstream>

namespace igusa {

namespace {

void require_base(long p) {
  if (p < 2) throw InvalidParams("base must be a prime >= 2");
}

void require_same_base(const PadicScalar& x, const PadicScalar& y) {
  if (x.p != y.p) throw MismatchedBase("scalars have different base primes");
}

void validate_digits(long p, const std::vector<int>& coeffs) {
  for (int d : coeffs) {
    if (d < 0 || d >= p) throw InvalidParams("digit outside [0, p)");
  }
}

/// Strips trailing zero digits (canonical form for exact scalars).
void strip_trailing_zeros(std::vector<int>& coeffs) {
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
}

/// First stored nonzero index, or `fallback` when all stored digits vanish.
long first_nonzero_or(const std::vector<int>& coeffs, long fallback) {
  for (size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] != 0) return static_cast<long>(i);
  }
  return fallback;
}

long saturating_add(long a, long b) {
  if (a == kInfiniteOrd || b == kInfiniteOrd) return kInfiniteOrd;
  if (a > kInfiniteOrd - b) return kInfiniteOrd;
  return a + b;
}

}  // namespace

// ---- scalar construction ----------------------------------------------------

PadicScalar padic_exact(long p, std::vector<int> coeffs) {
  require_base(p);
  validate_digits(p, coeffs);
  strip_trailing_zeros(coeffs);
  return PadicScalar{p, std::move(coeffs), /*exact=*/true};
}

PadicScalar padic_truncated(long p, std::vector<int> coeffs) {
  require_base(p);
  if (coeffs.empty()) throw InvalidParams("precision must be >= 1");
  validate_digits(p, coeffs);
  return PadicScalar{p, std::move(coeffs), /*exact=*/false};
}

PadicScalar padic_int(long p, const mpz_class& n) {
  require_base(p);
  mpz_class r = n % p;
  if (r < 0) r += p;
  return padic_exact(p, {static_cast<int>(r.get_si())});
}

PadicScalar padic_int(long p, long n) { return padic_int(p, mpz_class(n)); }

PadicScalar padic_zero(long p) { return padic_exact(p, {}); }

PadicScalar padic_one(long p) { return padic_exact(p, {1}); }

PadicScalar pi_power(long p, long k) {
  require_base(p);
  if (k < 0) throw InvalidParams("pi_power requires k >= 0");
  std::vector<int> coeffs(static_cast<size_t>(k) + 1, 0);
  coeffs.back() = 1;
  return padic_exact(p, std::move(coeffs));
}

PadicScalar padic_truncate(const PadicScalar& x, long prec) {
  if (prec < 1) throw InvalidParams("precision must be >= 1");
  std::vector<int> coeffs = x.coeffs;
  if (static_cast<long>(coeffs.size()) > prec) {
    coeffs.resize(static_cast<size_t>(prec));
  } else if (x.exact) {
    // Digits beyond the stored ones are known zeros; pad to the full width.
    coeffs.resize(static_cast<size_t>(prec), 0);
  }
  // A truncated input shorter than `prec` keeps its own (smaller) precision.
  return PadicScalar{x.p, std::move(coeffs), /*exact=*/false};
}

// ---- scalar queries ---------------------------------------------------------

bool padic_is_exact_zero(const PadicScalar& x) {
  return x.exact && x.coeffs.empty();
}

bool padic_is_zero_to_precision(const PadicScalar& x) {
  return std::all_of(x.coeffs.begin(), x.coeffs.end(),
                     [](int d) { return d == 0; });
}

Ord ord(const PadicScalar& x) {
  long idx = first_nonzero_or(x.coeffs, -1);
  if (idx >= 0) return Ord{true, idx};
  return Ord{false, x.precision()};
}

long ord_or_throw(const PadicScalar& x) {
  Ord o = ord(x);
  if (!o.finite) {
    throw InsufficientPrecision("valuation undetermined: zero to precision");
  }
  return o.value;
}

PadicScalar ac(const PadicScalar& x) {
  long v = ord_or_throw(x);
  std::vector<int> coeffs(x.coeffs.begin() + v, x.coeffs.end());
  if (x.exact) return padic_exact(x.p, std::move(coeffs));
  return padic_truncated(x.p, std::move(coeffs));
}

int ac_digit(const PadicScalar& x) {
  long v = ord_or_throw(x);
  return x.coeffs[static_cast<size_t>(v)];
}

bool padic_eq(const PadicScalar& x, const PadicScalar& y) {
  return x.p == y.p && x.exact == y.exact && x.coeffs == y.coeffs;
}

std::string padic_key(const PadicScalar& x) {
  std::ostringstream out;
  out << '[';
  for (size_t i = 0; i < x.coeffs.size(); ++i) {
    if (i) out << ',';
    out << x.coeffs[i];
  }
  if (!x.exact) out << '|' << x.coeffs.size();
  out << ']';
  return out.str();
}

// ---- scalar arithmetic ------------------------------------------------------

PadicScalar padic_add(const PadicScalar& x, const PadicScalar& y) {
  require_same_base(x, y);
  long prec = std::min(x.precision(), y.precision());
  size_t len = (prec == kInfiniteOrd)
                   ? std::max(x.coeffs.size(), y.coeffs.size())
                   : static_cast<size_t>(prec);
  std::vector<int> coeffs(len, 0);
  for (size_t i = 0; i < len; ++i) {
    int s = 0;
    if (i < x.coeffs.size()) s += x.coeffs[i];
    if (i < y.coeffs.size()) s += y.coeffs[i];
    coeffs[i] = s % static_cast<int>(x.p);
  }
  if (prec == kInfiniteOrd) return padic_exact(x.p, std::move(coeffs));
  return padic_truncated(x.p, std::move(coeffs));
}

PadicScalar padic_neg(const PadicScalar& x) {
  std::vector<int> coeffs(x.coeffs.size(), 0);
  for (size_t i = 0; i < x.coeffs.size(); ++i) {
    coeffs[i] = x.coeffs[i] == 0 ? 0 : static_cast<int>(x.p) - x.coeffs[i];
  }
  if (x.exact) return padic_exact(x.p, std::move(coeffs));
  return padic_truncated(x.p, std::move(coeffs));
}

PadicScalar padic_sub(const PadicScalar& x, const PadicScalar& y) {
  return padic_add(x, padic_neg(y));
}

PadicScalar padic_mul(const PadicScalar& x, const PadicScalar& y) {
  require_same_base(x, y);
  if (padic_is_exact_zero(x) || padic_is_exact_zero(y)) {
    return padic_zero(x.p);
  }
  // Unknown digits of x (indices >= precision) first contaminate the product
  // at index precision(x) + ord(y); symmetrically for y.
  long ord_lb_x = first_nonzero_or(x.coeffs, x.precision());
  long ord_lb_y = first_nonzero_or(y.coeffs, y.precision());
  long prec = std::min(saturating_add(x.precision(), ord_lb_y),
                       saturating_add(y.precision(), ord_lb_x));
  size_t len;
  if (prec == kInfiniteOrd) {
    len = x.coeffs.empty() || y.coeffs.empty()
              ? 0
              : x.coeffs.size() + y.coeffs.size() - 1;
  } else {
    len = static_cast<size_t>(prec);
  }
  std::vector<int> coeffs(len, 0);
  for (size_t i = 0; i < x.coeffs.size(); ++i) {
    if (x.coeffs[i] == 0) continue;
    for (size_t j = 0; j < y.coeffs.size() && i + j < len; ++j) {
      coeffs[i + j] = static_cast<int>(
          (coeffs[i + j] + static_cast<long>(x.coeffs[i]) * y.coeffs[j]) %
          x.p);
    }
  }
  if (prec == kInfiniteOrd) return padic_exact(x.p, std::move(coeffs));
  if (coeffs.empty()) {
    // Precision collapsed to zero certified digits; this cannot arise from
    // valid inputs (precision >= 1 and ord lower bounds >= 0).
    throw InsufficientPrecision("product has no certified digits");
  }
  return padic_truncated(x.p, std::move(coeffs));
}

PadicScalar padic_pow(const PadicScalar& x, long n) {
  if (n < 0) throw InvalidParams("padic_pow requires n >= 0");
  PadicScalar acc = padic_one(x.p);
  for (long i = 0; i < n; ++i) acc = padic_mul(acc, x);
  return acc;
}

PadicScalar padic_mul_pi_power(const PadicScalar& x, long k) {
  if (k < 0) throw InvalidParams("padic_mul_pi_power requires k >= 0");
  if (padic_is_exact_zero(x)) return x;
  std::vector<int> coeffs(static_cast<size_t>(k), 0);
  coeffs.insert(coeffs.end(), x.coeffs.begin(), x.coeffs.end());
  if (x.exact) return padic_exact(x.p, std::move(coeffs));
  return padic_truncated(x.p, std::move(coeffs));
}

PadicScalar padic_div_pi_power(const PadicScalar& x, long k) {
  if (k < 0) throw InvalidParams("padic_div_pi_power requires k >= 0");
  if (k == 0 || padic_is_exact_zero(x)) return x;
  if (!x.exact && static_cast<long>(x.coeffs.size()) < k + 1) {
    throw InsufficientPrecision("cannot certify division by pi^k");
  }
  for (long i = 0; i < k && i < static_cast<long>(x.coeffs.size()); ++i) {
    check_internal(x.coeffs[static_cast<size_t>(i)] == 0,
                   "division by pi^k with nonzero low digit");
  }
  std::vector<int> coeffs;
  if (static_cast<long>(x.coeffs.size()) > k) {
    coeffs.assign(x.coeffs.begin() + k, x.coeffs.end());
  }
  if (x.exact) return padic_exact(x.p, std::move(coeffs));
  return padic_truncated(x.p, std::move(coeffs));
}

// ---- sparse polynomials over O ----------------------------------------------

TruncPoly tp_zero(int arity, long p) {
  require_base(p);
  if (arity < 0) throw InvalidParams("arity must be >= 0");
  return TruncPoly{arity, p, {}};
}

TruncPoly tp_term(int arity, long p, std::vector<int> exps, PadicScalar coeff) {
  TruncPoly poly = tp_zero(arity, p);
  tp_add_term(poly, exps, coeff);
  return poly;
}

void tp_add_term(TruncPoly& poly, const std::vector<int>& exps,
                 const PadicScalar& coeff) {
  if (static_cast<int>(exps.size()) != poly.arity) {
    throw InvalidParams("exponent vector arity mismatch");
  }
  if (coeff.p != poly.p) throw MismatchedBase("coefficient base mismatch");
  for (int e : exps) {
    if (e < 0) throw InvalidParams("negative exponent");
  }
  auto it = poly.terms.find(exps);
  if (it == poly.terms.end()) {
    if (!padic_is_zero_to_precision(coeff)) poly.terms.emplace(exps, coeff);
    return;
  }
  PadicScalar s = padic_add(it->second, coeff);
  if (padic_is_zero_to_precision(s)) {
    poly.terms.erase(it);
  } else {
    it->second = std::move(s);
  }
}

TruncPoly tp_add(const TruncPoly& a, const TruncPoly& b) {
  if (a.arity != b.arity) throw InvalidParams("polynomial arity mismatch");
  if (a.p != b.p) throw MismatchedBase("polynomial base mismatch");
  TruncPoly out = a;
  for (const auto& [exps, coeff] : b.terms) tp_add_term(out, exps, coeff);
  return out;
}

TruncPoly tp_neg(const TruncPoly& a) {
  TruncPoly out = tp_zero(a.arity, a.p);
  for (const auto& [exps, coeff] : a.terms) {
    out.terms.emplace(exps, padic_neg(coeff));
  }
  return out;
}

TruncPoly tp_sub(const TruncPoly& a, const TruncPoly& b) {
  return tp_add(a, tp_neg(b));
}

TruncPoly tp_mul(const TruncPoly& a, const TruncPoly& b) {
  if (a.arity != b.arity) throw InvalidParams("polynomial arity mismatch");
  if (a.p != b.p) throw MismatchedBase("polynomial base mismatch");
  TruncPoly out = tp_zero(a.arity, a.p);
  for (const auto& [ea, ca] : a.terms) {
    for (const auto& [eb, cb] : b.terms) {
      std::vector<int> exps(static_cast<size_t>(a.arity));
      for (int i = 0; i < a.arity; ++i) {
        exps[static_cast<size_t>(i)] =
            ea[static_cast<size_t>(i)] + eb[static_cast<size_t>(i)];
      }
      tp_add_term(out, exps, padic_mul(ca, cb));
    }
  }
  return out;
}

TruncPoly tp_scalar_mul(const PadicScalar& c, const TruncPoly& a) {
  if (c.p != a.p) throw MismatchedBase("scalar base mismatch");
  TruncPoly out = tp_zero(a.arity, a.p);
  for (const auto& [exps, coeff] : a.terms) {
    tp_add_term(out, exps, padic_mul(c, coeff));
  }
  return out;
}

TruncPoly tp_pow(const TruncPoly& a, long n) {
  if (n < 0) throw InvalidParams("tp_pow requires n >= 0");
  TruncPoly acc = tp_term(a.arity, a.p, std::vector<int>(a.arity, 0),
                          padic_one(a.p));
  for (long i = 0; i < n; ++i) acc = tp_mul(acc, a);
  return acc;
}

bool tp_is_zero(const TruncPoly& a) { return a.terms.empty(); }

bool tp_equal(const TruncPoly& a, const TruncPoly& b) {
  if (a.arity != b.arity || a.p != b.p || a.terms.size() != b.terms.size()) {
    return false;
  }
  auto ia = a.terms.begin();
  auto ib = b.terms.begin();
  for (; ia != a.terms.end(); ++ia, ++ib) {
    if (ia->first != ib->first || !padic_eq(ia->second, ib->second)) {
      return false;
    }
  }
  return true;
}

bool tp_is_exact(const TruncPoly& a) {
  return std::all_of(a.terms.begin(), a.terms.end(),
                     [](const auto& kv) { return kv.second.exact; });
}

PadicScalar tp_eval(const TruncPoly& a, const std::vector<PadicScalar>& point) {
  if (static_cast<int>(point.size()) != a.arity) {
    throw InvalidParams("evaluation point arity mismatch");
  }
  // Per-variable power cache.
  std::vector<std::vector<PadicScalar>> pows(static_cast<size_t>(a.arity));
  for (size_t v = 0; v < pows.size(); ++v) pows[v].push_back(padic_one(a.p));
  auto power = [&](size_t v, int e) -> const PadicScalar& {
    while (static_cast<int>(pows[v].size()) <= e) {
      pows[v].push_back(padic_mul(pows[v].back(), point[v]));
    }
    return pows[v][static_cast<size_t>(e)];
  };
  PadicScalar acc = padic_zero(a.p);
  for (const auto& [exps, coeff] : a.terms) {
    PadicScalar term = coeff;
    for (size_t v = 0; v < exps.size(); ++v) {
      if (exps[v] != 0) term = padic_mul(term, power(v, exps[v]));
    }
    acc = padic_add(acc, term);
  }
  return acc;
}

TruncPoly tp_substitute(const TruncPoly& a,
                        const std::vector<TruncPoly>& subs) {
  if (static_cast<int>(subs.size()) != a.arity) {
    throw InvalidParams("substitution arity mismatch");
  }
  if (subs.empty()) return a;
  int target_arity = subs.front().arity;
  for (const TruncPoly& s : subs) {
    if (s.arity != target_arity) {
      throw InvalidParams("substitution polynomials disagree on arity");
    }
    if (s.p != a.p) throw MismatchedBase("substitution base mismatch");
  }
  std::vector<std::vector<TruncPoly>> pows(subs.size());
  for (size_t v = 0; v < subs.size(); ++v) {
    pows[v].push_back(tp_term(target_arity, a.p,
                              std::vector<int>(target_arity, 0),
                              padic_one(a.p)));
  }
  auto power = [&](size_t v, int e) -> const TruncPoly& {
    while (static_cast<int>(pows[v].size()) <= e) {
      pows[v].push_back(tp_mul(pows[v].back(), subs[v]));
    }
    return pows[v][static_cast<size_t>(e)];
  };
  TruncPoly out = tp_zero(target_arity, a.p);
  for (const auto& [exps, coeff] : a.terms) {
    TruncPoly term = tp_term(target_arity, a.p,
                             std::vector<int>(target_arity, 0), coeff);
    for (size_t v = 0; v < exps.size(); ++v) {
      if (exps[v] != 0) term = tp_mul(term, power(v, exps[v]));
    }
    out = tp_add(out, term);
  }
  return out;
}

TruncPoly tp_partial(const TruncPoly& a, int var) {
  if (var < 0 || var >= a.arity) throw InvalidParams("variable out of range");
  TruncPoly out = tp_zero(a.arity, a.p);
  for (const auto& [exps, coeff] : a.terms) {
    int e = exps[static_cast<size_t>(var)];
    if (e == 0) continue;
    std::vector<int> dexps = exps;
    dexps[static_cast<size_t>(var)] = e - 1;
    tp_add_term(out, dexps, padic_mul(coeff, padic_int(a.p, e)));
  }
  return out;
}

TruncPoly tp_truncate(const TruncPoly& a, long prec) {
  TruncPoly out = tp_zero(a.arity, a.p);
  for (const auto& [exps, coeff] : a.terms) {
    tp_add_term(out, exps, padic_truncate(coeff, prec));
  }
  return out;
}

long tp_content(const TruncPoly& a) {
  check_internal(!tp_is_zero(a), "content of the zero polynomial");
  long best = kInfiniteOrd;
  for (const auto& [exps, coeff] : a.terms) {
    Ord o = ord(coeff);
    if (!o.finite) {
      // Stored coefficients are never zero-to-precision, so this is
      // unreachable; keep the certified-valuation contract explicit.
      throw InsufficientPrecision("coefficient valuation undetermined");
    }
    best = std::min(best, o.value);
  }
  return best;
}

TruncPoly tp_mul_pi_power(const TruncPoly& a, long k) {
  TruncPoly out = tp_zero(a.arity, a.p);
  for (const auto& [exps, coeff] : a.terms) {
    out.terms.emplace(exps, padic_mul_pi_power(coeff, k));
  }
  return out;
}

TruncPoly tp_div_pi_power(const TruncPoly& a, long k) {
  TruncPoly out = tp_zero(a.arity, a.p);
  for (const auto& [exps, coeff] : a.terms) {
    out.terms.emplace(exps, padic_div_pi_power(coeff, k));
  }
  return out;
}

std::string tp_key(const TruncPoly& a) {
  std::ostringstream out;
  out << a.arity << ';' << a.p << ';';
  for (const auto& [exps, coeff] : a.terms) {
    out << '(';
    for (size_t i = 0; i < exps.size(); ++i) {
      if (i) out << ',';
      out << exps[i];
    }
    out << ")=" << padic_key(coeff) << ';';
  }
  return out.str();
}

std::string tp_to_string(const TruncPoly& a) {
  if (a.terms.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [exps, coeff] : a.terms) {
    if (!first) out << " + ";
    first = false;
    out << padic_key(coeff);
    for (size_t v = 0; v < exps.size(); ++v) {
      if (exps[v] == 0) continue;
      out << "*x" << v;
      if (exps[v] != 1) out << '^' << exps[v];
    }
  }
  return out.str();
}

std::optional<TruncPoly> tp_pth_root(const TruncPoly& a) {
  if (!tp_is_exact(a)) return std::nullopt;
  const long p = a.p;
  TruncPoly root = tp_zero(a.arity, p);
  for (const auto& [exps, coeff] : a.terms) {
    std::vector<int> rexps(exps.size());
    for (size_t i = 0; i < exps.size(); ++i) {
      if (exps[i] % p != 0) return std::nullopt;
      rexps[i] = exps[i] / static_cast<int>(p);
    }
    // In characteristic p, (sum d_i pi^i)^p = sum d_i pi^{p i}: a scalar is a
    // p-th power exactly when its digit support lies in p*Z.
    std::vector<int> rdigits;
    for (size_t i = 0; i < coeff.coeffs.size(); ++i) {
      if (coeff.coeffs[i] == 0) continue;
      if (i % static_cast<size_t>(p) != 0) return std::nullopt;
      size_t j = i / static_cast<size_t>(p);
      if (rdigits.size() <= j) rdigits.resize(j + 1, 0);
      rdigits[j] = coeff.coeffs[i];
    }
    root.terms.emplace(std::move(rexps), padic_exact(p, std::move(rdigits)));
  }
  check_internal(tp_equal(tp_pow(root, p), a),
                 "p-th root verification failed");
  return root;
}

// ---- reductions and residue polynomials --------------------------------------

FpPoly reduce_mod_pi(const TruncPoly& a) {
  FpPoly out{a.arity, a.p, {}};
  for (const auto& [exps, coeff] : a.terms) {
    int d = coeff.coeffs.empty() ? 0 : coeff.coeffs.front();
    if (d != 0) out.terms.emplace(exps, d);
  }
  return out;
}

int fp_eval(const FpPoly& a, const std::vector<int>& point) {
  if (static_cast<int>(point.size()) != a.arity) {
    throw InvalidParams("evaluation point arity mismatch");
  }
  auto pow_mod = [&](long base, int e) {
    long acc = 1 % a.p;
    base %= a.p;
    for (int i = 0; i < e; ++i) acc = (acc * base) % a.p;
    return acc;
  };
  long acc = 0;
  for (const auto& [exps, c] : a.terms) {
    long term = c % a.p;
    for (size_t v = 0; v < exps.size(); ++v) {
      if (exps[v] != 0) term = (term * pow_mod(point[v], exps[v])) % a.p;
    }
    acc = (acc + term) % a.p;
  }
  return static_cast<int>(acc);
}

FpPoly fp_partial(const FpPoly& a, int var) {
  if (var < 0 || var >= a.arity) throw InvalidParams("variable out of range");
  FpPoly out{a.arity, a.p, {}};
  for (const auto& [exps, c] : a.terms) {
    int e = exps[static_cast<size_t>(var)];
    if (e == 0) continue;
    int d = static_cast<int>((static_cast<long>(c) * e) % a.p);
    if (d == 0) continue;
    std::vector<int> dexps = exps;
    dexps[static_cast<size_t>(var)] = e - 1;
    auto [it, inserted] = out.terms.emplace(std::move(dexps), d);
    if (!inserted) {
      it->second = static_cast<int>((it->second + d) % a.p);
      if (it->second == 0) out.terms.erase(it);
    }
  }
  return out;
}

bool fp_is_zero(const FpPoly& a) { return a.terms.empty(); }

bool fp_equal(const FpPoly& a, const FpPoly& b) {
  return a.arity == b.arity && a.p == b.p && a.terms == b.terms;
}

std::string fp_to_string(const FpPoly& a) {
  if (a.terms.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [exps, c] : a.terms) {
    if (!first) out << " + ";
    first = false;
    out << c;
    for (size_t v = 0; v < exps.size(); ++v) {
      if (exps[v] == 0) continue;
      out << "*x" << v;
      if (exps[v] != 1) out << '^' << exps[v];
    }
  }
  return out.str();
}

// ---- residue-ring enumeration -------------------------------------------------

std::vector<std::vector<PadicScalar>> enumerate_residue_ring(
    long p, long i, int n, unsigned long budget) {
  require_base(p);
  if (i < 1 || n < 1) throw InvalidParams("enumeration needs i >= 1, n >= 1");
  mpz_class total;
  mpz_ui_pow_ui(total.get_mpz_t(), static_cast<unsigned long>(p),
                static_cast<unsigned long>(i * n));
  if (total > budget) {
    throw BudgetExceeded("residue-ring enumeration exceeds budget");
  }
  const size_t digits = static_cast<size_t>(i) * static_cast<size_t>(n);
  std::vector<int> odometer(digits, 0);
  std::vector<std::vector<PadicScalar>> out;
  out.reserve(total.get_ui());
  while (true) {
    std::vector<PadicScalar> tuple;
    tuple.reserve(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v) {
      std::vector<int> coeffs(
          odometer.begin() + static_cast<long>(v) * i,
          odometer.begin() + static_cast<long>(v + 1) * i);
      tuple.push_back(padic_truncated(p, std::move(coeffs)));
    }
    out.push_back(std::move(tuple));
    size_t pos = 0;
    while (pos < digits) {
      if (++odometer[pos] < p) break;
      odometer[pos] = 0;
      ++pos;
    }
    if (pos == digits) break;
  }
  return out;
}

}  // namespace igusa
