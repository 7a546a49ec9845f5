#include "igusa/hybrid.hpp"

namespace igusa {

namespace {

bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

mpz_class binom(long n, long k) {
  if (k < 0 || k > n || n < 0) return 0;
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return out;
}

void validate(const HybridParams& params) {
  const long p = params.p;
  if (!is_prime(p)) throw InvalidParams("p must be prime");
  if (params.k < 1 || params.r < 1 || params.l < 1) {
    throw InvalidParams("k, r, l must be positive");
  }
  if (params.r % p == 0 || params.l % p == 0) {
    throw InvalidParams("p divides r*l");
  }
  if ((params.r + params.l + params.k) % p != 0) {
    throw InvalidParams("p does not divide r+l+k");
  }
  if (params.r % p + params.l % p > p) {
    throw InvalidParams("(r mod p) + (l mod p) exceeds p");
  }
  if (params.sigma.p != p) {
    throw InvalidParams("sigma must share the base p");
  }
  Ord o = ord(params.sigma);
  if (!o.finite || o.value != 0) {
    throw InvalidParams("sigma must be a unit");
  }
}

TruncPoly x_pow_p(long p) {
  return tp_term(3, p, {static_cast<int>(p), 0, 0}, padic_one(p));
}

/// y^r z^l H(y, tau*z - y) expanded as a polynomial in (x,y,z).
TruncPoly non_frobenius_part(const HybridParams& params) {
  const long p = params.p;
  PadicScalar tau = hybrid_tau(params);
  TruncPoly w = tp_add(tp_term(3, p, {0, 0, 1}, tau),
                       tp_term(3, p, {0, 1, 0}, padic_int(p, -1)));
  TruncPoly H = tp_zero(3, p);
  TruncPoly w_pow = tp_term(3, p, {0, 0, 0}, padic_one(p));
  // Accumulate C(k+r, i+r) y^i w^{k-i}, raising w_pow from w^0 to w^k while
  // walking i downward from k.
  std::vector<TruncPoly> w_powers;
  w_powers.push_back(w_pow);
  for (long e = 1; e <= params.k; ++e) {
    w_pow = tp_mul(w_pow, w);
    w_powers.push_back(w_pow);
  }
  for (long i = 0; i <= params.k; ++i) {
    mpz_class c = binom(params.k + params.r, i + params.r);
    TruncPoly term = tp_scalar_mul(padic_int(p, c),
                                   tp_mul(tp_term(3, p, {0, static_cast<int>(i), 0},
                                                  padic_one(p)),
                                          w_powers[static_cast<size_t>(params.k - i)]));
    H = tp_add(H, term);
  }
  return tp_mul(tp_term(3, p,
                        {0, static_cast<int>(params.r), static_cast<int>(params.l)},
                        padic_one(p)),
                H);
}

}  // namespace

HybridParams make_hybrid_params(long p, long k, long r, long l,
                                const PadicScalar& sigma) {
  HybridParams params{p, k, r, l, sigma};
  validate(params);
  return params;
}

HybridParams make_hybrid_params(long p, long k, long r, long l) {
  if (!is_prime(p)) throw InvalidParams("p must be prime");
  return make_hybrid_params(p, k, r, l, padic_one(p));
}

PadicScalar hybrid_tau(const HybridParams& params) {
  return padic_pow(params.sigma, params.p);
}

long hybrid_omega(const HybridParams& params) {
  return (params.k + params.r + params.l) / params.p;
}

mpz_class hybrid_a(long k, long r, long i) {
  return binom(k + r, k - i) * binom(i + r - 1, i);
}

TruncPoly build_hybrid(const HybridParams& params) {
  validate(params);
  return tp_add(x_pow_p(params.p), non_frobenius_part(params));
}

TruncPoly expand_hybrid(const HybridParams& params) {
  validate(params);
  const long p = params.p;
  PadicScalar tau = hybrid_tau(params);
  TruncPoly f = x_pow_p(p);
  for (long i = 0; i <= params.k; ++i) {
    mpz_class a = hybrid_a(params.k, params.r, i);
    if (i % 2 != 0) a = -a;
    PadicScalar coeff =
        padic_mul(padic_int(p, a), padic_pow(tau, params.k - i));
    f = tp_add(f, tp_term(3, p,
                          {0, static_cast<int>(params.r + i),
                           static_cast<int>(params.k + params.l - i)},
                          coeff));
  }
  return f;
}

TruncPoly hybrid_partial_y(const HybridParams& params) {
  validate(params);
  return tp_partial(non_frobenius_part(params), 1);
}

TruncPoly hybrid_partial_y_closed(const HybridParams& params) {
  validate(params);
  const long p = params.p;
  PadicScalar tau = hybrid_tau(params);
  TruncPoly w = tp_add(tp_term(3, p, {0, 0, 1}, tau),
                       tp_term(3, p, {0, 1, 0}, padic_int(p, -1)));
  TruncPoly wk = tp_pow(w, params.k);
  mpz_class c = params.r * binom(params.k + params.r, params.r);
  return tp_scalar_mul(
      padic_int(p, c),
      tp_mul(tp_term(3, p,
                     {0, static_cast<int>(params.r - 1), static_cast<int>(params.l)},
                     padic_one(p)),
             wk));
}

mpz_class s_kr(long k, long r, long j) {
  if (k < 0 || r < 1 || j < 1 || j > k + r) {
    throw RangeError("S_{k,r}(j) needs 1 <= j <= k+r");
  }
  long lo = (j <= k) ? (k - j) : 0;
  mpz_class sum = 0;
  for (long i = lo; i <= k; ++i) {
    mpz_class term = binom(k + r, i + r) * binom(i + r, i + j - k);
    if ((k - i) % 2 != 0) term = -term;
    sum += term;
  }
  return sum;
}

mpz_class s_kr_closed(long k, long r, long j) {
  if (k < 0 || r < 1 || j < 1 || j > k + r) {
    throw RangeError("S_{k,r}(j) needs 1 <= j <= k+r");
  }
  if (j <= k) return 0;
  mpz_class alt = 0;
  for (long i = 0; i <= k; ++i) {
    mpz_class term = binom(j, i);
    if (i % 2 != 0) term = -term;
    alt += term;
  }
  return binom(k + r, j) * alt;
}

CaseInfo classify_case(const HybridParams& params) {
  validate(params);
  const long p = params.p;
  CaseInfo info;
  if (binom(params.k + params.r, params.r) % p != 0) {
    info.kind = HybridCase::generic;
    return info;
  }
  info.kind = HybridCase::degenerate;
  TruncPoly h = tp_zero(3, p);
  for (long i = 0; i <= params.k; ++i) {
    mpz_class a = hybrid_a(params.k, params.r, i);
    if (a % p == 0) continue;
    check_internal((params.r + i) % p == 0,
                   "degenerate exponent r+i not divisible by p");
    check_internal((params.k + params.l - i) % p == 0,
                   "degenerate exponent k+l-i not divisible by p");
    if (i % 2 != 0) a = -a;
    PadicScalar coeff =
        padic_mul(padic_int(p, a), padic_pow(params.sigma, params.k - i));
    h = tp_add(h, tp_term(3, p,
                          {0, static_cast<int>((params.r + i) / p),
                           static_cast<int>((params.k + params.l - i) / p)},
                          coeff));
  }
  TruncPoly frob = tp_add(x_pow_p(p), tp_pow(h, p));
  check_internal(tp_equal(frob, build_hybrid(params)),
                 "degenerate witness identity failed");
  info.witness_h = std::move(h);
  return info;
}

}  // namespace igusa
