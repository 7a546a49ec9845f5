#include "igusa/characters.hpp"

namespace igusa {

namespace {

bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

long mul_mod(long a, long b, long p) { return (a * b) % p; }

long pow_mod(long base, long exp, long p) {
  long r = 1 % p;
  base %= p;
  for (; exp > 0; exp >>= 1) {
    if (exp & 1) r = mul_mod(r, base, p);
    base = mul_mod(base, base, p);
  }
  return r;
}

long mod_nonneg(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

long primitive_root(long p) {
  check_internal(is_prime(p), "primitive_root needs a prime");
  if (p == 2) return 1;
  long n = p - 1;
  std::vector<long> prime_factors;
  {
    long t = n;
    for (long d = 2; d * d <= t; ++d) {
      if (t % d == 0) {
        prime_factors.push_back(d);
        while (t % d == 0) t /= d;
      }
    }
    if (t > 1) prime_factors.push_back(t);
  }
  for (long g = 2; g < p; ++g) {
    bool generates = true;
    for (long f : prime_factors) {
      if (pow_mod(g, n / f, p) == 1) {
        generates = false;
        break;
      }
    }
    if (generates) return g;
  }
  check_internal(false, "no generator found");
  return 0;
}

MultChar make_character(long p, long m, long e) {
  if (!is_prime(p)) throw InvalidParams("residue characteristic must be prime");
  if (m < 1) throw InvalidParams("character order must be >= 1");
  if ((p - 1) % m != 0) throw InvalidParams("character order must divide p-1");
  MultChar chi;
  chi.p = p;
  chi.m = m;
  chi.e = mod_nonneg(e, m);
  chi.generator = primitive_root(p);
  chi.dlog.assign(static_cast<size_t>(p), 0);
  long u = 1;
  for (long k = 0; k < p - 1; ++k) {
    chi.dlog[static_cast<size_t>(u)] = k;
    u = mul_mod(u, chi.generator, p);
  }
  check_internal(u == 1, "generator order mismatch");
  return chi;
}

bool char_is_trivial(const MultChar& chi) { return chi.e % chi.m == 0; }

MultChar char_power(const MultChar& chi, long k) {
  MultChar out = chi;
  out.e = mod_nonneg(mod_nonneg(k, chi.m) * chi.e, chi.m);
  return out;
}

CycloScalar char_eval(const MultChar& chi, long u) {
  long r = mod_nonneg(u, chi.p);
  if (r == 0) return cs_zero();
  long k = chi.dlog[static_cast<size_t>(r)];
  return cs_zeta_pow(chi.m, mod_nonneg(chi.e * (k % chi.m), chi.m));
}

bool char_power_trivial(const MultChar& chi, long k) {
  return mod_nonneg(mod_nonneg(k, chi.m) * chi.e, chi.m) == 0;
}

CycloScalar unit_power_integral(const MultChar& chi, long k) {
  if (k < 1) throw InvalidParams("power integral exponent must be >= 1");
  if (char_power_trivial(chi, k)) {
    mpq_class v(chi.p - 1, chi.p);
    v.canonicalize();
    return cs_rational(v);
  }
  return cs_zero();
}

}  // namespace igusa
