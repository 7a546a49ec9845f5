#include "igusa/newton.hpp"

#include <numeric>
#include <sstream>

namespace igusa {

namespace {

std::string fmt(const char* pattern, long a, long b) {
  std::ostringstream out;
  for (const char* c = pattern; *c; ++c) {
    if (*c == 'i') {
      out << a;
    } else if (*c == 'j') {
      out << b;
    } else {
      out << *c;
    }
  }
  return out.str();
}

}  // namespace

NewtonData newton_faces(long i0, long j0) {
  if (i0 < 1 || j0 < 1) throw InvalidParams("leading exponents must be >= 1");
  if (std::gcd(i0, j0) != 1) {
    throw NotCoprime("leading exponents must be coprime");
  }
  NewtonData d;
  d.i0 = i0;
  d.j0 = j0;

  d.n_m.assign(static_cast<size_t>(j0), 0);
  d.w_m.assign(static_cast<size_t>(j0), 0);
  for (long m = 1; m < j0; ++m) {
    long r = (i0 * m) % j0;
    check_internal(r != 0, "coprimality violated in residue table");
    long nm = j0 - r;
    d.n_m[static_cast<size_t>(m)] = nm;
    check_internal((m * i0 + nm) % j0 == 0, "cone-2 offset not integral");
    d.w_m[static_cast<size_t>(m)] = (m * i0 + nm) / j0;
  }
  d.n_prime_m.assign(static_cast<size_t>(i0), 0);
  d.w_prime_m.assign(static_cast<size_t>(i0), 0);
  for (long m = 1; m < i0; ++m) {
    long r = (j0 * m) % i0;
    check_internal(r != 0, "coprimality violated in residue table");
    long nm = i0 - r;
    d.n_prime_m[static_cast<size_t>(m)] = nm;
    check_internal((m * j0 + nm) % i0 == 0, "cone-4 offset not integral");
    d.w_prime_m[static_cast<size_t>(m)] = (m * j0 + nm) / i0;
  }

  d.faces = {
      {1, fmt("half-line {(t,0): t >= i}", i0, j0), "{(0,a): a > 0}"},
      {2, fmt("vertex (i,0)", i0, j0),
       fmt("{(u,v): v*j > u*i, u > 0}", i0, j0)},
      {3, fmt("segment (i,0)-(0,j)", i0, j0), fmt("{(ja,ia): a > 0}", i0, j0)},
      {4, fmt("vertex (0,j)", i0, j0),
       fmt("{(u,v): v*j < u*i, v > 0}", i0, j0)},
      {5, fmt("half-line {(0,t): t >= j}", i0, j0), "{(a,0): a > 0}"},
  };
  return d;
}

std::vector<ConeStratum> cone_lattice(const NewtonData& data, int c,
                                      ConeIndexing indexing) {
  const long i0 = data.i0;
  const long j0 = data.j0;
  std::vector<ConeStratum> out;
  switch (c) {
    case 1: {
      ConeStratum s;
      s.dv_a = 1;
      s.a_min = 1;
      out.push_back(s);
      break;
    }
    case 5: {
      ConeStratum s;
      s.du_a = 1;
      s.a_min = 1;
      out.push_back(s);
      break;
    }
    case 3: {
      ConeStratum s;
      s.du_a = j0;
      s.dv_a = i0;
      s.a_min = 1;
      out.push_back(s);
      break;
    }
    case 2: {
      for (long m = 0; m < j0; ++m) {
        ConeStratum s;
        s.m = m;
        s.u0 = m;
        s.v0 = data.w_m[static_cast<size_t>(m)];
        s.du_a = 0;
        s.dv_a = 1;
        s.du_b = j0;
        s.dv_b = i0;
        s.has_b = true;
        bool interior = indexing == ConeIndexing::interior || m == 0;
        s.a_min = interior ? 1 : 0;
        s.b_min = interior ? 1 : 0;
        out.push_back(s);
      }
      break;
    }
    case 4: {
      for (long m = 0; m < i0; ++m) {
        ConeStratum s;
        s.m = m;
        s.u0 = data.w_prime_m[static_cast<size_t>(m)];
        s.v0 = m;
        s.du_a = 1;
        s.dv_a = 0;
        s.du_b = j0;
        s.dv_b = i0;
        s.has_b = true;
        bool interior = indexing == ConeIndexing::interior || m == 0;
        s.a_min = interior ? 1 : 0;
        s.b_min = interior ? 1 : 0;
        out.push_back(s);
      }
      break;
    }
    default:
      throw RangeError("cone index must be 1..5");
  }
  return out;
}

int cone_of(const NewtonData& data, long u, long v) {
  if (u < 0 || v < 0 || (u == 0 && v == 0)) {
    throw RangeError("cone membership needs a nonzero lattice point");
  }
  if (u == 0) return 1;
  if (v == 0) return 5;
  long lhs = v * data.j0;
  long rhs = u * data.i0;
  if (lhs > rhs) return 2;
  if (lhs == rhs) return 3;
  return 4;
}

bool cone_contains(const NewtonData& data, int c, long u, long v,
                   ConeIndexing indexing) {
  if (u < 0 || v < 0 || (u == 0 && v == 0)) return false;
  for (const ConeStratum& s : cone_lattice(data, c, indexing)) {
    long a = 0;
    long b = 0;
    if (!s.has_b) {
      // Single-parameter ray: both coordinates advance together.
      long du = s.du_a;
      long dv = s.dv_a;
      if (du != 0) {
        if ((u - s.u0) % du != 0) continue;
        a = (u - s.u0) / du;
        if (s.v0 + a * dv != v) continue;
      } else {
        if (u != s.u0) continue;
        if ((v - s.v0) % dv != 0) continue;
        a = (v - s.v0) / dv;
      }
      if (a >= s.a_min) return true;
      continue;
    }
    // Two parameters: b is pinned by the coordinate the a-step leaves fixed.
    if (s.du_a == 0) {
      if ((u - s.u0) % s.du_b != 0) continue;
      b = (u - s.u0) / s.du_b;
      a = v - s.v0 - b * s.dv_b;
    } else {
      if ((v - s.v0) % s.dv_b != 0) continue;
      b = (v - s.v0) / s.dv_b;
      a = u - s.u0 - b * s.du_b;
    }
    if (a >= s.a_min && b >= s.b_min) return true;
  }
  return false;
}

PartitionReport partition_check(const NewtonData& data, long B) {
  if (B < 1) throw InvalidParams("partition bound must be >= 1");
  PartitionReport report;
  report.B = B;
  for (long u = 0; u <= B; ++u) {
    for (long v = 0; v <= B; ++v) {
      if (u == 0 && v == 0) continue;
      std::vector<int> hits;
      for (int c = 1; c <= 5; ++c) {
        if (cone_contains(data, c, u, v)) hits.push_back(c);
      }
      if (hits.size() != 1 || hits.front() != cone_of(data, u, v)) {
        report.ok = false;
        report.violations.push_back({u, v, hits});
      }
    }
  }
  return report;
}

}  // namespace igusa
