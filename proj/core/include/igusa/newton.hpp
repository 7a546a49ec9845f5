#pragma once

#include <string>
#include <vector>

#include "igusa/errors.hpp"

namespace igusa {

/// Chooses how the lattice points of the two vertex cones (2 and 4) are
/// indexed: `partition` is the indexing under which the five cones tile
/// N^2 minus the origin exactly once; `interior` restricts every stratum to
/// parameters a, b >= 1 (the indexing used by some worked tables, which
/// misses boundary strata points).
enum class ConeIndexing { partition, interior };

/// Human-readable description of one proper face and its cone.
struct FaceInfo {
  int index = 0;      ///< 1..5
  std::string face;   ///< e.g. "vertex (2,0)" or "segment (2,0)-(0,5)"
  std::string cone;   ///< e.g. "{(3a,5a): a>0}"
};

/// Newton-polyhedron data of a two-variable form with coprime leading
/// exponents (i0, j0): the five proper faces, their cones, and the residues
/// used by the vertex-cone lattice parametrizations.
struct NewtonData {
  long i0 = 1;
  long j0 = 1;
  std::vector<FaceInfo> faces;      ///< exactly five entries, indices 1..5
  std::vector<long> n_m;            ///< size j0; n_m[0] = 0, else j0 - (i0*m mod j0)
  std::vector<long> n_prime_m;      ///< size i0; symmetric with i0 <-> j0
  std::vector<long> w_m;            ///< size j0; w_m[0] = 0, else (m*i0 + n_m)/j0
  std::vector<long> w_prime_m;      ///< size i0; w'_m[0] = 0, else (m*j0 + n'_m)/i0
};

/// Builds the face/cone table and residues. Throws NotCoprime when
/// gcd(i0, j0) != 1, InvalidParams when either is < 1.
NewtonData newton_faces(long i0, long j0);

/// One arithmetic family of lattice points
///   (u, v) = (u0 + a*du_a + b*du_b, v0 + a*dv_a + b*dv_b)
/// over integers a >= a_min and (when has_b) b >= b_min.
struct ConeStratum {
  long m = 0;  ///< stratum label within the cone
  long u0 = 0, v0 = 0;
  long du_a = 0, dv_a = 0;
  long du_b = 0, dv_b = 0;
  long a_min = 0, b_min = 0;
  bool has_b = false;
};

/// Exact integer-point parametrization of cone c (1..5) intersected with
/// N^2 minus the origin.
std::vector<ConeStratum> cone_lattice(const NewtonData& data, int c,
                                      ConeIndexing indexing = ConeIndexing::partition);

/// Which cone's closure-free region the direction (u, v) falls in (1..5),
/// decided by the defining inequalities; (u, v) must be nonzero.
int cone_of(const NewtonData& data, long u, long v);

/// True iff (u, v) is generated by cone c's lattice parametrization.
bool cone_contains(const NewtonData& data, int c, long u, long v,
                   ConeIndexing indexing = ConeIndexing::partition);

struct PartitionViolation {
  long u = 0, v = 0;
  std::vector<int> cones;  ///< all cones whose parametrization contains (u,v)
};

struct PartitionReport {
  long B = 0;
  bool ok = true;
  std::vector<PartitionViolation> violations;
};

/// Checks that every point of [0,B]^2 minus the origin lies in exactly one
/// cone's parametrization and that this cone agrees with the inequality test.
PartitionReport partition_check(const NewtonData& data, long B);

}  // namespace igusa
