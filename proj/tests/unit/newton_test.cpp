#include <numeric>
#include <utility>

#include "doctest.h"
#include "igusa/newton.hpp"

using namespace igusa;

TEST_SUITE_BEGIN("newton");

TEST_CASE("face table for (5,3)") {
  NewtonData d = newton_faces(5, 3);
  REQUIRE(d.faces.size() == 5);
  CHECK(d.faces[0].cone == "{(0,a): a > 0}");
  CHECK(d.faces[1].face == "vertex (5,0)");
  CHECK(d.faces[2].cone == "{(3a,5a): a > 0}");
  CHECK(d.faces[3].face == "vertex (0,3)");
  CHECK(d.faces[4].cone == "{(a,0): a > 0}");

  // Residue tables: n_m = j0 - (i0*m mod j0), n'_m symmetric.
  REQUIRE(d.n_m.size() == 3);
  CHECK(d.n_m[0] == 0);
  CHECK(d.n_m[1] == 1);
  CHECK(d.n_m[2] == 2);
  CHECK(d.w_m[1] == 2);
  CHECK(d.w_m[2] == 4);
  REQUIRE(d.n_prime_m.size() == 5);
  CHECK(d.n_prime_m[1] == 2);  // 5 - (3 mod 5)
  CHECK(d.w_prime_m[1] == 1);  // (1*3 + 2) / 5
}

TEST_CASE("face table for (2,5) and rejection") {
  NewtonData d = newton_faces(2, 5);
  CHECK(d.faces[2].cone == "{(5a,2a): a > 0}");
  CHECK(d.faces[1].face == "vertex (2,0)");

  CHECK_THROWS_AS(newton_faces(2, 4), NotCoprime);
  CHECK_THROWS_AS(newton_faces(0, 3), InvalidParams);
}

TEST_CASE("lattice parametrizations") {
  NewtonData d = newton_faces(5, 3);

  // Cone 1: the v-axis minus the origin.
  auto c1 = cone_lattice(d, 1);
  REQUIRE(c1.size() == 1);
  CHECK(c1[0].u0 == 0);
  CHECK(c1[0].du_a == 0);
  CHECK(c1[0].dv_a == 1);
  CHECK(c1[0].a_min == 1);
  CHECK_FALSE(c1[0].has_b);

  // Cone 3: the ray {(3a, 5a): a >= 1}.
  auto c3 = cone_lattice(d, 3);
  REQUIRE(c3.size() == 1);
  CHECK(c3[0].du_a == 3);
  CHECK(c3[0].dv_a == 5);
  CHECK(c3[0].a_min == 1);
  CHECK(cone_contains(d, 3, 3, 5));
  CHECK(cone_contains(d, 3, 6, 10));
  CHECK_FALSE(cone_contains(d, 3, 3, 4));

  // Cone 4: stratum m=1 starts at the sporadic point ((1*3+2)/5, 1) = (1,1).
  auto c4 = cone_lattice(d, 4);
  REQUIRE(c4.size() == 5);
  CHECK(c4[1].u0 == 1);
  CHECK(c4[1].v0 == 1);
  CHECK(c4[1].a_min == 0);  // partition indexing keeps the boundary point
  CHECK(cone_contains(d, 4, 1, 1));

  // Interior indexing pushes every stratum to a,b >= 1.
  auto c4i = cone_lattice(d, 4, ConeIndexing::interior);
  CHECK(c4i[1].a_min == 1);
  CHECK(c4i[1].b_min == 1);
  CHECK_FALSE(cone_contains(d, 4, 1, 1, ConeIndexing::interior));

  CHECK_THROWS_AS(cone_lattice(d, 6), RangeError);
}

TEST_CASE("inequality-side membership") {
  NewtonData d = newton_faces(5, 3);
  CHECK(cone_of(d, 3, 5) == 3);  // on the ray
  CHECK(cone_of(d, 0, 7) == 1);
  CHECK(cone_of(d, 7, 0) == 5);
  CHECK(cone_of(d, 1, 9) == 2);
  CHECK(cone_of(d, 9, 1) == 4);
  CHECK_THROWS_AS(cone_of(d, 0, 0), RangeError);
}

TEST_CASE("partition of the lattice quadrant") {
  CHECK(partition_check(newton_faces(2, 3), 50).ok);
  CHECK(partition_check(newton_faces(1, 1), 50).ok);

  NewtonData d53 = newton_faces(5, 3);
  PartitionReport r = partition_check(d53, 60);
  CHECK(r.ok);
  CHECK(r.violations.empty());
}

TEST_CASE("partition holds for all coprime pairs up to 12") {
  for (long i0 = 1; i0 <= 12; ++i0) {
    for (long j0 = 1; j0 <= 12; ++j0) {
      if (std::gcd(i0, j0) != 1) continue;
      PartitionReport r = partition_check(newton_faces(i0, j0), 60);
      CHECK_MESSAGE(r.ok, "violations for (", i0, ",", j0, ")");
    }
  }
}

TEST_CASE("residue identities for all coprime pairs up to 12") {
  for (long i0 = 1; i0 <= 12; ++i0) {
    for (long j0 = 1; j0 <= 12; ++j0) {
      if (std::gcd(i0, j0) != 1) continue;
      NewtonData d = newton_faces(i0, j0);
      for (long m = 1; m < i0; ++m) {
        long nm = d.n_prime_m[static_cast<size_t>(m)];
        CHECK(nm >= 1);
        CHECK(nm <= i0 - 1);
        CHECK((m * j0 + nm) % i0 == 0);
      }
      for (long m = 1; m < j0; ++m) {
        long nm = d.n_m[static_cast<size_t>(m)];
        CHECK(nm >= 1);
        CHECK(nm <= j0 - 1);
        CHECK((m * i0 + nm) % j0 == 0);
      }
    }
  }
}

TEST_CASE("cones 2 and 4 are exchanged by swapping axes") {
  const std::pair<long, long> pairs[] = {{5, 3}, {2, 5}, {7, 4}, {1, 6}};
  for (auto [i0, j0] : pairs) {
    NewtonData d = newton_faces(i0, j0);
    NewtonData swapped = newton_faces(j0, i0);
    for (long u = 0; u <= 40; ++u) {
      for (long v = 0; v <= 40; ++v) {
        if (u == 0 && v == 0) continue;
        CHECK(cone_contains(d, 2, u, v) == cone_contains(swapped, 4, v, u));
        CHECK(cone_contains(d, 4, u, v) == cone_contains(swapped, 2, v, u));
      }
    }
  }
}

TEST_SUITE_END();
