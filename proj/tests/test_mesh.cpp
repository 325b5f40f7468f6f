#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "esdg/mesh.hpp"
#include "esdg/morton.hpp"

using namespace esdg;

TEST_CASE("morton keys") {
  CHECK(morton_key(0, 0, 0) == 0);
  // x-fastest interleave on a 2x2x2 lattice
  const std::array<std::array<std::uint32_t, 3>, 8> expect = {{
      {0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0},
      {0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1},
  }};
  for (std::uint64_t n = 0; n < 8; ++n) {
    const auto& c = expect[size_t(n)];
    CHECK(morton_key(c[0], c[1], c[2]) == n);
  }
}

TEST_CASE("morton keys are a bijection for power-of-two lattices") {
  std::set<std::uint64_t> keys;
  for (std::uint32_t k = 0; k < 4; ++k)
    for (std::uint32_t j = 0; j < 4; ++j)
      for (std::uint32_t i = 0; i < 4; ++i) keys.insert(morton_key(i, j, k));
  CHECK(keys.size() == 64);
  CHECK(*keys.begin() == 0);
  CHECK(*keys.rbegin() == 63);
}

namespace {
MeshConfig bubble_config(int refinement) {
  MeshConfig c;
  c.base = {1, 1, 1};
  c.refinement = refinement;
  c.lo = {-1000.0, -1000.0, 0.0};
  c.hi = {1000.0, 1000.0, 2000.0};
  c.bc = {BoundaryCondition::Periodic, BoundaryCondition::Periodic,
          BoundaryCondition::Reflecting};
  return c;
}
} // namespace

TEST_CASE("element counts") {
  {
    MeshConfig c = bubble_config(0);
    MeshGeometry m(c);
    CHECK(m.num_elements() == 1);
  }
  {
    MeshConfig c = bubble_config(6);
    MeshGeometry m(c);
    CHECK(m.num_elements() == 262144);
  }
  {
    MeshConfig c;
    c.base = {12, 2, 1};
    c.refinement = 3;
    c.hi = {4.0e7, 6.0e6, 3.0e4};
    MeshGeometry m(c);
    CHECK(m.num_elements() == 12288);
    CHECK(m.num_elements() * 125 == 1536000); // N = 4 DOF per variable
  }
}

TEST_CASE("invalid configs are rejected") {
  MeshConfig c;
  c.base = {0, 1, 1};
  CHECK_THROWS(MeshGeometry(c));
  c = MeshConfig{};
  c.hi = {0.0, 1.0, 1.0}; // hi == lo in x
  CHECK_THROWS(MeshGeometry(c));
}

TEST_CASE("morton order of the element ids") {
  MeshConfig c = bubble_config(1); // 2x2x2
  MeshGeometry m(c);
  const std::array<std::array<int, 3>, 8> expect = {{
      {0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0},
      {0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1},
  }};
  for (std::int64_t e = 0; e < 8; ++e) {
    CHECK(m.lattice_of(e) == expect[size_t(e)]);
    CHECK(m.element_at(expect[size_t(e)][0], expect[size_t(e)][1],
                       expect[size_t(e)][2]) == e);
  }
}

TEST_CASE("connectivity involution through face records") {
  for (int L : {1, 2}) {
    MeshConfig c = bubble_config(L);
    MeshGeometry m(c);
    for (std::int64_t e = 0; e < m.num_elements(); ++e) {
      for (int lf = 0; lf < 6; ++lf) {
        const std::int32_t fid = m.face_of(e, lf);
        REQUIRE(fid >= 0);
        const Face& f = m.faces()[size_t(fid)];
        const int dir = lf / 2, side = lf % 2;
        CHECK(f.dir == dir);
        if (f.reflecting) {
          CHECK(f.minus_elem == e);
          continue;
        }
        // the neighbor's matching local face must point back to this face
        const bool am_minus = f.minus_elem == e && f.minus_side == side;
        const std::int64_t other = am_minus ? f.plus_elem : f.minus_elem;
        const int other_side = am_minus ? 1 - f.minus_side : f.minus_side;
        CHECK(m.face_of(other, dir * 2 + other_side) == fid);
      }
    }
  }
}

TEST_CASE("single element: periodic faces self-connect, reflecting tagged") {
  MeshConfig c = bubble_config(0);
  MeshGeometry m(c);
  // x and y: one self-periodic face each, both local slots share the id
  CHECK(m.face_of(0, 0) == m.face_of(0, 1));
  CHECK(m.face_of(0, 2) == m.face_of(0, 3));
  const Face& fx = m.faces()[size_t(m.face_of(0, 0))];
  CHECK(fx.minus_elem == 0);
  CHECK(fx.plus_elem == 0);
  CHECK(!fx.reflecting);
  // z: two distinct reflecting faces
  CHECK(m.face_of(0, 4) != m.face_of(0, 5));
  CHECK(m.faces()[size_t(m.face_of(0, 4))].reflecting);
  CHECK(m.faces()[size_t(m.face_of(0, 5))].reflecting);
}

TEST_CASE("two-element column in z") {
  MeshConfig c;
  c.base = {1, 1, 2};
  c.lo = {0, 0, 0};
  c.hi = {1, 1, 2};
  c.bc = {BoundaryCondition::Periodic, BoundaryCondition::Periodic,
          BoundaryCondition::Reflecting};
  MeshGeometry m(c);
  REQUIRE(m.num_elements() == 2);
  const std::int64_t lo_elem = m.element_at(0, 0, 0);
  const std::int64_t hi_elem = m.element_at(0, 0, 1);
  const std::int32_t shared = m.face_of(lo_elem, 5);
  CHECK(shared == m.face_of(hi_elem, 4));
  const Face& f = m.faces()[size_t(shared)];
  CHECK(!f.reflecting);
  CHECK(f.minus_elem == std::min(lo_elem, hi_elem));
  CHECK(m.faces()[size_t(m.face_of(lo_elem, 4))].reflecting);
  CHECK(m.faces()[size_t(m.face_of(hi_elem, 5))].reflecting);
}

TEST_CASE("volume, corners and node coordinates") {
  MeshConfig c = bubble_config(2);
  MeshGeometry m(c);
  ReferenceElement ref(3);
  // sum of J * (sum w)^3 over elements equals the domain volume
  double wsum = 0.0;
  for (double w : ref.weights()) wsum += w;
  const double vol = m.jacobian() * wsum * wsum * wsum * m.num_elements();
  CHECK(vol == doctest::Approx(2000.0 * 2000.0 * 2000.0).epsilon(1e-12));

  // the low corner element maps reference corner (-1,-1,-1) to the domain lo
  const std::int64_t e0 = m.element_at(0, 0, 0);
  CHECK(m.node_coordinate(e0, 0, -1.0) == doctest::Approx(-1000.0));
  CHECK(m.node_coordinate(e0, 2, -1.0) == doctest::Approx(0.0));
  const auto corner = m.corner_lo(e0);
  CHECK(corner[0] == doctest::Approx(-1000.0));

  // shared-face coordinates agree bitwise between neighbors
  const std::int64_t lo_e = m.element_at(0, 0, 0);
  const std::int64_t hi_e = m.element_at(0, 0, 1);
  CHECK(m.node_coordinate(lo_e, 2, 1.0) == m.node_coordinate(hi_e, 2, -1.0));
}

TEST_CASE("geopotential values") {
  const double g = 9.81;
  CHECK(g * 0.0 == 0.0);
  CHECK(g * 2000.0 == doctest::Approx(19620.0));
}
