#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "common.hpp"
#include "kgroups.hpp"

using namespace z2kit;

namespace {

const AbelianGroup Z = AbelianGroup::Z();
const AbelianGroup Z2 = AbelianGroup::Z2();

// Brute-force enumeration of the product cell structure of T^d = (S^{1,1})^d:
// each factor contributes two fixed 0-cells or one of two swapped 1-cells.
// Returns rows (dim, plus, minus, fixed) by counting tau orbits directly.
std::vector<CellCountRow> enumerate_torus_cells(int d) {
  // factor cell codes: 0,1 = fixed 0-cells; 2,3 = the swapped pair of 1-cells
  std::vector<CellCountRow> rows(static_cast<size_t>(d) + 1);
  for (int k = 0; k <= d; ++k) rows[static_cast<size_t>(k)].dim = k;
  long total = 1;
  for (int i = 0; i < d; ++i) total *= 4;
  std::vector<bool> seen(static_cast<size_t>(total), false);
  for (long cell = 0; cell < total; ++cell) {
    if (seen[static_cast<size_t>(cell)]) continue;
    // tau image: swap codes 2 <-> 3 per factor
    long image = 0, tmp = cell, base = 1;
    int dim = 0;
    for (int i = 0; i < d; ++i) {
      int code = static_cast<int>(tmp % 4);
      tmp /= 4;
      int icode = code == 2 ? 3 : (code == 3 ? 2 : code);
      if (code >= 2) ++dim;
      image += base * icode;
      base *= 4;
    }
    seen[static_cast<size_t>(cell)] = true;
    if (image == cell) {
      rows[static_cast<size_t>(dim)].fixed += 1;
    } else {
      seen[static_cast<size_t>(image)] = true;
      rows[static_cast<size_t>(dim)].plus += 1;
      rows[static_cast<size_t>(dim)].minus += 1;
    }
  }
  return rows;
}

// Same for S^{1,d} = {0} u {inf} u (half-space cells of R^{0,d}): a cell is a
// nonempty axis subset with a sign per chosen axis; tau flips every sign.
std::vector<CellCountRow> enumerate_sphere_cells(int d) {
  std::vector<CellCountRow> rows(static_cast<size_t>(d) + 1);
  for (int k = 0; k <= d; ++k) rows[static_cast<size_t>(k)].dim = k;
  rows[0].fixed = 2;
  for (int subset = 1; subset < (1 << d); ++subset) {
    int k = __builtin_popcount(static_cast<unsigned>(subset));
    long signs = 1L << k;
    rows[static_cast<size_t>(k)].plus += signs / 2;
    rows[static_cast<size_t>(k)].minus += signs / 2;
  }
  return rows;
}

bool rows_equal(const std::vector<CellCountRow>& a, const std::vector<CellCountRow>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i].dim != b[i].dim || a[i].plus != b[i].plus || a[i].minus != b[i].minus ||
        a[i].fixed != b[i].fixed)
      return false;
  return true;
}

}  // namespace

TEST_CASE("abelian group canonical form and pretty printing") {
  AbelianGroup g = Z.direct_sum(Z2).direct_sum(Z2).direct_sum(Z2).direct_sum(Z2);
  CHECK(g.free_rank == 1);
  CHECK(g.torsion_orders == std::vector<int>{2, 2, 2, 2});
  CHECK(g.pretty() == "Z ⊕ 4Z2");
  CHECK(AbelianGroup::zero().pretty() == "0");
  CHECK(AbelianGroup::Z(3).direct_sum(Z2).pretty() == "3Z ⊕ Z2");

  std::mt19937 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    auto rand_group = [&] {
      return AbelianGroup::Z(static_cast<int>(rng() % 4))
          .direct_sum(AbelianGroup::Z2(static_cast<int>(rng() % 4)));
    };
    AbelianGroup a = rand_group(), b = rand_group(), c = rand_group();
    CHECK(a.direct_sum(b) == b.direct_sum(a));
    CHECK(a.direct_sum(b).direct_sum(c) == a.direct_sum(b.direct_sum(c)));
  }
}

TEST_CASE("KO point table and 8-periodicity") {
  CHECK(ko_point(0) == Z);
  CHECK(ko_point(1) == Z2);
  CHECK(ko_point(2) == Z2);
  CHECK(ko_point(4) == Z);
  CHECK(ko_point(5) == AbelianGroup::zero());
  CHECK(ko_point(6) == AbelianGroup::zero());
  CHECK(ko_point(7) == AbelianGroup::zero());
  for (int n = -17; n <= 17; ++n) CHECK(ko_point(n) == ko_point(n + 8));
}

TEST_CASE("KO^{-3} forced to vanish by the T^3 expansion") {
  // KQ(T^3) = KO^{-4} + 3 KO^{-3} + 3 KO^{-2} + KO^{-1}; the printed value
  // Z + 4Z2 is already saturated by the other three summands.
  AbelianGroup others = ko_point(4)
                            .direct_sum(ko_point(2))
                            .direct_sum(ko_point(2))
                            .direct_sum(ko_point(2))
                            .direct_sum(ko_point(1));
  AbelianGroup target = Z.direct_sum(AbelianGroup::Z2(4));
  CHECK(others == target);
  CHECK(ko_point(3).is_zero());
  CHECK(kq_torus(0, 3, false) == target);
}

TEST_CASE("KR groups of spheres") {
  CHECK(kr_sphere(4, 2) == Z.direct_sum(Z2));
  CHECK(kr_sphere(4, 3) == Z.direct_sum(Z2));
  CHECK(kr_sphere(0, 0) == AbelianGroup::Z(2));
}

TEST_CASE("KQ groups of tori") {
  CHECK(kq_torus(0, 2, false) == Z.direct_sum(Z2));
  CHECK(kq_torus(0, 3, false) == Z.direct_sum(AbelianGroup::Z2(4)));
  CHECK(kq_torus(1, 3, true) == AbelianGroup::Z(3).direct_sum(Z2));
  CHECK(kq_torus(0, 2, true) == Z2);
}

TEST_CASE("binomial identity: 2^d summands before simplification") {
  for (int d = 0; d <= 6; ++d)
    for (int j : {0, 1, 3}) {
      long total = 0;
      for (const TorusSummand& s : kq_torus_summands(j, d, false)) total += s.multiplicity;
      CHECK(total == (1L << d));
    }
}

TEST_CASE("degree shift KQ = KR^{-4} matches direct formulas") {
  CHECK(kq_from_kr(SpaceDescriptor::torus(2), 0) == Z.direct_sum(Z2));
  CHECK(kq_from_kr(SpaceDescriptor::sphere(3), 1) == Z2);
  CHECK(kq_from_kr(SpaceDescriptor::sphere(0), 4) == AbelianGroup::Z(2));
  for (int d = 0; d <= 4; ++d)
    for (int j = -3; j <= 8; ++j) {
      CHECK(kq_from_kr(SpaceDescriptor::torus(d), j) == kq_torus(j, d, false));
      CHECK(kq_from_kr(SpaceDescriptor::torus(d, true), j) == kq_torus(j, d, true));
      CHECK(kq_from_kr(SpaceDescriptor::sphere(d), j) == kr_sphere(j + 4, d));
    }
  CHECK_THROWS_AS(kq_from_kr(SpaceDescriptor::point(), 0), Error);
}

TEST_CASE("bulk-boundary correspondence") {
  CHECK(boundary_group(2) == Z2);
  CHECK(boundary_group(3) == Z2);
  CHECK(bulk_boundary_check(2, 0));
  CHECK(bulk_boundary_check(3, 1));
  // Reduced T^2 bulk group is exactly the boundary group in 2d.
  CHECK(kq_torus(0, 2, true) == boundary_group(2));
  // In 3d the reduced bulk group strictly contains it.
  AbelianGroup bulk3 = kq_torus(1, 3, true);
  CHECK(bulk3 != boundary_group(3));
  CHECK(std::count(bulk3.torsion_orders.begin(), bulk3.torsion_orders.end(), 2) == 1);
  CHECK_THROWS_AS(bulk_boundary_check(4, 0), Error);
  CHECK_THROWS_AS(bulk_boundary_check(2, 1), Error);
}

TEST_CASE("weak FKMM cell counts against brute-force enumeration") {
  for (int d = 0; d <= 4; ++d) {
    CHECK(rows_equal(fkmm_cell_counts(SpaceDescriptor::torus(d)), enumerate_torus_cells(d)));
    CHECK(rows_equal(fkmm_cell_counts(SpaceDescriptor::sphere(d)), enumerate_sphere_cells(d)));
  }
}

TEST_CASE("FKMM counts: worked examples") {
  auto s2 = fkmm_cell_counts(SpaceDescriptor::sphere(2));
  REQUIRE(s2.size() == 3);
  CHECK(s2[0].fixed == 2);
  CHECK(s2[1].plus == 2);
  CHECK(s2[1].minus == 2);
  CHECK(s2[2].plus == 2);
  CHECK(s2[2].minus == 2);

  auto s1 = fkmm_cell_counts(SpaceDescriptor::sphere(1));
  CHECK(s1[0].fixed == 2);
  CHECK(s1[1].plus == 1);
  CHECK(s1[1].minus == 1);

  auto t2 = fkmm_cell_counts(SpaceDescriptor::torus(2));
  CHECK(t2[0].fixed == 4);
  CHECK(t2[1].plus == 4);
  CHECK(t2[1].minus == 4);
  CHECK(t2[2].plus == 2);
  CHECK(t2[2].minus == 2);

  // 2^d fixed zero-cells on T^d, 2 on S^d.
  for (int d = 1; d <= 4; ++d) {
    CHECK(fkmm_cell_counts(SpaceDescriptor::torus(d))[0].fixed == (1L << d));
    CHECK(fkmm_cell_counts(SpaceDescriptor::sphere(d))[0].fixed == 2);
  }
  CHECK_THROWS_AS(fkmm_cell_counts(SpaceDescriptor::point()), Error);
  CHECK_THROWS_AS(fkmm_cell_counts(SpaceDescriptor::torus(5)), Error);
}

TEST_CASE("long exact sequence fixtures from the worked examples") {
  // 0 -> 3Z + 4Z -> KQ^{-1}(S^{1,3}) -> 0 in the middle-degree form forces Z2
  // to sit in the stated slot; the fixture stores the surrounding groups.
  struct Slot {
    AbelianGroup fixture;
    AbelianGroup computed;
  };
  std::vector<Slot> slots = {
      // KSp^{-6}(S^{0,1}) = 2Z2 (two fixed points)
      {AbelianGroup::Z2(2), ksp_point(6).direct_sum(ksp_point(6))},
      // KSp^{-2}(S^{0,1}) = 0, KSp^{-1}(S^{0,1}) = 0
      {AbelianGroup::zero(), ksp_point(2).direct_sum(ksp_point(2))},
      {AbelianGroup::zero(), ksp_point(1).direct_sum(ksp_point(1))},
      // KQ^{-1}(S^{1,3}) = Z2 and KQ^{-5}(S^{1,3}) = Z2 (the sequence slots)
      {Z2, kq_from_kr(SpaceDescriptor::sphere(3), 1)},
      {Z2, kq_from_kr(SpaceDescriptor::sphere(3), 5)},
      // KQ(S^{1,1}) = Z, KQ(T^2) = Z + Z2
      {Z, kq_from_kr(SpaceDescriptor::sphere(1), 0)},
      {Z.direct_sum(Z2), kq_from_kr(SpaceDescriptor::torus(2), 0)},
  };
  for (const Slot& s : slots) CHECK(s.fixture == s.computed);
}

TEST_CASE("space token parsing") {
  CHECK(SpaceDescriptor::parse("T3").kind == SpaceDescriptor::Kind::Torus);
  CHECK(SpaceDescriptor::parse("T3").d == 3);
  CHECK(SpaceDescriptor::parse("S2").d == 2);
  CHECK(SpaceDescriptor::parse("pt").kind == SpaceDescriptor::Kind::Point);
  CHECK_THROWS_AS(SpaceDescriptor::parse("X2"), Error);
  CHECK_THROWS_AS(SpaceDescriptor::parse("T"), Error);
  CHECK_THROWS_AS(SpaceDescriptor::parse("T2x"), Error);
}
