#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "brillouin.hpp"

using namespace z2kit;

TEST_CASE("grid construction and involution") {
  for (int d : {1, 2, 3})
    for (int n : {4, 8}) {
      InvolutiveGrid g = make_grid(d, n);
      CHECK(g.num_points() == static_cast<long>(std::pow(n, d)));
      for (long i = 0; i < g.num_points(); ++i) CHECK(g.tau(g.tau(i)) == i);
      CHECK(g.trim().size() == (1u << d));
      for (long t : g.trim()) {
        CHECK(g.tau(t) == t);
        Vector3d k = g.k(t);
        for (int a = 0; a < d; ++a) {
          bool zero_or_pi = std::abs(k(a)) < 1e-12 || std::abs(k(a) - kPi) < 1e-12;
          CHECK(zero_or_pi);
        }
      }
      // fixed set of tau is exactly the TRIM list
      long fixed = 0;
      for (long i = 0; i < g.num_points(); ++i)
        if (g.tau(i) == i) ++fixed;
      CHECK(fixed == static_cast<long>(g.trim().size()));
    }
  CHECK_THROWS_AS(make_grid(2, 5), Error);
  CHECK_THROWS_AS(make_grid(2, 2), Error);
  CHECK_THROWS_AS(make_grid(4, 8), Error);
}

TEST_CASE("domain labels split the grid") {
  for (int d : {1, 2, 3}) {
    InvolutiveGrid g = make_grid(d, 8);
    long plus = 0, minus = 0, fix = 0;
    for (long i = 0; i < g.num_points(); ++i) {
      int l = g.label(i);
      if (l > 0) ++plus;
      if (l < 0) ++minus;
      if (l == 0) ++fix;
      int lt = g.label(g.tau(i));
      CHECK(lt == -l);
    }
    CHECK(plus == minus);
    CHECK(plus + minus + fix == g.num_points());
    // the fix label marks the two invariant planes of the last axis
    CHECK(fix == 2 * g.num_points() / 8);
  }
}

TEST_CASE("trim coordinates for the 2d worked example") {
  InvolutiveGrid g = make_grid(2, 4);
  std::set<std::pair<double, double>> expect = {
      {0, 0}, {kPi, 0}, {0, kPi}, {kPi, kPi}};
  std::set<std::pair<double, double>> got;
  for (long t : g.trim()) {
    Vector3d k = g.k(t);
    got.insert({std::round(k(0) * 1e9) / 1e9, std::round(k(1) * 1e9) / 1e9});
  }
  std::set<std::pair<double, double>> expect_r;
  for (auto [a, b] : expect) expect_r.insert({std::round(a * 1e9) / 1e9, std::round(b * 1e9) / 1e9});
  CHECK(got == expect_r);
  CHECK(make_grid(1, 4).trim().size() == 2);
  CHECK(make_grid(3, 8).trim().size() == 8);
}

TEST_CASE("effective BZ covers half the plaquettes") {
  {
    EffectiveBZ e = effective_bz(make_grid(2, 4));
    CHECK(e.plaquettes.size() == 8);
    REQUIRE(e.boundary.size() == 2);
    CHECK(e.boundary[0].fixed_coord == 0);
    CHECK(e.boundary[0].orientation == +1);
    CHECK(e.boundary[1].fixed_coord == 2);
    CHECK(e.boundary[1].orientation == -1);
  }
  CHECK(effective_bz(make_grid(2, 8)).plaquettes.size() == 32);
  CHECK_THROWS_AS(effective_bz(make_grid(1, 8)), Error);

  EffectiveBZ e3 = effective_bz(make_grid(3, 4));
  CHECK(e3.planes.size() == 6);
  std::set<std::pair<int, int>> seen;
  for (const auto& p : e3.planes) seen.insert({p.normal_axis, p.coord});
  CHECK(seen.size() == 6);
}

TEST_CASE("trim tree spans the TRIM inside the + closure") {
  for (int d : {1, 2, 3}) {
    InvolutiveGrid g = make_grid(d, 8);
    std::vector<TrimPath> tree = trim_tree(g);
    CHECK(tree.size() == (1u << d) - 1);
    std::set<long> covered;
    for (const TrimPath& p : tree) {
      CHECK(p.nodes.front() == p.trim_from);
      CHECK(p.nodes.back() == p.trim_to);
      CHECK(g.is_trim(p.trim_from));
      CHECK(g.is_trim(p.trim_to));
      covered.insert(p.trim_from);
      covered.insert(p.trim_to);
      for (size_t i = 0; i + 1 < p.nodes.size(); ++i) {
        // consecutive nodes are grid neighbors along the path axis
        auto a = g.coords(p.nodes[i]), b = g.coords(p.nodes[i + 1]);
        int diff = 0;
        for (int ax = 0; ax < d; ++ax)
          diff += std::abs(a[static_cast<size_t>(ax)] - b[static_cast<size_t>(ax)]);
        CHECK(diff == 1);
      }
      for (long node : p.nodes) CHECK(g.label(node) >= 0);  // never in the - half
    }
    CHECK(covered.size() == (1u << d));
  }
  // worked example: d=1, N=4 passes through k = pi/2
  std::vector<TrimPath> t1 = trim_tree(make_grid(1, 4));
  REQUIRE(t1.size() == 1);
  CHECK(t1[0].nodes.size() == 3);
}
