#pragma once

#include <vector>

#include "common.hpp"

namespace z2kit {

// U(2)-valued field sampled on a closed uniform 3d grid, row-major in
// (i, j, l) with periodic wrap.
struct U2Field {
  int n = 0;
  std::vector<Eigen::Matrix2cd> g;

  long index(int i, int j, int l) const {
    auto m = [this](int v) { return ((v % n) + n) % n; };
    return (static_cast<long>(m(i)) * n + m(j)) * n + m(l);
  }
  const Eigen::Matrix2cd& at(int i, int j, int l) const {
    return g[static_cast<size_t>(index(i, j, l))];
  }
};

struct WzwResult {
  double estimate = 0.0;   // (1/24 pi^2) integral of tr(g^-1 dg)^3
  int winding = 0;         // nearest integer
  int mod2 = 0;            // winding mod 2
  double max_link_distance = 0.0;
};

// Odd-Chern-character winding of the field by central-difference log
// derivatives. The prefactor 1/(24 pi^2) is calibrated so an S^3 -> SU(2)
// degree-one sample integrates to +-1. Fields whose neighbor distance in U(2)
// reaches 0.5 are rejected as unresolvable, and a rounding gap >= 0.1 raises
// an error.
WzwResult wzw_winding(const U2Field& field);

// Pointwise product field (windings add).
U2Field pointwise_product(const U2Field& a, const U2Field& b);

}  // namespace z2kit
