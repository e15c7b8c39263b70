#include "kgroups.hpp"

#include <algorithm>

#include "common.hpp"

namespace z2kit {

AbelianGroup AbelianGroup::Z(int copies) {
  AbelianGroup g;
  g.free_rank = copies;
  return g;
}

AbelianGroup AbelianGroup::Z2(int copies) {
  AbelianGroup g;
  g.torsion_orders.assign(static_cast<size_t>(copies), 2);
  return g;
}

AbelianGroup AbelianGroup::direct_sum(const AbelianGroup& other) const {
  AbelianGroup g;
  g.free_rank = free_rank + other.free_rank;
  g.torsion_orders = torsion_orders;
  g.torsion_orders.insert(g.torsion_orders.end(), other.torsion_orders.begin(),
                          other.torsion_orders.end());
  std::sort(g.torsion_orders.begin(), g.torsion_orders.end());
  return g;
}

std::string AbelianGroup::pretty() const {
  if (is_zero()) return "0";
  std::string out;
  if (free_rank == 1)
    out = "Z";
  else if (free_rank > 1)
    out = std::to_string(free_rank) + "Z";
  // Only order-2 torsion occurs in this calculus; group equal orders.
  size_t i = 0;
  while (i < torsion_orders.size()) {
    size_t j = i;
    while (j < torsion_orders.size() && torsion_orders[j] == torsion_orders[i]) ++j;
    size_t count = j - i;
    if (!out.empty()) out += " ⊕ ";
    if (count > 1) out += std::to_string(count);
    out += "Z" + std::to_string(torsion_orders[i]);
    i = j;
  }
  return out;
}

SpaceDescriptor SpaceDescriptor::parse(const std::string& token, bool reduced) {
  if (token == "pt" || token == "point") return point();
  if (token.size() >= 2 && (token[0] == 'S' || token[0] == 'T')) {
    int d = 0;
    try {
      size_t pos = 0;
      d = std::stoi(token.substr(1), &pos);
      if (pos != token.size() - 1) d = -1;
    } catch (const std::exception&) {
      d = -1;
    }
    if (d >= 0) {
      return token[0] == 'S' ? sphere(d, reduced) : torus(d, reduced);
    }
  }
  throw Error(ErrorKind::BadArgument, "unknown space token '" + token +
                                          "' (expected pt, S<d> or T<d>)");
}

std::string SpaceDescriptor::name() const {
  switch (kind) {
    case Kind::Point:
      return "pt";
    case Kind::Sphere:
      return "S" + std::to_string(d);
    case Kind::Torus:
      return "T" + std::to_string(d);
  }
  return "?";
}

AbelianGroup ko_point(int n) {
  int m = ((n % 8) + 8) % 8;
  switch (m) {
    case 0:
    case 4:
      return AbelianGroup::Z();
    case 1:
    case 2:
      return AbelianGroup::Z2();
    default:
      return AbelianGroup::zero();
  }
}

AbelianGroup ksp_point(int n) { return ko_point(n + 4); }

AbelianGroup kr_sphere(int i, int d, bool reduced) {
  if (d < 0) throw Error(ErrorKind::BadArgument, "kr_sphere: d must be >= 0");
  AbelianGroup g = ko_point(i - d);
  if (!reduced) g = g.direct_sum(ko_point(i));
  return g;
}

static long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

std::vector<TorusSummand> kq_torus_summands(int j, int d, bool reduced) {
  if (d < 0) throw Error(ErrorKind::BadArgument, "kq_torus: d must be >= 0");
  std::vector<TorusSummand> out;
  for (int k = reduced ? 1 : 0; k <= d; ++k) {
    TorusSummand s;
    s.k = k;
    s.multiplicity = static_cast<int>(binomial(d, k));
    s.ko_degree = ((j - k + 4) % 8 + 8) % 8;
    s.group = ko_point(s.ko_degree);
    out.push_back(s);
  }
  return out;
}

AbelianGroup kq_torus(int j, int d, bool reduced) {
  AbelianGroup g;
  for (const TorusSummand& s : kq_torus_summands(j, d, reduced))
    for (int c = 0; c < s.multiplicity; ++c) g = g.direct_sum(s.group);
  return g;
}

AbelianGroup kr_torus(int i, int d, bool reduced) {
  if (d < 0) throw Error(ErrorKind::BadArgument, "kr_torus: d must be >= 0");
  AbelianGroup g;
  for (int k = reduced ? 1 : 0; k <= d; ++k) {
    AbelianGroup summand = ko_point(i - k);
    for (long long c = 0; c < binomial(d, k); ++c) g = g.direct_sum(summand);
  }
  return g;
}

AbelianGroup kq_from_kr(const SpaceDescriptor& space, int j) {
  switch (space.kind) {
    case SpaceDescriptor::Kind::Sphere:
      return kr_sphere(j + 4, space.d, space.reduced);
    case SpaceDescriptor::Kind::Torus:
      return kr_torus(j + 4, space.d, space.reduced);
    default:
      throw Error(ErrorKind::BadArgument, "kq_from_kr: space must be a sphere or torus");
  }
}

AbelianGroup boundary_group(int d) {
  (void)d;  // the boundary point carries KO^{-2} in every dimension treated here
  return ko_point(2);
}

bool bulk_boundary_check(int d, int j) {
  if (!((d == 2 && j == 0) || (d == 3 && j == 1)))
    throw Error(ErrorKind::BadArgument,
                "bulk_boundary_check: (d=" + std::to_string(d) + ", j=" + std::to_string(j) +
                    ") not covered by the correspondence");
  AbelianGroup bulk = kq_torus(j, d, /*reduced=*/true);
  // The distinguished summand is a single Z2; membership, not equality, because
  // the reduced 3d bulk group strictly contains the boundary group.
  return std::count(bulk.torsion_orders.begin(), bulk.torsion_orders.end(), 2) >= 1;
}

std::vector<CellCountRow> fkmm_cell_counts(const SpaceDescriptor& space) {
  if (space.kind == SpaceDescriptor::Kind::Point)
    throw Error(ErrorKind::BadArgument, "fkmm_cell_counts: space must be a sphere or torus");
  if (space.d < 0 || space.d > 4)
    throw Error(ErrorKind::BadArgument, "fkmm_cell_counts: d must be in 0..4");

  int d = space.d;
  std::vector<CellCountRow> rows(static_cast<size_t>(d) + 1);
  for (int k = 0; k <= d; ++k) rows[static_cast<size_t>(k)].dim = k;

  if (space.kind == SpaceDescriptor::Kind::Sphere) {
    // S^{1,d} = {0} u {inf} u (iterated half-space cells of R^{0,d} \ {0}).
    rows[0].fixed = 2;
    for (int k = 1; k <= d; ++k) {
      long half = binomial(d, k) * (1L << (k - 1));
      rows[static_cast<size_t>(k)].plus = half;
      rows[static_cast<size_t>(k)].minus = half;
    }
  } else {
    // T^d = (S^{1,1})^d with the product cell structure: each factor contributes
    // two fixed 0-cells or a swapped pair of 1-cells.
    rows[0].fixed = 1L << d;
    for (int k = 1; k <= d; ++k) {
      long half = binomial(d, k) * (1L << (d - 1));
      rows[static_cast<size_t>(k)].plus = half;
      rows[static_cast<size_t>(k)].minus = half;
    }
  }
  return rows;
}

}  // namespace z2kit
