#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace z2kit {

// Finitely generated abelian group in canonical form: Z^free_rank plus 2-torsion.
// Canonical form keeps torsion_orders sorted ascending; equality is field-wise.
struct AbelianGroup {
  int free_rank = 0;
  std::vector<int> torsion_orders;  // entries >= 2, sorted ascending

  static AbelianGroup zero() { return {}; }
  static AbelianGroup Z(int copies = 1);
  static AbelianGroup Z2(int copies = 1);

  AbelianGroup direct_sum(const AbelianGroup& other) const;
  bool is_zero() const { return free_rank == 0 && torsion_orders.empty(); }
  bool operator==(const AbelianGroup& other) const = default;

  // "Z ⊕ 4Z2", "3Z ⊕ Z2", "0", ...
  std::string pretty() const;
};

struct SpaceDescriptor {
  enum class Kind { Point, Sphere, Torus };
  Kind kind = Kind::Point;
  int d = 0;  // dimension of S^{1,d} or T^d
  bool reduced = false;

  static SpaceDescriptor point() { return {Kind::Point, 0, false}; }
  static SpaceDescriptor sphere(int d, bool reduced = false) { return {Kind::Sphere, d, reduced}; }
  static SpaceDescriptor torus(int d, bool reduced = false) { return {Kind::Torus, d, reduced}; }
  // Parses "pt", "S0".."S9", "T1".."T9".
  static SpaceDescriptor parse(const std::string& token, bool reduced = false);
  std::string name() const;
};

// KO^{-n}(pt), n reduced mod 8: [Z, Z2, Z2, 0, Z, 0, 0, 0].
AbelianGroup ko_point(int n);

// KSp^{-n}(pt) = KO^{-n-4}(pt).
AbelianGroup ksp_point(int n);

// KR^{-i}(S^{1,d}) = KO^{-i}(pt) (+) KO^{-(i-d)}(pt). Reduced variant drops the
// first summand (restriction to a fixed point).
AbelianGroup kr_sphere(int i, int d, bool reduced = false);

// One summand of the binomial torus expansion, kept for provenance reporting.
struct TorusSummand {
  int k;             // cell dimension in the decomposition, 0..d
  int multiplicity;  // binomial(d, k)
  int ko_degree;     // m with the summand equal to multiplicity * KO^{-m}(pt)
  AbelianGroup group;
};

// KQ^{-j}(T^d) = (+)_k binom(d,k) KO^{-(j-k+4)}(pt); reduced drops k = 0.
std::vector<TorusSummand> kq_torus_summands(int j, int d, bool reduced = false);
AbelianGroup kq_torus(int j, int d, bool reduced = false);

// KR^{-i}(T^d) = (+)_k binom(d,k) KO^{-(i-k)}(pt); reduced drops k = 0.
AbelianGroup kr_torus(int i, int d, bool reduced = false);

// KQ^{-j}(X) = KR^{-j-4}(X) for X a sphere or torus.
AbelianGroup kq_from_kr(const SpaceDescriptor& space, int j);

// Boundary K-theory KO^{-2}(pt) of the distinguished fixed point.
AbelianGroup boundary_group(int d);

// True iff the Z2 torsion summand carrying the invariant appears in the reduced
// bulk group. Only (d, j) in {(2, 0), (3, 1)} are covered.
bool bulk_boundary_check(int d, int j);

// One row of a weak-FKMM equivariant cell decomposition count table.
struct CellCountRow {
  int dim = 0;
  long plus = 0;
  long minus = 0;
  long fixed = 0;
};

// Cell counts of the product/compactification decomposition of S^{1,d} or T^d,
// d <= 4. For every dimension the + and - counts agree (tau swaps them).
std::vector<CellCountRow> fkmm_cell_counts(const SpaceDescriptor& space);

}  // namespace z2kit
