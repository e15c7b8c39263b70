#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "common.hpp"

namespace z2kit {

// Uniform grid on T^d (d = 1..3) with the involution tau(k) = -k. Points are
// k_i = 2*pi*n_i/N with n_i in [0, N); the grid contains k = 0, so all 2^d
// time-reversal fixed points (TRIM) are grid points.
class InvolutiveGrid {
 public:
  InvolutiveGrid(int dim, int n);

  int dim() const { return dim_; }
  int n() const { return n_; }
  long num_points() const { return num_points_; }

  long index(const std::array<int, 3>& c) const;
  std::array<int, 3> coords(long idx) const;
  Vector3d k(long idx) const;

  // Index permutation realizing n_i -> (-n_i) mod N. An involution.
  long tau(long idx) const;
  bool is_trim(long idx) const;
  const std::vector<long>& trim() const { return trim_; }

  // Fundamental-domain marking: +1 / -1 for the open halves 0 < k_d < pi and
  // pi < k_d < 2*pi of the last axis, 0 ("fix") on the invariant planes
  // k_d in {0, pi}. tau swaps + and - and preserves fix.
  int label(long idx) const;

 private:
  int dim_;
  int n_;
  long num_points_;
  std::vector<long> trim_;
};

InvolutiveGrid make_grid(int dim, int n);

// The effective Brillouin zone: a fundamental domain of tau made of plaquettes.
// For d = 2 this is the band 0 <= k_y <= pi; its boundary is the two
// tau-invariant circles k_y = 0 (traversed +k_x) and k_y = pi (traversed -k_x).
// For d = 3 the six tau-invariant planes k_i in {0, pi} are reported, each a
// 2-torus carrying its own half zone.
struct EffectiveBZ {
  struct Plaquette {
    int ix = 0, iy = 0;  // lower-left corner
  };
  struct BoundaryCircle {
    int axis = 0;        // varying axis
    int fixed_coord = 0; // grid coordinate of the other axis (0 or N/2)
    int orientation = 1; // +1 along +axis, -1 against
  };
  struct InvariantPlane {
    int normal_axis = 0;
    int coord = 0;  // 0 or N/2
  };

  int dim = 2;
  int n = 0;
  std::vector<Plaquette> plaquettes;      // d = 2
  std::vector<BoundaryCircle> boundary;   // d = 2
  std::vector<InvariantPlane> planes;     // d = 3
};

EffectiveBZ effective_bz(const InvolutiveGrid& grid);

// A grid path between two TRIM, running along one axis with the remaining
// coordinates held at 0 or N/2. Every such path is half of a tau-invariant
// circle, which is what the gauge transport below needs.
struct TrimPath {
  std::vector<long> nodes;       // consecutive grid indices, adjacent steps
  long trim_from = 0, trim_to = 0;
  int axis = 0;                  // varying axis; coordinate runs 0..N/2
  std::array<int, 3> base{0, 0, 0};  // coordinates of the non-varying axes
};

// Spanning tree of 2^d - 1 paths connecting all TRIM inside the closure of the
// + domain. For d = 3 the tree is organized per k_z in {0, pi} plane with a
// single connecting path along k_z.
std::vector<TrimPath> trim_tree(const InvolutiveGrid& grid);

}  // namespace z2kit
