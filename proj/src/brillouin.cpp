#include "brillouin.hpp"

#include <algorithm>

namespace z2kit {

InvolutiveGrid::InvolutiveGrid(int dim, int n) : dim_(dim), n_(n) {
  if (dim < 1 || dim > 3)
    throw Error(ErrorKind::BadArgument, "grid dimension must be 1, 2 or 3");
  if (n < 4 || n % 2 != 0)
    throw Error(ErrorKind::BadArgument,
                "grid size must be even and >= 4 (odd sizes put TRIM off-grid)");
  num_points_ = 1;
  for (int i = 0; i < dim_; ++i) num_points_ *= n_;
  // TRIM: every coordinate in {0, N/2}, i.e. angles {0, pi}.
  std::array<int, 3> c{0, 0, 0};
  int m = 1 << dim_;
  for (int mask = 0; mask < m; ++mask) {
    for (int a = 0; a < dim_; ++a) c[static_cast<size_t>(a)] = (mask >> a) & 1 ? n_ / 2 : 0;
    trim_.push_back(index(c));
  }
  std::sort(trim_.begin(), trim_.end());
}

long InvolutiveGrid::index(const std::array<int, 3>& c) const {
  long idx = 0;
  for (int a = 0; a < dim_; ++a) {
    int v = ((c[static_cast<size_t>(a)] % n_) + n_) % n_;
    idx = idx * n_ + v;
  }
  return idx;
}

std::array<int, 3> InvolutiveGrid::coords(long idx) const {
  std::array<int, 3> c{0, 0, 0};
  for (int a = dim_ - 1; a >= 0; --a) {
    c[static_cast<size_t>(a)] = static_cast<int>(idx % n_);
    idx /= n_;
  }
  return c;
}

Vector3d InvolutiveGrid::k(long idx) const {
  std::array<int, 3> c = coords(idx);
  Vector3d v = Vector3d::Zero();
  for (int a = 0; a < dim_; ++a)
    v(a) = 2.0 * kPi * c[static_cast<size_t>(a)] / n_;
  return v;
}

long InvolutiveGrid::tau(long idx) const {
  std::array<int, 3> c = coords(idx);
  for (int a = 0; a < dim_; ++a)
    c[static_cast<size_t>(a)] = (n_ - c[static_cast<size_t>(a)]) % n_;
  return index(c);
}

bool InvolutiveGrid::is_trim(long idx) const {
  return std::binary_search(trim_.begin(), trim_.end(), idx);
}

int InvolutiveGrid::label(long idx) const {
  int last = coords(idx)[static_cast<size_t>(dim_ - 1)];
  if (last == 0 || last == n_ / 2) return 0;
  return last < n_ / 2 ? +1 : -1;
}

InvolutiveGrid make_grid(int dim, int n) { return InvolutiveGrid(dim, n); }

EffectiveBZ effective_bz(const InvolutiveGrid& grid) {
  if (grid.dim() == 1)
    throw Error(ErrorKind::BadArgument, "effective_bz needs a 2d or 3d grid");
  EffectiveBZ e;
  e.dim = grid.dim();
  e.n = grid.n();
  if (grid.dim() == 2) {
    for (int iy = 0; iy < grid.n() / 2; ++iy)
      for (int ix = 0; ix < grid.n(); ++ix) e.plaquettes.push_back({ix, iy});
    e.boundary.push_back({0, 0, +1});
    e.boundary.push_back({0, grid.n() / 2, -1});
  } else {
    for (int axis = 0; axis < 3; ++axis) {
      e.planes.push_back({axis, 0});
      e.planes.push_back({axis, grid.n() / 2});
    }
  }
  return e;
}

static TrimPath make_axis_path(const InvolutiveGrid& grid, int axis,
                               const std::array<int, 3>& base) {
  TrimPath p;
  p.axis = axis;
  p.base = base;
  std::array<int, 3> c = base;
  for (int v = 0; v <= grid.n() / 2; ++v) {
    c[static_cast<size_t>(axis)] = v;
    p.nodes.push_back(grid.index(c));
  }
  p.trim_from = p.nodes.front();
  p.trim_to = p.nodes.back();
  return p;
}

std::vector<TrimPath> trim_tree(const InvolutiveGrid& grid) {
  int h = grid.n() / 2;
  std::vector<TrimPath> tree;
  if (grid.dim() == 1) {
    tree.push_back(make_axis_path(grid, 0, {0, 0, 0}));
    return tree;
  }
  if (grid.dim() == 2) {
    tree.push_back(make_axis_path(grid, 0, {0, 0, 0}));  // (0,0) -> (pi,0)
    tree.push_back(make_axis_path(grid, 1, {0, 0, 0}));  // (0,0) -> (0,pi)
    tree.push_back(make_axis_path(grid, 0, {0, h, 0}));  // (0,pi) -> (pi,pi)
    return tree;
  }
  // d = 3: a 2d tree in each of the planes k_z = 0 and k_z = pi, joined along z.
  for (int zc : {0, h}) {
    tree.push_back(make_axis_path(grid, 0, {0, 0, zc}));
    tree.push_back(make_axis_path(grid, 1, {0, 0, zc}));
    tree.push_back(make_axis_path(grid, 0, {0, h, zc}));
  }
  tree.push_back(make_axis_path(grid, 2, {0, 0, 0}));
  return tree;
}

}  // namespace z2kit
