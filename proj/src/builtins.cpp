#include "builtins.hpp"

#include <random>

namespace z2kit {

namespace {

using Eigen::Matrix2cd;
using Eigen::Matrix4cd;

Matrix2cd pauli(int i) {
  Matrix2cd m;
  const cplx I(0.0, 1.0);
  switch (i) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, -I, I, 0; break;
    default: m << 1, 0, 0, -1; break;
  }
  return m;
}

MatrixXcd kron(const MatrixXcd& a, const MatrixXcd& b) {
  MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Accumulates T_delta blocks; add_cos/add_sin keep the family Hermitian for
// Hermitian g.
struct HoppingBuilder {
  std::map<std::array<int, 3>, MatrixXcd> blocks;
  int bands;

  explicit HoppingBuilder(int n) : bands(n) {}

  void add(const std::array<int, 3>& d, const MatrixXcd& m) {
    auto it = blocks.find(d);
    if (it == blocks.end())
      blocks.emplace(d, m);
    else
      it->second += m;
  }
  // c * cos(k.delta) * g
  void add_cos(const std::array<int, 3>& d, double c, const MatrixXcd& g) {
    add(d, 0.5 * c * g);
    add({-d[0], -d[1], -d[2]}, 0.5 * c * g);
  }
  // c * sin(k.delta) * g
  void add_sin(const std::array<int, 3>& d, double c, const MatrixXcd& g) {
    const cplx half_over_i(0.0, -0.5);  // 1/(2i)
    add(d, c * half_over_i * g);
    add({-d[0], -d[1], -d[2]}, -c * half_over_i * g);
  }
  void add_const(double c, const MatrixXcd& g) { add({0, 0, 0}, c * g); }

  std::vector<Hopping> take() {
    std::vector<Hopping> out;
    for (auto& [d, m] : blocks)
      if (m.cwiseAbs().maxCoeff() > 0) out.push_back({d, m});
    return out;
  }
};

double get_param(const std::map<std::string, double>& p, const std::string& key, double dflt) {
  auto it = p.find(key);
  return it == p.end() ? dflt : it->second;
}

void reject_unknown(const std::map<std::string, double>& p,
                    const std::vector<std::string>& known, const std::string& model) {
  for (const auto& [k, v] : p) {
    (void)v;
    bool ok = false;
    for (const auto& name : known)
      if (name == k) ok = true;
    if (!ok)
      throw Error(ErrorKind::Validation,
                  "unknown parameter '" + k + "' for builtin model " + model);
  }
}

// Kane-Mele quantum spin Hall model on the honeycomb lattice, basis
// (A, B sublattice) x (spin), momenta in reduced coordinates k_i = k . a_i
// with Bravais vectors a_1 = (sqrt(3)/2, 3/2), a_2 = (-sqrt(3)/2, 3/2)
// (nearest-neighbor distance 1). Dirac points sit at (2pi/3, 4pi/3) and its
// mirror image.
BlochModel kane_mele(const std::map<std::string, double>& p) {
  reject_unknown(p, {"t", "lambda_so", "lambda_r", "lambda_v", "zeeman"}, "kane_mele");
  double t = get_param(p, "t", 1.0);
  double so = get_param(p, "lambda_so", 0.06);
  double r = get_param(p, "lambda_r", 0.05);
  double v = get_param(p, "lambda_v", 0.1);
  double zeeman = get_param(p, "zeeman", 0.0);

  const cplx I(0.0, 1.0);
  MatrixXcd ab = MatrixXcd::Zero(2, 2), aa = MatrixXcd::Zero(2, 2),
            bb = MatrixXcd::Zero(2, 2);
  ab(0, 1) = 1.0;
  aa(0, 0) = 1.0;
  bb(1, 1) = 1.0;
  Matrix2cd sx = pauli(1), sy = pauli(2), sz = pauli(3), s0 = pauli(0);

  std::map<std::array<int, 3>, MatrixXcd> blocks;
  auto add_bond = [&](std::array<int, 3> n, const MatrixXcd& m) {
    auto ins = [&](std::array<int, 3> key, const MatrixXcd& val) {
      auto it = blocks.find(key);
      if (it == blocks.end())
        blocks.emplace(key, val);
      else
        it->second += val;
    };
    ins(n, m);
    ins({-n[0], -n[1], -n[2]}, m.adjoint());
  };
  auto add_onsite = [&](const MatrixXcd& m) {
    auto it = blocks.find({0, 0, 0});
    if (it == blocks.end())
      blocks.emplace(std::array<int, 3>{0, 0, 0}, m);
    else
      it->second += m;
  };

  // Nearest-neighbor hopping: A(R) to B(R), B(R + a1), B(R + a2).
  for (std::array<int, 3> n : {std::array<int, 3>{1, 0, 0}, {0, 1, 0}})
    add_bond(n, t * kron(ab, s0));
  add_onsite(t * kron(ab, s0) + t * kron(ab, s0).adjoint());

  // Intrinsic spin-orbit: second-neighbor hops b1 = a1, b2 = a2 - a1,
  // b3 = -a2 (counterclockwise) with amplitude +i lambda_so s_z on A and the
  // opposite sign on B.
  for (std::array<int, 3> n : {std::array<int, 3>{1, 0, 0}, {-1, 1, 0}, {0, -1, 0}})
    add_bond(n, I * so * (kron(aa, sz) - kron(bb, sz)));

  // Rashba coupling i lambda_r (s x d_hat)_z on the three NN bonds with unit
  // vectors d3 = (0, -1), d1 = (sqrt(3)/2, 1/2), d2 = (-sqrt(3)/2, 1/2).
  const double h3 = std::sqrt(3.0) / 2.0;
  MatrixXcd m3 = -sx;
  MatrixXcd m1 = 0.5 * sx - h3 * sy;
  MatrixXcd m2 = 0.5 * sx + h3 * sy;
  add_onsite(I * r * kron(ab, m3) + (I * r * kron(ab, m3)).adjoint());
  add_bond({1, 0, 0}, I * r * kron(ab, m1));
  add_bond({0, 1, 0}, I * r * kron(ab, m2));

  // Staggered sublattice potential and the optional TRS-breaking Zeeman term.
  add_onsite(v * kron(pauli(3), s0));
  if (zeeman != 0.0) add_onsite(zeeman * kron(s0, sz));

  BlochModel m;
  m.name = "kane_mele";
  m.builtin = "kane_mele";
  m.dim = 2;
  m.bands = 4;
  m.n_occupied = 2;
  m.lattice.resize(2, 2);
  m.lattice << h3, 1.5, -h3, 1.5;
  for (auto& [n, mat] : blocks)
    if (mat.cwiseAbs().maxCoeff() > 0) m.hoppings.push_back({n, mat});
  m.tr.u = kron(s0, I * sy);  // 1 x (i s_y)
  m.parameters = {{"t", t}, {"lambda_so", so}, {"lambda_r", r}, {"lambda_v", v},
                  {"zeeman", zeeman}};
  return m;
}

// One Chern block h(k) = a sin kx sx + a sin ky sy + (m + b cos kx + b cos ky) sz.
void add_chern_block(HoppingBuilder& hb, const MatrixXcd& up, const MatrixXcd& dn,
                     double a, double b, double m) {
  // Spin-down block is the TRS image h(-k)*: sx -> -sx, sz -> sz pick up the
  // conjugation, sin -> -sin the momentum flip.
  hb.add_sin({1, 0, 0}, a, kron(up, pauli(1)) - kron(dn, pauli(1)));
  hb.add_sin({0, 1, 0}, a, kron(up, pauli(2)) + kron(dn, pauli(2)));
  MatrixXcd z = kron(up, pauli(3)) + kron(dn, pauli(3));
  hb.add_const(m, z);
  hb.add_cos({1, 0, 0}, b, z);
  hb.add_cos({0, 1, 0}, b, z);
}

BlochModel two_block_model(const std::string& name, double a, double b, double m) {
  Matrix2cd up = Matrix2cd::Zero(), dn = Matrix2cd::Zero();
  up(0, 0) = 1.0;
  dn(1, 1) = 1.0;
  HoppingBuilder hb(4);
  add_chern_block(hb, up, dn, a, b, m);
  BlochModel out;
  out.name = name;
  out.builtin = name;
  out.dim = 2;
  out.bands = 4;
  out.n_occupied = 2;
  out.lattice = MatrixXd::Identity(2, 2);
  out.hoppings = hb.take();
  out.tr.u = kron(cplx(0.0, 1.0) * pauli(2), pauli(0));  // (i s_y) x 1, spin-major basis
  out.parameters = {{"a", a}, {"b", b}, {"m", m}};
  return out;
}

// BHZ in the common lattice regularization: mass term m - 2b(2 - cos kx - cos ky).
BlochModel bhz(const std::map<std::string, double>& p) {
  reject_unknown(p, {"a", "b", "m"}, "bhz");
  double a = get_param(p, "a", 1.0);
  double b = get_param(p, "b", 1.0);
  double m = get_param(p, "m", 0.5);
  BlochModel out = two_block_model("bhz", a, 2.0 * b, m - 4.0 * b);
  out.builtin = "bhz";
  out.name = "bhz";
  out.parameters = {{"a", a}, {"b", b}, {"m", m}};
  return out;
}

BlochModel qwz_pair(const std::map<std::string, double>& p) {
  reject_unknown(p, {"a", "b", "m"}, "qwz_pair");
  return two_block_model("qwz_pair", get_param(p, "a", 1.0), get_param(p, "b", 1.0),
                         get_param(p, "m", 1.0));
}

BlochModel atomic(const std::map<std::string, double>& p) {
  reject_unknown(p, {"m"}, "atomic");
  double m = get_param(p, "m", 1.0);
  BlochModel out;
  out.name = "atomic";
  out.builtin = "atomic";
  out.dim = 2;
  out.bands = 4;
  out.n_occupied = 2;
  out.lattice = MatrixXd::Identity(2, 2);
  MatrixXcd t0 = MatrixXcd::Zero(4, 4);
  t0.diagonal() << -m, -m, m, m;
  out.hoppings = {{{0, 0, 0}, t0}};
  out.tr.u = kron(pauli(0), cplx(0.0, 1.0) * pauli(2));
  out.parameters = {{"m", m}};
  return out;
}

// 3d Dirac block: a sum_i sin k_i G_i + (m - 2b sum_i (1 - cos k_i)) G_0,
// with G_0 = sz x 1 and G_i = sx x s_i; TRS under (1 x i s_y) C.
void add_dirac3d_block(HoppingBuilder& hb, int offset, double a, double b, double m) {
  auto emb = [&](const MatrixXcd& g) {
    MatrixXcd full = MatrixXcd::Zero(hb.bands, hb.bands);
    full.block(offset, offset, 4, 4) = g;
    return full;
  };
  MatrixXcd g0 = emb(kron(pauli(3), pauli(0)));
  hb.add_const(m - 6.0 * b, g0);
  for (int axis = 0; axis < 3; ++axis) {
    std::array<int, 3> d{0, 0, 0};
    d[static_cast<size_t>(axis)] = 1;
    hb.add_cos(d, 2.0 * b, g0);
    hb.add_sin(d, a, emb(kron(pauli(1), pauli(axis + 1))));
  }
}

BlochModel strong_ti_3d(const std::map<std::string, double>& p) {
  reject_unknown(p, {"a", "b", "m", "m_trivial"}, "strong_ti_3d");
  double a = get_param(p, "a", 1.0);
  double b = get_param(p, "b", 1.0);
  double m = get_param(p, "m", 2.0);
  double mt = get_param(p, "m_trivial", -2.0);
  HoppingBuilder hb(8);
  add_dirac3d_block(hb, 0, a, b, m);
  add_dirac3d_block(hb, 4, a, b, mt);
  BlochModel out;
  out.name = "strong_ti_3d";
  out.builtin = "strong_ti_3d";
  out.dim = 3;
  out.bands = 8;
  out.n_occupied = 4;
  out.lattice = MatrixXd::Identity(3, 3);
  out.hoppings = hb.take();
  MatrixXcd u4 = kron(pauli(0), cplx(0.0, 1.0) * pauli(2));
  out.tr.u = MatrixXcd::Zero(8, 8);
  out.tr.u.block(0, 0, 4, 4) = u4;
  out.tr.u.block(4, 4, 4, 4) = u4;
  out.parameters = {{"a", a}, {"b", b}, {"m", m}, {"m_trivial", mt}};
  return out;
}

}  // namespace

BlochModel make_builtin(const std::string& name, const std::map<std::string, double>& p) {
  BlochModel m;
  if (name == "kane_mele")
    m = kane_mele(p);
  else if (name == "bhz")
    m = bhz(p);
  else if (name == "qwz_pair")
    m = qwz_pair(p);
  else if (name == "atomic")
    m = atomic(p);
  else if (name == "strong_ti_3d")
    m = strong_ti_3d(p);
  else
    throw Error(ErrorKind::Validation, "unknown builtin model '" + name + "'");
  m.validate();
  return m;
}

std::vector<std::string> builtin_names() {
  return {"kane_mele", "bhz", "qwz_pair", "atomic", "strong_ti_3d"};
}

BlochModel make_random_trs_model(unsigned seed, int dim) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto random_matrix = [&](int n) {
    MatrixXcd m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = cplx(gauss(rng), gauss(rng));
    return m;
  };

  BlochModel m;
  m.name = "random_trs_" + std::to_string(seed);
  m.dim = dim;
  m.bands = 4;
  m.n_occupied = 2;
  m.lattice = MatrixXd::Identity(dim, dim);
  Matrix2cd sy = pauli(2);
  m.tr.u = kron(pauli(0), cplx(0.0, 1.0) * sy);

  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  double mass = 1.2 + 0.8 * std::abs(unif(rng));
  MatrixXcd t0 = random_matrix(4);
  t0 = 0.5 * (t0 + t0.adjoint()).eval();
  t0 += mass * kron(pauli(3), pauli(0));
  m.hoppings.push_back({{0, 0, 0}, t0});

  std::vector<std::array<int, 3>> deltas = {{1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {1, -1, 0}};
  if (dim == 3) deltas.push_back({0, 0, 1});
  for (const auto& d : deltas) {
    MatrixXcd t = 0.45 * random_matrix(4);
    m.hoppings.push_back({d, t});
    m.hoppings.push_back({{-d[0], -d[1], -d[2]}, t.adjoint().eval()});
  }
  m = symmetrize_trs(m);
  m.validate();
  return m;
}

}  // namespace z2kit
