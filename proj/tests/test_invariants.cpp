#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "builtins.hpp"
#include "invariants.hpp"

using namespace z2kit;

namespace {

// Haar-ish random unitary via QR of a Gaussian matrix.
MatrixXcd random_unitary(int n, std::mt19937& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = cplx(gauss(rng), gauss(rng));
  Eigen::HouseholderQR<MatrixXcd> qr(m);
  MatrixXcd q = qr.householderQ();
  MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) q.col(i) *= r(i, i) / std::abs(r(i, i));
  return q;
}

void gauge_rotate(BandFrame& bf, unsigned seed) {
  std::mt19937 rng(seed);
  for (auto& f : bf.frames) f = f * random_unitary(static_cast<int>(f.cols()), rng);
}

struct Z2Values {
  int nu;
  int ups_obs;
  int ups_wan;
};

Z2Values all_methods(const BlochModel& m, int n) {
  InvolutiveGrid grid = make_grid(m.dim, n);
  BandFrame bf = diagonalize(m, grid);
  SewingField sw = sewing_field(bf, m.tr, grid);
  Z2Values v{};
  v.nu = kane_mele(sw, trim_tree(grid)).nu;
  v.ups_obs = z2_obstruction(bf, sw, effective_bz(grid)).upsilon;
  if (m.dim == 2) {
    v.ups_wan = wannier_flow(PlaneView(bf, grid)).upsilon;
  } else {
    v.ups_wan = wannier_flow(PlaneView(bf, grid, 2, 0)).upsilon ^
                wannier_flow(PlaneView(bf, grid, 2, n / 2)).upsilon;
  }
  return v;
}

bool three_way_agree(const Z2Values& v) {
  return v.nu == (v.ups_obs ? -1 : 1) && v.nu == (v.ups_wan ? -1 : 1);
}

// Hopf-type projection p = (1 + r_hat . sigma)/2 for the degree-one map
// r(k) = (sin kx, sin ky, 1 + cos kx + cos ky) normalized; frames are the
// rank-1 eigenvectors of p.
MatrixXcd hopf_frame(int i, int j, int n) {
  double kx = 2.0 * kPi * i / n, ky = 2.0 * kPi * j / n;
  Vector3d r(std::sin(kx), std::sin(ky), 1.0 + std::cos(kx) + std::cos(ky));
  r.normalize();
  MatrixXcd p(2, 2);
  p << 1.0 + r(2), cplx(r(0), -r(1)), cplx(r(0), r(1)), 1.0 - r(2);
  p *= 0.5;
  // dominant column of the rank-1 projector, normalized
  int col = p.col(0).norm() >= p.col(1).norm() ? 0 : 1;
  return p.col(col) / p.col(col).norm();
}

}  // namespace

TEST_CASE("atomic limit: all methods trivial") {
  Z2Values v = all_methods(make_builtin("atomic"), 8);
  CHECK(v.nu == +1);
  CHECK(v.ups_obs == 0);
  CHECK(v.ups_wan == 0);
}

TEST_CASE("Kane-Mele phases by three-way cross-check") {
  // topological phase
  BlochModel topo = make_builtin(
      "kane_mele",
      {{"t", 1.0}, {"lambda_so", 0.06}, {"lambda_r", 0.05}, {"lambda_v", 0.1}});
  Z2Values vt = all_methods(topo, 24);
  CHECK(vt.nu == -1);
  CHECK(three_way_agree(vt));

  // trivial phase at large staggering
  BlochModel triv = make_builtin(
      "kane_mele",
      {{"t", 1.0}, {"lambda_so", 0.06}, {"lambda_r", 0.05}, {"lambda_v", 6.0}});
  Z2Values vv = all_methods(triv, 24);
  CHECK(vv.nu == +1);
  CHECK(three_way_agree(vv));
}

TEST_CASE("BHZ band inversion flips every method") {
  Z2Values inverted = all_methods(make_builtin("bhz", {{"m", 0.5}}), 16);
  CHECK(inverted.nu == -1);
  CHECK(three_way_agree(inverted));
  Z2Values trivial = all_methods(make_builtin("bhz", {{"m", -0.5}}), 16);
  CHECK(trivial.nu == +1);
  CHECK(three_way_agree(trivial));
}

TEST_CASE("gauge invariance: random frame rotations change nothing") {
  BlochModel m = make_builtin(
      "kane_mele",
      {{"t", 1.0}, {"lambda_so", 0.06}, {"lambda_r", 0.05}, {"lambda_v", 0.1}});
  InvolutiveGrid grid = make_grid(2, 16);
  BandFrame bf = diagonalize(m, grid);
  SewingField sw = sewing_field(bf, m.tr, grid);
  int nu0 = kane_mele(sw, trim_tree(grid)).nu;
  int ob0 = z2_obstruction(bf, sw, effective_bz(grid)).upsilon;
  int wa0 = wannier_flow(PlaneView(bf, grid)).upsilon;
  for (unsigned trial = 0; trial < 10; ++trial) {
    BandFrame rotated = bf;
    gauge_rotate(rotated, 1000 + trial);
    SewingField sw2 = sewing_field(rotated, m.tr, grid);
    CHECK(kane_mele(sw2, trim_tree(grid)).nu == nu0);
    CHECK(z2_obstruction(rotated, sw2, effective_bz(grid)).upsilon == ob0);
    CHECK(wannier_flow(PlaneView(rotated, grid)).upsilon == wa0);
  }
}

TEST_CASE("Chern numbers: constant projection, Hopf bundle, refinement") {
  // constant frames: zero flux everywhere
  MatrixXcd e1 = MatrixXcd::Zero(2, 1);
  e1(0, 0) = 1.0;
  CHECK(chern_number([&](int, int) { return e1; }, 8) == 0);

  // Hopf projection: |C| = 1, stable under refinement
  int c16 = chern_number([&](int i, int j) { return hopf_frame(i, j, 16); }, 16);
  int c8 = chern_number([&](int i, int j) { return hopf_frame(i, j, 8); }, 8);
  int c32 = chern_number([&](int i, int j) { return hopf_frame(i, j, 32); }, 32);
  CHECK(std::abs(c16) == 1);
  CHECK(c8 == c16);
  CHECK(c16 == c32);
}

TEST_CASE("TRS Chern cancellation and spin sectors") {
  InvolutiveGrid grid = make_grid(2, 16);
  // full occupied bundle of a TRS model has total Chern zero
  for (const char* name : {"kane_mele", "bhz", "qwz_pair"}) {
    BlochModel m = make_builtin(name);
    BandFrame bf = diagonalize(m, grid);
    CHECK(chern_number(PlaneView(bf, grid)) == 0);
  }
  // s_z-conserving Kane-Mele (lambda_r = 0): sector Chern numbers +-1
  BlochModel km = make_builtin(
      "kane_mele", {{"lambda_so", 0.06}, {"lambda_r", 0.0}, {"lambda_v", 0.1}});
  BandFrame bf = diagonalize(km, grid);
  MatrixXcd sz4 = MatrixXcd::Zero(4, 4);
  sz4.diagonal() << 1, -1, 1, -1;  // 1 x s_z in the (sublattice x spin) basis
  auto [cp, cm] = sector_chern_numbers(PlaneView(bf, grid), sz4);
  CHECK(cp + cm == 0);
  CHECK(std::abs(cp) == 1);

  // trivial phase: both sectors zero
  BlochModel kmt = make_builtin(
      "kane_mele", {{"lambda_so", 0.06}, {"lambda_r", 0.0}, {"lambda_v", 1.0}});
  BandFrame bft = diagonalize(kmt, grid);
  auto [tp, tm] = sector_chern_numbers(PlaneView(bft, grid), sz4);
  CHECK(tp == 0);
  CHECK(tm == 0);
}

TEST_CASE("wannier flow shapes") {
  InvolutiveGrid grid = make_grid(2, 16);
  // atomic limit: flat spectrum, zero crossings
  BandFrame flat = diagonalize(make_builtin("atomic"), grid);
  WannierSpectrum ws = wannier_flow(PlaneView(flat, grid));
  CHECK(ws.crossings == 0);
  CHECK(ws.upsilon == 0);
  for (const auto& sample : ws.theta)
    for (double th : sample) CHECK(std::abs(th) < 1e-9);

  // Kane-Mele topological: odd number of crossings
  BandFrame topo = diagonalize(
      make_builtin("kane_mele",
                   {{"lambda_so", 0.06}, {"lambda_r", 0.05}, {"lambda_v", 0.1}}),
      grid);
  WannierSpectrum wt = wannier_flow(PlaneView(topo, grid));
  CHECK(wt.crossings % 2 == 1);

  // BHZ trivial: even crossings
  BandFrame triv = diagonalize(make_builtin("bhz", {{"m", -0.5}}), grid);
  CHECK(wannier_flow(PlaneView(triv, grid)).crossings % 2 == 0);
}

TEST_CASE("grid refinement stabilizes each method") {
  std::vector<BlochModel> models = {
      make_builtin("kane_mele",
                   {{"lambda_so", 0.06}, {"lambda_r", 0.05}, {"lambda_v", 0.1}}),
      make_builtin("kane_mele",
                   {{"lambda_so", 0.06}, {"lambda_r", 0.05}, {"lambda_v", 1.0}}),
      make_builtin("bhz", {{"m", 0.5}}),
  };
  for (const BlochModel& m : models) {
    Z2Values a = all_methods(m, 16);
    Z2Values b = all_methods(m, 32);
    Z2Values c = all_methods(m, 64);
    CHECK(a.nu == b.nu);
    CHECK(b.nu == c.nu);
    CHECK(a.ups_obs == b.ups_obs);
    CHECK(b.ups_obs == c.ups_obs);
    CHECK(a.ups_wan == b.ups_wan);
    CHECK(b.ups_wan == c.ups_wan);
  }
}

TEST_CASE("three-way agreement on random gap-filtered TRS models") {
  int tested = 0;
  for (unsigned seed = 0; tested < 10 && seed < 100; ++seed) {
    BlochModel m = make_random_trs_model(7000 + seed);
    InvolutiveGrid grid = make_grid(2, 16);
    BandFrame bf;
    try {
      bf = diagonalize(m, grid);
    } catch (const Error&) {
      continue;
    }
    if (bf.gap < 0.05) continue;
    Z2Values v = all_methods(m, 16);
    CAPTURE(seed);
    CHECK(three_way_agree(v));
    ++tested;
  }
  CHECK(tested == 10);
}

TEST_CASE("3d strong invariant via the plane structure") {
  BlochModel ti = make_builtin("strong_ti_3d");  // m = 2: strong phase
  Z2Values v = all_methods(ti, 8);
  CHECK(v.nu == -1);
  CHECK(three_way_agree(v));

  BlochModel triv = make_builtin("strong_ti_3d", {{"m", -2.0}});
  Z2Values vt = all_methods(triv, 8);
  CHECK(vt.nu == +1);
  CHECK(three_way_agree(vt));

  // six invariant-plane values are reported
  InvolutiveGrid grid = make_grid(3, 8);
  BandFrame bf = diagonalize(ti, grid);
  SewingField sw = sewing_field(bf, ti.tr, grid);
  ObstructionResult ob = z2_obstruction(bf, sw, effective_bz(grid));
  CHECK(ob.plane_values.size() == 6);
}

TEST_CASE("equivalence report assembles methods and verdict") {
  Z2Report rep = equivalence_report(
      make_builtin("kane_mele",
                   {{"lambda_so", 0.06}, {"lambda_r", 0.05}, {"lambda_v", 0.1}}),
      16);
  REQUIRE(rep.nu_kane_mele.has_value());
  REQUIRE(rep.upsilon_obstruction.has_value());
  REQUIRE(rep.upsilon_wannier.has_value());
  REQUIRE(rep.chern_total.has_value());
  CHECK(*rep.nu_kane_mele == -1);
  CHECK(*rep.upsilon_obstruction == 1);
  CHECK(*rep.upsilon_wannier == 1);
  CHECK(*rep.chern_total == 0);
  CHECK(rep.agreement);
  CHECK(rep.diagnostics.gap > 0);
  CHECK(rep.diagnostics.sewing_trim_skew < 1e-10);

  Z2Report ra = equivalence_report(make_builtin("atomic"), 8);
  CHECK(*ra.nu_kane_mele == +1);
  CHECK(*ra.upsilon_obstruction == 0);
  CHECK(*ra.upsilon_wannier == 0);
  CHECK(*ra.chern_total == 0);
  CHECK(ra.agreement);
}

TEST_CASE("wannier reference-line robustness") {
  BlochModel m = make_builtin(
      "kane_mele", {{"lambda_so", 0.06}, {"lambda_r", 0.05}, {"lambda_v", 0.1}});
  InvolutiveGrid grid = make_grid(2, 16);
  BandFrame bf = diagonalize(m, grid);
  WannierSpectrum base = wannier_flow(PlaneView(bf, grid));
  CHECK(base.retries == 0);
  // the spectrum is reported over the half cycle with sorted rows
  CHECK(base.k_perp.size() == 9);
  CHECK(base.k_perp.front() == 0.0);
  CHECK(base.k_perp.back() == doctest::Approx(kPi));
  for (const auto& row : base.theta) CHECK(std::is_sorted(row.begin(), row.end()));
}
