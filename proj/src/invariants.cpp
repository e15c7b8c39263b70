#include "invariants.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "gauge.hpp"

namespace z2kit {

PlaneView::PlaneView(const BandFrame& frames, const InvolutiveGrid& grid)
    : frames_(&frames), grid_(&grid), n_(grid.n()), axis_i_(0), axis_j_(1) {
  if (grid.dim() != 2) throw Error(ErrorKind::BadArgument, "PlaneView: grid must be 2d");
}

PlaneView::PlaneView(const BandFrame& frames, const InvolutiveGrid& grid, int normal_axis,
                     int coord)
    : frames_(&frames), grid_(&grid), n_(grid.n()) {
  if (grid.dim() != 3) throw Error(ErrorKind::BadArgument, "PlaneView: grid must be 3d");
  if (coord != 0 && coord != grid.n() / 2)
    throw Error(ErrorKind::BadArgument, "PlaneView: plane must be tau-invariant");
  axis_i_ = (normal_axis + 1) % 3;
  axis_j_ = (normal_axis + 2) % 3;
  base_[static_cast<size_t>(normal_axis)] = coord;
}

long PlaneView::global_index(int i, int j) const {
  std::array<int, 3> c = base_;
  c[static_cast<size_t>(axis_i_)] = ((i % n_) + n_) % n_;
  c[static_cast<size_t>(axis_j_)] = ((j % n_) + n_) % n_;
  return grid_->index(c);
}

const MatrixXcd& PlaneView::frame(int i, int j) const {
  return frames_->frames[static_cast<size_t>(global_index(i, j))];
}

// --- Kane-Mele -------------------------------------------------------------

namespace {

std::vector<long> circle_indices(const InvolutiveGrid& grid, int axis,
                                 const std::array<int, 3>& base) {
  std::vector<long> idx(static_cast<size_t>(grid.n()));
  std::array<int, 3> c = base;
  for (int v = 0; v < grid.n(); ++v) {
    c[static_cast<size_t>(axis)] = v;
    idx[static_cast<size_t>(v)] = grid.index(c);
  }
  return idx;
}

std::string format_k(const InvolutiveGrid& grid, long idx) {
  Vector3d k = grid.k(idx);
  std::ostringstream os;
  os.precision(3);
  os << "(" << k(0);
  if (grid.dim() > 1) os << "," << k(1);
  if (grid.dim() > 2) os << "," << k(2);
  os << ")";
  return os.str();
}

// The gauge-invariant +-1 attached to a tau-invariant circle: the ratio of
// TRIM Pfaffians against the square-root branch of det w transported along the
// half circle, corrected by the full-circle Berry phase.
int circle_edge_sign(const SewingField& sewing, const TrimPath& path,
                     std::vector<std::string>& log) {
  const InvolutiveGrid& grid = *sewing.grid;
  const BandFrame& bf = *sewing.frames;
  const int n = grid.n();
  std::vector<long> circle = circle_indices(grid, path.axis, path.base);

  auto getter = [&](int j) -> const MatrixXcd& {
    return bf.frames[static_cast<size_t>(circle[static_cast<size_t>(j)])];
  };
  std::vector<MatrixXcd> f = smooth_cycle_gauge(getter, n);

  // Sewing matrices in the circle gauge; tau acts as j -> n - j on the cycle.
  std::vector<MatrixXcd> w(static_cast<size_t>(n / 2) + 1);
  for (int j = 0; j <= n / 2; ++j)
    w[static_cast<size_t>(j)] =
        sewing_matrix(f[static_cast<size_t>((n - j) % n)], f[static_cast<size_t>(j)],
                      sewing.tr_u);

  cplx pf_a = pfaffian(w.front());
  cplx pf_b = pfaffian(w.back());
  if (std::abs(pf_a) < 1e-6 || std::abs(pf_b) < 1e-6)
    throw Error(ErrorKind::Numeric, "accidental degeneracy: |pf[w]| < 1e-6 at a TRIM");

  double dtheta = 0.0;
  double prev = std::arg(w.front().determinant());
  for (int j = 1; j <= n / 2; ++j) {
    double cur = std::arg(w[static_cast<size_t>(j)].determinant());
    double step = wrap_angle(cur - prev);
    if (std::abs(step) > kPi / 2.0)
      throw Error(ErrorKind::CoarseGrid,
                  "grid too coarse: branch-tracking step |d arg det w| = " +
                      std::to_string(std::abs(step)) + " > pi/2");
    dtheta += step;
    prev = cur;
  }

  double loop_berry = 0.0;  // full-circle sum of link phases in this gauge
  for (int j = 0; j < n; ++j) {
    MatrixXcd link = f[static_cast<size_t>(j)].adjoint() * f[static_cast<size_t>((j + 1) % n)];
    loop_berry += std::arg(link.determinant());
  }

  cplx c = (pf_b / pf_a) * std::exp(cplx(0.0, 0.5 * (loop_berry - dtheta)));
  if (std::abs(std::abs(c.real()) - 1.0) > 0.2 || std::abs(c.imag()) > 0.2)
    throw Error(ErrorKind::CoarseGrid,
                "grid too coarse: circle sign did not quantize (" + std::to_string(c.real()) +
                    " + " + std::to_string(c.imag()) + "i)");
  int sign = c.real() > 0 ? +1 : -1;

  std::ostringstream os;
  os << "edge " << format_k(grid, path.trim_from) << "->" << format_k(grid, path.trim_to)
     << ": sign " << (sign > 0 ? "+1" : "-1") << ", dtheta " << dtheta << ", loop "
     << loop_berry;
  log.push_back(os.str());
  return sign;
}

}  // namespace

KaneMeleResult kane_mele(const SewingField& sewing, const std::vector<TrimPath>& tree) {
  const InvolutiveGrid& grid = *sewing.grid;
  if (grid.dim() < 2)
    throw Error(ErrorKind::BadArgument, "kane_mele needs a 2d or 3d grid");
  KaneMeleResult result;

  std::map<long, int> delta;  // TRIM -> pf/sqrt(det) sign, branch propagated
  if (tree.empty()) throw Error(ErrorKind::BadArgument, "kane_mele: empty trim tree");
  delta[tree.front().trim_from] = +1;

  std::vector<bool> done(tree.size(), false);
  size_t remaining = tree.size();
  while (remaining > 0) {
    bool progress = false;
    for (size_t e = 0; e < tree.size(); ++e) {
      if (done[e]) continue;
      const TrimPath& path = tree[e];
      auto from = delta.find(path.trim_from);
      auto to = delta.find(path.trim_to);
      if (from == delta.end() && to == delta.end()) continue;
      int sign = circle_edge_sign(sewing, path, result.branch_log);
      if (from != delta.end())
        delta[path.trim_to] = from->second * sign;
      else
        delta[path.trim_from] = to->second * sign;
      done[e] = true;
      --remaining;
      progress = true;
    }
    if (!progress)
      throw Error(ErrorKind::BadArgument, "kane_mele: trim tree is not connected");
  }
  if (delta.size() != grid.trim().size())
    throw Error(ErrorKind::BadArgument, "kane_mele: tree does not span the TRIM");

  int nu = 1;
  for (const auto& [t, d] : delta) {
    (void)t;
    nu *= d;
  }
  result.nu = nu;
  return result;
}

// --- Plaquette calculus ------------------------------------------------------

double plaquette_flux(const std::function<MatrixXcd(int, int)>& frame, int i, int j) {
  MatrixXcd f00 = frame(i, j), f10 = frame(i + 1, j), f11 = frame(i + 1, j + 1),
            f01 = frame(i, j + 1);
  cplx z = (f00.adjoint() * f10).determinant() * (f10.adjoint() * f11).determinant() *
           (f11.adjoint() * f01).determinant() * (f01.adjoint() * f00).determinant();
  return std::arg(z);
}

int chern_number(const std::function<MatrixXcd(int, int)>& frame, int n) {
  double total = 0.0;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      double fp = plaquette_flux(frame, i, j);
      if (std::abs(fp) > 0.995 * kPi)
        throw Error(ErrorKind::CoarseGrid,
                    "grid too coarse: plaquette flux " + std::to_string(fp) + " near pi");
      total += fp;
    }
  double est = total / (2.0 * kPi);
  long c = std::lround(est);
  if (std::abs(est - static_cast<double>(c)) >= 0.1)
    throw Error(ErrorKind::CoarseGrid,
                "grid too coarse: Chern estimate " + std::to_string(est) +
                    " is not near an integer");
  return static_cast<int>(c);
}

int chern_number(const PlaneView& view) {
  return chern_number([&](int i, int j) { return view.frame(i, j); }, view.n());
}

// --- Obstruction -------------------------------------------------------------

namespace {

// 2d core: boundary rows at j = 0 (traversed +i) and j = n/2 (traversed -i).
ObstructionResult obstruction_2d(const PlaneView& view, const MatrixXcd& tr_u) {
  const int n = view.n();
  ObstructionResult res;

  double area = 0.0;
  auto getter = [&](int i, int j) { return view.frame(i, j); };
  for (int j = 0; j < n / 2; ++j)
    for (int i = 0; i < n; ++i) {
      double fp = plaquette_flux(getter, i, j);
      res.max_plaquette_flux = std::max(res.max_plaquette_flux, std::abs(fp));
      if (std::abs(fp) > 0.995 * kPi)
        throw Error(ErrorKind::CoarseGrid,
                    "grid too coarse: plaquette flux " + std::to_string(fp) + " near pi");
      area += fp;
    }

  double boundary = 0.0;
  for (int row : {0, n / 2}) {
    auto row_getter = [&](int i) -> const MatrixXcd& { return view.frame(i, row); };
    std::vector<MatrixXcd> f = tr_constrained_cycle_gauge(row_getter, n, tr_u);
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      MatrixXcd link =
          f[static_cast<size_t>(i)].adjoint() * f[static_cast<size_t>((i + 1) % n)];
      s += std::arg(link.determinant());
    }
    boundary += (row == 0) ? s : -s;
  }

  res.stokes_value = (boundary - area) / (2.0 * kPi);
  long v = std::lround(res.stokes_value);
  if (std::abs(res.stokes_value - static_cast<double>(v)) > 1e-4)
    throw Error(ErrorKind::Numeric, "obstruction sum failed to quantize: " +
                                        std::to_string(res.stokes_value));
  res.upsilon = static_cast<int>(((v % 2) + 2) % 2);
  return res;
}

}  // namespace

ObstructionResult z2_obstruction(const BandFrame& frames, const SewingField& sewing,
                                 const EffectiveBZ& ebz) {
  const InvolutiveGrid& grid = *frames.grid;
  if (ebz.dim == 2) {
    PlaneView view(frames, grid);
    return obstruction_2d(view, sewing.tr_u);
  }
  // d = 3: compute the six invariant-plane values; the strong invariant is the
  // product of the k_z = 0 and k_z = pi values.
  ObstructionResult out;
  static const char* axis_name[3] = {"kx", "ky", "kz"};
  int strong = 0;
  for (const auto& plane : ebz.planes) {
    PlaneView view(frames, grid, plane.normal_axis, plane.coord);
    ObstructionResult r = obstruction_2d(view, sewing.tr_u);
    out.max_plaquette_flux = std::max(out.max_plaquette_flux, r.max_plaquette_flux);
    std::string key = std::string(axis_name[plane.normal_axis]) +
                      (plane.coord == 0 ? "=0" : "=pi");
    out.plane_values.emplace_back(key, r.upsilon);
    if (plane.normal_axis == 2) strong ^= r.upsilon;
  }
  out.upsilon = strong;
  return out;
}

// --- Wannier flow ------------------------------------------------------------

namespace {

std::vector<double> wilson_phases(const PlaneView& view, int j) {
  const int n = view.n();
  long n_occ = view.frame(0, j).cols();
  MatrixXcd w = MatrixXcd::Identity(n_occ, n_occ);
  for (int i = 0; i < n; ++i)
    w = w * unitarize(view.frame(i, j).adjoint() * view.frame(i + 1, j));
  Eigen::ComplexEigenSolver<MatrixXcd> es(w, /*computeEigenvectors=*/false);
  std::vector<double> phases;
  for (long b = 0; b < n_occ; ++b) {
    cplx lambda = es.eigenvalues()(b);
    if (std::abs(std::abs(lambda) - 1.0) > 1e-8)
      throw Error(ErrorKind::Numeric, "Wilson loop eigenvalue off the unit circle");
    phases.push_back(std::arg(lambda));
  }
  std::sort(phases.begin(), phases.end());
  return phases;
}

// Count reference-line crossings between two consecutive sorted spectra using
// the best cyclic matching on the circle.
int count_crossings(const std::vector<double>& old_phases,
                    const std::vector<double>& new_phases, double theta_ref) {
  const size_t n = old_phases.size();
  size_t best_shift = 0;
  double best_cost = std::numeric_limits<double>::infinity();
  for (size_t s = 0; s < n; ++s) {
    double cost = 0.0;
    for (size_t i = 0; i < n; ++i) {
      double d = wrap_angle(new_phases[(i + s) % n] - old_phases[i]);
      cost += d * d;
    }
    if (cost < best_cost) {
      best_cost = cost;
      best_shift = s;
    }
  }
  int crossings = 0;
  for (size_t i = 0; i < n; ++i) {
    double a = wrap_angle(old_phases[i] - theta_ref);
    double move = wrap_angle(new_phases[(i + best_shift) % n] - old_phases[i]);
    double b = a + move;
    if ((a > 0 && b < 0) || (a < 0 && b > 0)) ++crossings;
  }
  return crossings;
}

}  // namespace

WannierSpectrum wannier_flow(const PlaneView& view) {
  const int n = view.n();
  WannierSpectrum ws;
  for (int j = 0; j <= n / 2; ++j) {
    ws.k_perp.push_back(2.0 * kPi * j / n);
    ws.theta.push_back(wilson_phases(view, j));
  }

  const double collision_tol = 1e-6;
  for (int attempt = 0;; ++attempt) {
    double theta_ref = kPi - 0.37 * attempt;
    bool collision = false;
    for (const auto& sample : ws.theta)
      for (double th : sample)
        if (std::abs(wrap_angle(th - theta_ref)) < collision_tol) collision = true;
    if (collision) {
      ws.log.push_back("reference line hit an eigenphase; shifted to " +
                       std::to_string(theta_ref - 0.37));
      if (attempt >= 5)
        throw Error(ErrorKind::Numeric,
                    "wannier_flow: no collision-free reference line after 5 retries");
      continue;
    }
    ws.theta_ref = theta_ref;
    ws.retries = attempt;
    ws.crossings = 0;
    for (size_t m = 0; m + 1 < ws.theta.size(); ++m)
      ws.crossings += count_crossings(ws.theta[m], ws.theta[m + 1], theta_ref);
    ws.upsilon = ws.crossings % 2;
    return ws;
  }
}

WannierSpectrum wannier_flow(const BandFrame& frames, const InvolutiveGrid& grid) {
  if (grid.dim() != 2)
    throw Error(ErrorKind::BadArgument,
                "wannier_flow on a 3d model runs per tau-invariant plane");
  return wannier_flow(PlaneView(frames, grid));
}

// --- Sector Chern ------------------------------------------------------------

std::pair<int, int> sector_chern_numbers(const PlaneView& view, const MatrixXcd& op) {
  const int n = view.n();
  long n_occ = view.frame(0, 0).cols();
  long half = n_occ / 2;
  std::vector<MatrixXcd> plus(static_cast<size_t>(n) * n), minus(static_cast<size_t>(n) * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const MatrixXcd& f = view.frame(i, j);
      Eigen::SelfAdjointEigenSolver<MatrixXcd> es(f.adjoint() * op * f);
      if (es.eigenvalues()(half) - es.eigenvalues()(half - 1) < 0.5)
        throw Error(ErrorKind::Validation,
                    "sector_chern_numbers: operator is not conserved on the occupied space");
      minus[static_cast<size_t>(j) * n + i] = f * es.eigenvectors().leftCols(half);
      plus[static_cast<size_t>(j) * n + i] = f * es.eigenvectors().rightCols(half);
    }
  auto getter_of = [&](std::vector<MatrixXcd>& store) {
    return [&store, n](int i, int j) {
      int ii = ((i % n) + n) % n, jj = ((j % n) + n) % n;
      return store[static_cast<size_t>(jj) * n + ii];
    };
  };
  return {chern_number(getter_of(plus), n), chern_number(getter_of(minus), n)};
}

// --- Equivalence report -------------------------------------------------------

Z2Report equivalence_report(const BlochModel& model, int grid_n, unsigned methods) {
  if (model.dim < 2)
    throw Error(ErrorKind::Validation, "invariant methods need a 2d or 3d model");
  InvolutiveGrid grid = make_grid(model.dim, grid_n);

  Z2Report rep;
  rep.model_name = model.name;
  rep.parameters = model.parameters;
  rep.dim = model.dim;
  rep.grid_n = grid_n;

  model.validate();
  require_trs(model, grid);
  rep.diagnostics.trs_residual = validate_trs(model, grid);

  BandFrame bf = diagonalize(model, grid);
  rep.diagnostics.gap = bf.gap;
  rep.diagnostics.kramers_residual = bf.kramers_residual;

  SewingField sw = sewing_field(bf, model.tr, grid);
  rep.diagnostics.sewing_unitarity = sw.max_unitarity_residual;
  rep.diagnostics.sewing_law = sw.max_law_residual;
  rep.diagnostics.sewing_trim_skew = sw.max_trim_skew_residual;

  if (methods & kMethodKaneMele) {
    KaneMeleResult km = kane_mele(sw, trim_tree(grid));
    rep.nu_kane_mele = km.nu;
    rep.diagnostics.branch_log = km.branch_log;
  }
  if (methods & kMethodObstruction) {
    ObstructionResult ob = z2_obstruction(bf, sw, effective_bz(grid));
    rep.upsilon_obstruction = ob.upsilon;
    rep.diagnostics.obstruction_stokes = ob.stokes_value;
    rep.diagnostics.max_plaquette_flux = ob.max_plaquette_flux;
    rep.diagnostics.plane_values = ob.plane_values;
  }
  if (methods & kMethodWannier) {
    if (model.dim == 2) {
      WannierSpectrum ws = wannier_flow(PlaneView(bf, grid));
      rep.upsilon_wannier = ws.upsilon;
      rep.diagnostics.wannier_crossings = ws.crossings;
      rep.diagnostics.wannier_retries = ws.retries;
    } else {
      int strong = 0;
      for (int coord : {0, grid_n / 2}) {
        WannierSpectrum ws = wannier_flow(PlaneView(bf, grid, 2, coord));
        strong ^= ws.upsilon;
        rep.diagnostics.wannier_crossings += ws.crossings;
        rep.diagnostics.wannier_retries += ws.retries;
      }
      rep.upsilon_wannier = strong;
    }
  }
  if (methods & kMethodChern) {
    PlaneView view = model.dim == 2 ? PlaneView(bf, grid) : PlaneView(bf, grid, 2, 0);
    rep.chern_total = chern_number(view);
  }

  // Agreement across whatever was computed; nu = (-1)^upsilon.
  std::vector<int> nus;
  if (rep.nu_kane_mele) nus.push_back(*rep.nu_kane_mele);
  if (rep.upsilon_obstruction) nus.push_back(*rep.upsilon_obstruction ? -1 : +1);
  if (rep.upsilon_wannier) nus.push_back(*rep.upsilon_wannier ? -1 : +1);
  rep.agreement = true;
  if (!nus.empty())
    for (int v : nus)
      if (v != nus.front()) rep.agreement = false;
  return rep;
}

}  // namespace z2kit
