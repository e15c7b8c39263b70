#include "model.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>

namespace z2kit {

double TimeReversalOp::unitarity_residual() const {
  long n = u.rows();
  return (u * u.adjoint() - MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
}

double TimeReversalOp::skewness_residual() const {
  return (u + u.transpose()).cwiseAbs().maxCoeff();
}

void TimeReversalOp::validate() const {
  if (u.rows() != u.cols() || u.rows() % 2 != 0)
    throw Error(ErrorKind::Validation, "time reversal unitary must be square of even size");
  if (unitarity_residual() >= 1e-12)
    throw Error(ErrorKind::Validation, "time reversal operator: U is not unitary");
  if (skewness_residual() >= 1e-12)
    throw Error(ErrorKind::Validation,
                "time reversal operator: U^T != -U, so Theta^2 != -1");
}

MatrixXcd TimeReversalOp::real_structure_matrix() const {
  long n = u.rows();
  MatrixXcd j = MatrixXcd::Zero(2 * n, 2 * n);
  j.block(0, n, n, n) = -u;  // Theta^* = -Theta
  j.block(n, 0, n, n) = u;
  return j;
}

MatrixXcd BlochModel::bloch_at(const Vector3d& k) const {
  MatrixXcd h = MatrixXcd::Zero(bands, bands);
  for (const Hopping& hop : hoppings) {
    double phase = 0.0;
    for (int a = 0; a < dim; ++a) phase += k(a) * hop.delta[static_cast<size_t>(a)];
    h += hop.t * std::exp(cplx(0.0, phase));
  }
  return h;
}

void BlochModel::validate() const {
  if (bands <= 0 || bands % 2 != 0)
    throw Error(ErrorKind::Validation, "bands must be a positive even number");
  if (n_occupied <= 0 || n_occupied % 2 != 0 || n_occupied > bands)
    throw Error(ErrorKind::Validation, "n_occupied must be even and <= bands");
  if (dim < 1 || dim > 3) throw Error(ErrorKind::Validation, "dim must be 1, 2 or 3");
  if (tr.u.rows() != bands)
    throw Error(ErrorKind::Validation, "time reversal unitary size must match bands");
  tr.validate();
  // Hermiticity of the family: T_{-delta} = T_delta^dag.
  for (const Hopping& hop : hoppings) {
    std::array<int, 3> neg{-hop.delta[0], -hop.delta[1], -hop.delta[2]};
    MatrixXcd partner = MatrixXcd::Zero(bands, bands);
    for (const Hopping& other : hoppings)
      if (other.delta == neg) partner += other.t;
    if ((partner - hop.t.adjoint()).cwiseAbs().maxCoeff() >= 1e-12)
      throw Error(ErrorKind::Validation,
                  "hopping family is not Hermitian: T_{-delta} != T_delta^dag at delta=(" +
                      std::to_string(hop.delta[0]) + "," + std::to_string(hop.delta[1]) + "," +
                      std::to_string(hop.delta[2]) + ")");
  }
}

double trs_residual_at(const BlochModel& model, const Vector3d& k) {
  MatrixXcd lhs = model.tr.u * model.bloch_at(k).conjugate() * model.tr.u.adjoint();
  return spectral_norm(lhs - model.bloch_at(-k));
}

double validate_trs(const BlochModel& model, const InvolutiveGrid& grid) {
  if (grid.dim() != model.dim)
    throw Error(ErrorKind::BadArgument, "grid dimension does not match model");
  double worst = 0.0;
  for (long i = 0; i < grid.num_points(); ++i)
    worst = std::max(worst, trs_residual_at(model, grid.k(i)));
  return worst;
}

void require_trs(const BlochModel& model, const InvolutiveGrid& grid) {
  double worst = 0.0;
  long at = 0;
  for (long i = 0; i < grid.num_points(); ++i) {
    double r = trs_residual_at(model, grid.k(i));
    if (r > worst) {
      worst = r;
      at = i;
    }
  }
  if (worst >= 1e-10) {
    Vector3d k = grid.k(at);
    throw Error(ErrorKind::Validation,
                "time reversal symmetry violated: residual " + std::to_string(worst) +
                    " at k = (" + std::to_string(k(0)) + ", " + std::to_string(k(1)) + ", " +
                    std::to_string(k(2)) + ")");
  }
}

static void fix_column_phase(Eigen::Ref<VectorXcd> col) {
  long arg = 0;
  double best = -1.0;
  for (long i = 0; i < col.size(); ++i) {
    double v = std::abs(col(i));
    if (v > best + 1e-14) {
      best = v;
      arg = i;
    }
  }
  cplx z = col(arg);
  if (std::abs(z) > 0) col *= std::conj(z) / std::abs(z);
}

static int worker_count(long jobs) {
  const char* env = std::getenv("Z2KIT_THREADS");
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  long cap = hw;
  if (env) {
    long v = std::atol(env);
    if (v >= 1) cap = std::min<long>(cap, v);
  } else {
    cap = 1;  // deterministic default; opt in via Z2KIT_THREADS
  }
  return static_cast<int>(std::min<long>(cap, jobs));
}

BandFrame diagonalize(const BlochModel& model, const InvolutiveGrid& grid) {
  if (grid.dim() != model.dim)
    throw Error(ErrorKind::BadArgument, "grid dimension does not match model");
  const long np = grid.num_points();
  BandFrame bf;
  bf.grid = std::make_shared<InvolutiveGrid>(grid);
  bf.n_occupied = model.n_occupied;
  bf.energies.assign(static_cast<size_t>(np), VectorXd());
  bf.frames.assign(static_cast<size_t>(np), MatrixXcd());

  auto solve_range = [&](long lo, long hi) {
    for (long i = lo; i < hi; ++i) {
      Eigen::SelfAdjointEigenSolver<MatrixXcd> es(model.bloch_at(grid.k(i)));
      bf.energies[static_cast<size_t>(i)] = es.eigenvalues();
      MatrixXcd f = es.eigenvectors().leftCols(model.n_occupied);
      for (long c = 0; c < f.cols(); ++c) fix_column_phase(f.col(c));
      bf.frames[static_cast<size_t>(i)] = f;
    }
  };

  int workers = worker_count(np);
  if (workers <= 1) {
    solve_range(0, np);
  } else {
    std::vector<std::thread> pool;
    long chunk = (np + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      long lo = w * chunk, hi = std::min(np, lo + chunk);
      if (lo < hi) pool.emplace_back(solve_range, lo, hi);
    }
    for (auto& t : pool) t.join();
  }

  // Spectral gap above the occupied bands.
  bf.gap = std::numeric_limits<double>::infinity();
  for (long i = 0; i < np; ++i) {
    const VectorXd& e = bf.energies[static_cast<size_t>(i)];
    double g = e(model.n_occupied) - e(model.n_occupied - 1);
    if (g < bf.gap) {
      bf.gap = g;
      bf.gap_argmin = i;
    }
  }
  if (bf.gap < 1e-8) {
    Vector3d k = grid.k(bf.gap_argmin);
    throw Error(ErrorKind::GapClosing,
                "metallic/gap-closing spectrum: gap " + std::to_string(bf.gap) + " at k = (" +
                    std::to_string(k(0)) + ", " + std::to_string(k(1)) + ", " +
                    std::to_string(k(2)) + ")");
  }

  // Kramers structure at TRIM: eigenvalues pair, and the occupied frame is
  // re-gauged so each pair is (phi, Theta phi).
  double scale = 0.0;
  for (long i : grid.trim())
    scale = std::max(scale, bf.energies[static_cast<size_t>(i)].cwiseAbs().maxCoeff());
  if (scale == 0.0) scale = 1.0;
  for (long i : grid.trim()) {
    const VectorXd& e = bf.energies[static_cast<size_t>(i)];
    for (long b = 0; b + 1 < model.bands; b += 2) {
      double split = e(b + 1) - e(b);
      bf.kramers_residual = std::max(bf.kramers_residual, split / scale);
      if (split > 1e-8 * scale)
        throw Error(ErrorKind::Validation,
                    "Kramers degeneracy violated at a TRIM: eigenvalue splitting " +
                        std::to_string(split));
    }
    MatrixXcd& f = bf.frames[static_cast<size_t>(i)];
    for (long p = 0; p + 1 < f.cols(); p += 2) {
      // Pairs are isolated when the cluster boundary is clean; re-gauge then.
      bool isolated = (p + 2 >= model.bands) || (e(p + 2) - e(p + 1) > 1e-8 * scale);
      if (isolated) f.col(p + 1) = model.tr.apply(f.col(p));
    }
  }
  return bf;
}

EffectiveHamiltonian effective_hamiltonian(const BlochModel& model, const Vector3d& k) {
  const long n = model.bands;
  EffectiveHamiltonian eff;
  eff.k = k;
  eff.at_trim = true;
  for (int a = 0; a < model.dim; ++a) {
    double r = std::abs(std::remainder(k(a), kPi));
    if (r > 1e-9) eff.at_trim = false;
  }
  MatrixXcd h = model.bloch_at(k);
  MatrixXcd theta_h = model.tr.u * h.conjugate() * model.tr.u.adjoint();
  eff.h = MatrixXcd::Zero(2 * n, 2 * n);
  eff.h.block(0, n, n, n) = theta_h;
  eff.h.block(n, 0, n, n) = h;
  eff.jmat = model.tr.real_structure_matrix();
  return eff;
}

double real_structure_anticommutator_residual(const EffectiveHamiltonian& eff) {
  // (J H~ + H~ J) v = (jmat conj(H~) + H~ jmat) conj(v).
  return (eff.jmat * eff.h.conjugate() + eff.h * eff.jmat).cwiseAbs().maxCoeff();
}

int mod2_kernel(const EffectiveHamiltonian& eff, double tol) {
  Eigen::JacobiSVD<MatrixXcd> svd(eff.h);
  VectorXd sv = svd.singularValues();
  int count = 0;
  for (long i = 0; i < sv.size(); ++i) {
    double s = sv(i);
    if (s < tol) {
      ++count;
    } else if (s < 10.0 * tol) {
      throw Error(ErrorKind::Numeric, "ambiguous kernel: singular value " + std::to_string(s) +
                                           " inside [tol, 10 tol)");
    }
  }
  // One Majorana zero mode is a band-touching cone together with its mirror
  // at -k. Each cone apex is a 2-dim kernel of H, doubled by the block
  // structure of H~; at a TRIM the inversion is additionally Kramers-doubled
  // (e1 = e2 there), so a single mode shows up as an 8-dim kernel.
  int divisor = eff.at_trim ? 8 : 4;
  if (count % divisor != 0)
    throw Error(ErrorKind::Numeric,
                "ambiguous kernel: count " + std::to_string(count) +
                    " is not a multiple of " + std::to_string(divisor));
  return (count / divisor) % 2;
}

BlochModel symmetrize_trs(const BlochModel& model) {
  BlochModel out = model;
  // H(k) -> (H(k) + U H(-k)* U^dag)/2 termwise: T_delta -> (T_delta + U conj(T_delta) U^dag)/2.
  for (Hopping& hop : out.hoppings)
    hop.t = 0.5 * (hop.t + model.tr.u * hop.t.conjugate() * model.tr.u.adjoint());
  return out;
}

}  // namespace z2kit
