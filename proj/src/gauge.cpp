#include "gauge.hpp"

#include <Eigen/Eigenvalues>

namespace z2kit {

MatrixXcd standard_skew_form(long n) {
  MatrixXcd s = MatrixXcd::Zero(n, n);
  for (long i = 0; i + 1 < n; i += 2) {
    s(i, i + 1) = 1.0;
    s(i + 1, i) = -1.0;
  }
  return s;
}

MatrixXcd takagi_skew_unitary(const MatrixXcd& w) {
  const long n = w.rows();
  if (n % 2 != 0)
    throw Error(ErrorKind::BadArgument, "takagi_skew_unitary: size must be even");
  double unit_res = (w.adjoint() * w - MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
  double skew_res = (w + w.transpose()).cwiseAbs().maxCoeff();
  if (unit_res > 1e-6 || skew_res > 1e-6)
    throw Error(ErrorKind::Numeric, "takagi_skew_unitary: matrix is not skew-unitary");

  // psi(x) = w conj(x) is antilinear with psi^2 = -1; Gram-Schmidt in
  // quaternionic pairs (psi a, a).
  std::vector<VectorXcd> cols;
  auto project_out = [&](VectorXcd v) {
    for (const VectorXcd& c : cols) v -= c * (c.adjoint() * v)(0);
    return v;
  };
  long pairs_needed = n / 2;
  for (long cand = 0; cand < n && static_cast<long>(cols.size()) < n; ++cand) {
    VectorXcd a = project_out(VectorXcd::Unit(n, cand));
    if (a.norm() < 0.3) continue;  // nearly dependent seed, try the next one
    a.normalize();
    VectorXcd b = project_out(w * a.conjugate());
    b -= a * (a.adjoint() * b)(0);
    if (b.norm() < 0.3)
      throw Error(ErrorKind::Numeric, "takagi_skew_unitary: degenerate pair construction");
    b.normalize();
    cols.push_back(b);  // psi(a) first: the pair block becomes [[0,1],[-1,0]]
    cols.push_back(a);
  }
  if (static_cast<long>(cols.size()) != n)
    throw Error(ErrorKind::Numeric, "takagi_skew_unitary: incomplete basis");
  (void)pairs_needed;

  MatrixXcd v(n, n);
  for (long i = 0; i < n; ++i) v.col(i) = cols[static_cast<size_t>(i)];
  double res = (v.adjoint() * w * v.conjugate() - standard_skew_form(n)).cwiseAbs().maxCoeff();
  if (res > 1e-8)
    throw Error(ErrorKind::Numeric,
                "takagi_skew_unitary: factorization residual " + std::to_string(res));
  return v;
}

// Principal fractional power of a unitary matrix through its Schur form.
static MatrixXcd unitary_fractional_power(const MatrixXcd& w, double exponent) {
  Eigen::ComplexSchur<MatrixXcd> schur(w);
  const MatrixXcd& q = schur.matrixU();
  VectorXcd d = schur.matrixT().diagonal();
  VectorXcd frac(d.size());
  for (long i = 0; i < d.size(); ++i) {
    double phi = std::arg(d(i));
    frac(i) = std::exp(cplx(0.0, exponent * phi));
  }
  return q * frac.asDiagonal() * q.adjoint();
}

std::vector<MatrixXcd> smooth_cycle_gauge(const FrameGetter& frame, int n) {
  std::vector<MatrixXcd> out(static_cast<size_t>(n));
  out[0] = frame(0);
  for (int j = 1; j < n; ++j)
    out[static_cast<size_t>(j)] =
        frame(j) * unitarize(frame(j).adjoint() * out[static_cast<size_t>(j - 1)]);
  MatrixXcd holonomy = unitarize(frame(0).adjoint() * out[static_cast<size_t>(n - 1)]);
  // Distribute the loop holonomy so the gauge is periodic: multiply frame j by
  // holonomy^{-j/n} (at j = n this exactly cancels the transported holonomy).
  for (int j = 1; j < n; ++j)
    out[static_cast<size_t>(j)] *=
        unitary_fractional_power(holonomy, -static_cast<double>(j) / n);
  return out;
}

std::vector<MatrixXcd> tr_constrained_cycle_gauge(const FrameGetter& frame, int n,
                                                  const MatrixXcd& tr_u) {
  if (n % 2 != 0) throw Error(ErrorKind::BadArgument, "cycle length must be even");
  const long n_occ = frame(0).cols();
  MatrixXcd sigma0 = standard_skew_form(n_occ);
  std::vector<MatrixXcd> out(static_cast<size_t>(n));

  // Pin the fixed points: after F -> F V the sewing matrix there is Sigma0.
  for (int j : {0, n / 2}) {
    const MatrixXcd& f = frame(j);
    MatrixXcd w = f.adjoint() * tr_u * f.conjugate();
    out[static_cast<size_t>(j)] = f * takagi_skew_unitary(w);
  }
  // Open + half keeps the given frames.
  for (int j = 1; j < n / 2; ++j) out[static_cast<size_t>(j)] = frame(j);
  // Mirror half by the constraint u(-k) = Theta u(k) (-Sigma0).
  for (int j = n / 2 + 1; j < n; ++j)
    out[static_cast<size_t>(j)] =
        tr_u * out[static_cast<size_t>(n - j)].conjugate() * (-sigma0);
  return out;
}

}  // namespace z2kit
