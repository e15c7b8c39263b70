#include "pfaffian.hpp"

namespace z2kit {

cplx pfaffian(const MatrixXcd& a) {
  const long n = a.rows();
  if (n != a.cols()) throw Error(ErrorKind::BadArgument, "pfaffian: matrix must be square");
  if (n % 2 != 0)
    throw Error(ErrorKind::BadArgument, "pfaffian: matrix size must be even");
  if (n == 0) return cplx(1.0, 0.0);

  double scale = a.cwiseAbs().maxCoeff() * n;
  double skew = (a + a.transpose()).cwiseAbs().maxCoeff();
  if (scale > 0 && skew > 1e-8 * scale)
    throw Error(ErrorKind::BadArgument, "pfaffian: matrix is not skew-symmetric");

  MatrixXcd m = a;
  cplx pf(1.0, 0.0);
  for (long k = 0; k + 1 < n; k += 2) {
    // Pivot the largest entry of column k below the diagonal into row k+1.
    long kp = k + 1;
    double best = std::abs(m(kp, k));
    for (long i = k + 2; i < n; ++i) {
      double v = std::abs(m(i, k));
      if (v > best) {
        best = v;
        kp = i;
      }
    }
    if (kp != k + 1) {
      m.row(kp).swap(m.row(k + 1));
      m.col(kp).swap(m.col(k + 1));
      pf = -pf;
    }
    if (m(k + 1, k) == cplx(0.0, 0.0)) return cplx(0.0, 0.0);

    pf *= m(k, k + 1);
    if (k + 2 < n) {
      long r = n - (k + 2);
      VectorXcd tau = m.block(k + 2, k, r, 1) / m(k + 1, k);
      VectorXcd col = m.block(k + 2, k + 1, r, 1);
      // Skew outer-product update of the trailing block.
      m.block(k + 2, k + 2, r, r) += tau * col.transpose() - col * tau.transpose();
    }
  }
  return pf;
}

}  // namespace z2kit
