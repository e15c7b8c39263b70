#include "wzw.hpp"

namespace z2kit {

namespace {

using Eigen::Matrix2cd;

// Principal logarithm of a U(2) matrix via det/SU(2) splitting; valid while
// the eigenphases stay well inside (-pi, pi), which the smoothness guard
// ensures for link matrices.
Matrix2cd u2_log(const Matrix2cd& m) {
  const cplx det = m.determinant();
  const double alpha = 0.5 * std::arg(det);
  Matrix2cd s = m * std::exp(cplx(0.0, -alpha));
  double c = std::clamp(0.5 * s.trace().real(), -1.0, 1.0);
  double theta = std::acos(c);
  double ratio = theta < 1e-8 ? 1.0 : theta / std::sin(theta);
  Matrix2cd su_log = ratio * (s - c * Matrix2cd::Identity());
  return cplx(0.0, alpha) * Matrix2cd::Identity() + su_log;
}

}  // namespace

WzwResult wzw_winding(const U2Field& field) {
  const int n = field.n;
  if (n < 4) throw Error(ErrorKind::BadArgument, "wzw_winding: grid too small");
  if (static_cast<long>(field.g.size()) != static_cast<long>(n) * n * n)
    throw Error(ErrorKind::BadArgument, "wzw_winding: sample count does not match grid");

  WzwResult res;
  for (const auto& g : field.g) {
    double u = (g.adjoint() * g - Matrix2cd::Identity()).cwiseAbs().maxCoeff();
    if (u > 1e-8)
      throw Error(ErrorKind::Validation, "wzw_winding: samples are not unitary");
  }

  // Smoothness at grid scale.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        const Matrix2cd& g0 = field.at(i, j, l);
        for (int axis = 0; axis < 3; ++axis) {
          Matrix2cd g1 = field.at(i + (axis == 0), j + (axis == 1), l + (axis == 2));
          double d = spectral_norm(g0.adjoint() * g1 - Matrix2cd::Identity());
          res.max_link_distance = std::max(res.max_link_distance, d);
        }
      }
  if (res.max_link_distance >= 0.5)
    throw Error(ErrorKind::CoarseGrid,
                "field not resolvable: neighbor distance " +
                    std::to_string(res.max_link_distance) + " >= 0.5");

  const double delta = 2.0 * kPi / n;
  const double cell = delta * delta * delta;
  double total = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        Matrix2cd a[3];
        for (int axis = 0; axis < 3; ++axis) {
          int di = (axis == 0), dj = (axis == 1), dl = (axis == 2);
          Matrix2cd step = field.at(i - di, j - dj, l - dl).adjoint() *
                           field.at(i + di, j + dj, l + dl);
          a[axis] = u2_log(step) / (2.0 * delta);
        }
        // epsilon-contracted trace: 3 tr(A1 [A2, A3]).
        total += 3.0 * (a[0] * (a[1] * a[2] - a[2] * a[1])).trace().real() * cell;
      }

  res.estimate = total / (24.0 * kPi * kPi);
  res.winding = static_cast<int>(std::lround(res.estimate));
  if (std::abs(res.estimate - res.winding) >= 0.1)
    throw Error(ErrorKind::CoarseGrid,
                "wzw_winding: estimate " + std::to_string(res.estimate) +
                    " is not near an integer");
  res.mod2 = ((res.winding % 2) + 2) % 2;
  return res;
}

U2Field pointwise_product(const U2Field& a, const U2Field& b) {
  if (a.n != b.n) throw Error(ErrorKind::BadArgument, "pointwise_product: size mismatch");
  U2Field out;
  out.n = a.n;
  out.g.resize(a.g.size());
  for (size_t i = 0; i < a.g.size(); ++i) out.g[i] = a.g[i] * b.g[i];
  return out;
}

}  // namespace z2kit
