#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace z2kit {

using cplx = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::Vector3d;
using Eigen::VectorXcd;
using Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;

enum class ErrorKind {
  Validation,   // bad input data: schema, preconditions, broken symmetry
  GapClosing,   // metallic spectrum / gap below threshold
  CoarseGrid,   // discretization not resolvable at this grid size
  Numeric,      // internal numerical failure
  BadArgument,  // malformed call
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Spectral norm of a general complex matrix (largest singular value).
inline double spectral_norm(const MatrixXcd& m) {
  if (m.size() == 0) return 0.0;
  return Eigen::JacobiSVD<MatrixXcd>(m).singularValues()(0);
}

// Wrap an angle into (-pi, pi].
inline double wrap_angle(double a) {
  a = std::fmod(a, 2.0 * kPi);
  if (a <= -kPi) a += 2.0 * kPi;
  if (a > kPi) a -= 2.0 * kPi;
  return a;
}

// Nearest unitary in Frobenius norm (polar factor).
inline MatrixXcd unitarize(const MatrixXcd& m) {
  Eigen::JacobiSVD<MatrixXcd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

}  // namespace z2kit
