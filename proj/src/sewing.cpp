#include "sewing.hpp"

namespace z2kit {

MatrixXcd sewing_matrix(const MatrixXcd& frame_minus_k, const MatrixXcd& frame_k,
                        const MatrixXcd& tr_u) {
  return frame_minus_k.adjoint() * tr_u * frame_k.conjugate();
}

SewingField sewing_field(const BandFrame& frames, const TimeReversalOp& tr,
                         const InvolutiveGrid& grid) {
  SewingField s;
  s.grid = frames.grid;
  s.frames = std::make_shared<BandFrame>(frames);
  s.tr_u = tr.u;
  const long np = grid.num_points();
  s.w.resize(static_cast<size_t>(np));
  const long n_occ = frames.n_occupied;
  MatrixXcd eye = MatrixXcd::Identity(n_occ, n_occ);

  for (long i = 0; i < np; ++i) {
    const MatrixXcd& fk = frames.frames[static_cast<size_t>(i)];
    const MatrixXcd& fmk = frames.frames[static_cast<size_t>(grid.tau(i))];
    MatrixXcd w = sewing_matrix(fmk, fk, tr.u);
    double res = (w.adjoint() * w - eye).cwiseAbs().maxCoeff();
    s.max_unitarity_residual = std::max(s.max_unitarity_residual, res);
    if (res >= 1e-8) {
      Vector3d k = grid.k(i);
      throw Error(ErrorKind::Validation,
                  "occupied space not TR-closed: sewing unitarity residual " +
                      std::to_string(res) + " at k = (" + std::to_string(k(0)) + ", " +
                      std::to_string(k(1)) + ", " + std::to_string(k(2)) + ")");
    }
    s.w[static_cast<size_t>(i)] = w;
  }
  for (long i = 0; i < np; ++i) {
    double law = (s.w[static_cast<size_t>(grid.tau(i))].transpose() + s.w[static_cast<size_t>(i)])
                     .cwiseAbs()
                     .maxCoeff();
    s.max_law_residual = std::max(s.max_law_residual, law);
  }
  for (long t : grid.trim()) {
    double skew = (s.w[static_cast<size_t>(t)] + s.w[static_cast<size_t>(t)].transpose())
                      .cwiseAbs()
                      .maxCoeff();
    s.max_trim_skew_residual = std::max(s.max_trim_skew_residual, skew);
  }
  return s;
}

}  // namespace z2kit
