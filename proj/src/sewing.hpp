#pragma once

#include <memory>
#include <vector>

#include "model.hpp"

namespace z2kit {

// Matrix field w_pq(k) = <u_p(-k), Theta u_q(k)> on the grid. Unitary at every
// k while the occupied space is TR-closed; w^T(-k) = -w(k); skew-symmetric at
// every TRIM.
struct SewingField {
  std::shared_ptr<const InvolutiveGrid> grid;
  std::shared_ptr<const BandFrame> frames;
  MatrixXcd tr_u;
  std::vector<MatrixXcd> w;

  double max_unitarity_residual = 0.0;
  double max_law_residual = 0.0;        // max over k of ||w^T(-k) + w(k)||
  double max_trim_skew_residual = 0.0;  // max over TRIM of ||w + w^T||
};

// Computes w at a single point from explicit frames.
MatrixXcd sewing_matrix(const MatrixXcd& frame_minus_k, const MatrixXcd& frame_k,
                        const MatrixXcd& tr_u);

// Builds the field and validates unitarity (threshold 1e-8; failure means the
// occupied space is not closed under time reversal).
SewingField sewing_field(const BandFrame& frames, const TimeReversalOp& tr,
                         const InvolutiveGrid& grid);

}  // namespace z2kit
