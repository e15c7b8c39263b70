#pragma once

#include <functional>
#include <vector>

#include "common.hpp"

namespace z2kit {

// The reference symplectic form: block diagonal [[0,1],[-1,0]] of size n (even).
MatrixXcd standard_skew_form(long n);

// Factor a skew-symmetric unitary w as w = V Sigma0 V^T with V unitary
// (quaternionic Gram-Schmidt). The residual of the factorization is checked.
MatrixXcd takagi_skew_unitary(const MatrixXcd& w);

// Frames along a closed cycle of grid points (index i = 0..n-1, periodic).
using FrameGetter = std::function<const MatrixXcd&(int)>;

// Smooth periodic gauge on a cycle: parallel transport from the raw frame at
// i = 0, with the Wilson-loop holonomy spread evenly so the gauge closes up.
// Output frame i equals input frame i times a unitary.
std::vector<MatrixXcd> smooth_cycle_gauge(const FrameGetter& frame, int n);

// Time-reversal-constrained gauge on a tau-invariant cycle whose fixed points
// sit at i = 0 and i = n/2 (the cycle maps to itself under i -> n - i).
// The two fixed-point frames are pinned so the sewing matrix there equals the
// standard skew form; frames on the open half i in (0, n/2) stay as given; the
// mirror half is the Theta image times -Sigma0, which extends the pinned gauge
// continuously through the fixed points.
std::vector<MatrixXcd> tr_constrained_cycle_gauge(const FrameGetter& frame, int n,
                                                  const MatrixXcd& tr_u);

}  // namespace z2kit
