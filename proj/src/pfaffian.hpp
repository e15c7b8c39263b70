#pragma once

#include "common.hpp"

namespace z2kit {

// Pfaffian of an even-size skew-symmetric complex matrix by Parlett-Reid
// tridiagonalization with partial pivoting. Satisfies pf(A)^2 = det(A).
// Throws on odd size or when ||A + A^T|| exceeds 1e-8 * ||A||.
cplx pfaffian(const MatrixXcd& a);

}  // namespace z2kit
