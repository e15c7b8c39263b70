#pragma once

#include <array>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "brillouin.hpp"
#include "common.hpp"

namespace z2kit {

// Anti-unitary time reversal Theta = U * C with U unitary and skew-symmetric,
// so that Theta^2 = -1.
struct TimeReversalOp {
  MatrixXcd u;

  // Theta v = U * conj(v).
  VectorXcd apply(const VectorXcd& v) const { return u * v.conjugate(); }
  MatrixXcd apply_cols(const MatrixXcd& f) const { return u * f.conjugate(); }

  // Residuals of the defining relations; both must be < 1e-12.
  double unitarity_residual() const;
  double skewness_residual() const;
  void validate() const;

  // Matrix part of the induced grading gamma = i * Theta (an antilinear map;
  // gamma v = (iU) conj(v)).
  MatrixXcd gamma_matrix() const { return cplx(0.0, 1.0) * u; }

  // Matrix part of the real structure J = [[0, Theta^*], [Theta, 0]] on the
  // doubled space (J v = jmat * conj(v)); J^2 = +1 and J is self-adjoint.
  MatrixXcd real_structure_matrix() const;
};

struct Hopping {
  std::array<int, 3> delta{0, 0, 0};
  MatrixXcd t;
};

// Tight-binding Bloch family H(k) = sum_delta T_delta e^{i k.delta} with a
// fixed time reversal operator. Momenta are in reduced (angle) coordinates.
struct BlochModel {
  std::string name;
  int dim = 2;
  int bands = 0;        // 2N
  int n_occupied = 0;   // even, <= bands
  MatrixXd lattice;     // d x d, bookkeeping only
  std::vector<Hopping> hoppings;
  TimeReversalOp tr;
  std::map<std::string, double> parameters;
  std::string builtin;  // generator id when parameter-substitutable, else empty

  MatrixXcd bloch_at(const Vector3d& k) const;
  // Hermiticity of the hopping family and the TimeReversalOp relations.
  void validate() const;
};

// || U H(k)* U^dag - H(-k) ||_2 at a single momentum.
double trs_residual_at(const BlochModel& model, const Vector3d& k);

// Max residual of Theta H(k) Theta^* = H(-k) over the grid. The throwing
// variant rejects models with residual >= 1e-10 and names the worst k.
double validate_trs(const BlochModel& model, const InvolutiveGrid& grid);
void require_trs(const BlochModel& model, const InvolutiveGrid& grid);

// Per-point sorted eigensystem of the occupied bands.
struct BandFrame {
  std::shared_ptr<const InvolutiveGrid> grid;
  int n_occupied = 0;
  std::vector<VectorXd> energies;   // all bands, ascending
  std::vector<MatrixXcd> frames;    // bands x n_occupied, orthonormal columns
  double gap = 0.0;                 // min over grid of E_{nocc+1} - E_{nocc}
  long gap_argmin = 0;
  double kramers_residual = 0.0;    // max TRIM eigenvalue splitting / scale
};

// Diagonalizes the model over the grid. Eigenvector phases are fixed
// deterministically (largest component real positive); at TRIM the second
// member of each occupied Kramers pair is replaced by Theta applied to the
// first. Throws GapClosing when the spectral gap falls below 1e-8, and
// Validation when a TRIM eigenvalue fails to pair within 1e-8 * ||H||.
// Worker count: min(Z2KIT_THREADS, hardware), sequential when unset or 1.
BandFrame diagonalize(const BlochModel& model, const InvolutiveGrid& grid);

// H~(k) = [[0, Theta H(k) Theta^*], [H(k), 0]] of Eq-effH size 4N x 4N.
struct EffectiveHamiltonian {
  Vector3d k;
  bool at_trim = false;
  MatrixXcd h;      // the 4N x 4N block matrix
  MatrixXcd jmat;   // matrix part of the real structure on the doubled space
};

EffectiveHamiltonian effective_hamiltonian(const BlochModel& model, const Vector3d& k);

// Residual of J H~ + H~ J = 0 (J antilinear: J v = jmat conj(v)).
double real_structure_anticommutator_residual(const EffectiveHamiltonian& eff);

// Parity of Majorana zero modes seen by H~ at this momentum. Singular values
// below tol are counted and divided by the kernel size of one zero mode: 8 at
// a TRIM (cone apex doublet x Kramers x chirality), 4 elsewhere (the mirror
// cone at -k enters through the off-diagonal block). Values in [tol, 10 tol)
// raise an "ambiguous kernel" error, as does a count that does not divide.
int mod2_kernel(const EffectiveHamiltonian& eff, double tol);

// TRS projection H(k) -> (H(k) + U H(-k)* U^dag) / 2 applied to the hopping
// data; output satisfies Eq-hameq to machine precision.
BlochModel symmetrize_trs(const BlochModel& model);

}  // namespace z2kit
