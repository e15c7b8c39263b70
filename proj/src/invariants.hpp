#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "brillouin.hpp"
#include "pfaffian.hpp"
#include "sewing.hpp"

namespace z2kit {

// A 2d window onto a frame field: either the full 2d grid or a tau-invariant
// plane of a 3d grid. (i, j) run over [0, n)^2 with periodic wrap.
class PlaneView {
 public:
  PlaneView(const BandFrame& frames, const InvolutiveGrid& grid);               // d = 2
  PlaneView(const BandFrame& frames, const InvolutiveGrid& grid, int normal_axis,
            int coord);                                                          // d = 3
  int n() const { return n_; }
  long global_index(int i, int j) const;
  const MatrixXcd& frame(int i, int j) const;

 private:
  const BandFrame* frames_;
  const InvolutiveGrid* grid_;
  int n_;
  int axis_i_, axis_j_;
  std::array<int, 3> base_{0, 0, 0};
};

struct KaneMeleResult {
  int nu = +1;  // in {+1, -1}
  std::vector<std::string> branch_log;
};

// Kane-Mele invariant: product over TRIM of pf[w]/sqrt(det w), the square root
// branch transported along the trim tree. Each tree edge lies on a
// tau-invariant circle; the circle is re-gauged internally (parallel transport
// with the holonomy spread), so the result is unchanged by arbitrary unitary
// rotations of the input frames. The branch continuation accumulates
// (1/2) d arg det w along the half circle together with the full-circle Berry
// phase, which keeps it single-valued against winding gauges.
KaneMeleResult kane_mele(const SewingField& sewing, const std::vector<TrimPath>& tree);

// Lattice field strength of one plaquette, Arg of the product of the four
// oriented link determinants (counterclockwise in (i, j)). Gauge invariant.
double plaquette_flux(const std::function<MatrixXcd(int, int)>& frame, int i, int j);

// First Chern number of a frame field over the closed 2d cell [0,n)^2 by the
// plaquette-flux sum with prefactor 1/(2 pi i) (the i absorbed by Arg).
// Exact lattice Stokes makes the sum an integer up to roundoff; a rounding gap
// above 0.1 or a plaquette flux within 0.5% of pi raises "grid too coarse".
int chern_number(const std::function<MatrixXcd(int, int)>& frame, int n);
int chern_number(const PlaneView& view);

struct ObstructionResult {
  int upsilon = 0;  // in {0, 1}
  double stokes_value = 0.0;      // (boundary sum - area sum) / 2 pi, near-integer
  double max_plaquette_flux = 0.0;
  // d = 3: the six tau-invariant plane values keyed "kx=0", ..., "kz=pi";
  // the strong value is the k_z = 0 and k_z = pi product.
  std::vector<std::pair<std::string, int>> plane_values;
};

// Discretized obstruction integral on the effective Brillouin zone:
// upsilon = [sum of boundary link phases - sum of EBZ plaquette fluxes]/2pi
// mod 2, with the boundary gauge TR-constrained and pinned at the TRIM by the
// sewing matrix. Gauge invariant; grid-exact integer before the mod.
ObstructionResult z2_obstruction(const BandFrame& frames, const SewingField& sewing,
                                 const EffectiveBZ& ebz);

struct WannierSpectrum {
  std::vector<double> k_perp;               // n/2 + 1 samples over [0, pi]
  std::vector<std::vector<double>> theta;   // sorted eigenphases per sample
  double theta_ref = kPi;
  int crossings = 0;
  int upsilon = 0;
  int retries = 0;
  std::vector<std::string> log;
};

// Wilson-loop eigenphase flow: loops along axis i of the view, transverse
// momentum over half the j cycle. upsilon is the parity of crossings of the
// reference line theta = pi (shifted and retried when an eigenphase lands on
// it; hard error after 5 retries).
WannierSpectrum wannier_flow(const PlaneView& view);
WannierSpectrum wannier_flow(const BandFrame& frames, const InvolutiveGrid& grid);

// Spin-sector Chern numbers for models conserving the given operator on the
// occupied space (eigenvalue gap of the projected operator must exceed 0.5).
std::pair<int, int> sector_chern_numbers(const PlaneView& view, const MatrixXcd& op);

enum MethodMask : unsigned {
  kMethodKaneMele = 1u << 0,
  kMethodObstruction = 1u << 1,
  kMethodWannier = 1u << 2,
  kMethodChern = 1u << 3,
  kMethodAll = 0xFu,
};

struct Z2Report {
  std::string model_name;
  std::map<std::string, double> parameters;
  int dim = 2;
  int grid_n = 0;

  std::optional<int> nu_kane_mele;          // {+1, -1}
  std::optional<int> upsilon_obstruction;   // {0, 1}
  std::optional<int> upsilon_wannier;       // {0, 1}
  std::optional<long> chern_total;
  bool agreement = true;

  struct Diagnostics {
    double gap = 0.0;
    double trs_residual = 0.0;
    double sewing_unitarity = 0.0;
    double sewing_law = 0.0;
    double sewing_trim_skew = 0.0;
    double kramers_residual = 0.0;
    double obstruction_stokes = 0.0;
    double max_plaquette_flux = 0.0;
    int wannier_crossings = 0;
    int wannier_retries = 0;
    std::vector<std::string> branch_log;
    std::vector<std::pair<std::string, int>> plane_values;  // d = 3 weak data
  } diagnostics;
};

// Runs the selected methods and fills the agreement verdict
// nu = (-1)^{upsilon_obstruction} = (-1)^{upsilon_wannier}. Disagreement is
// reported, never resolved. For d = 3 the strong invariant is computed (the
// obstruction and Wannier methods per k_z plane, Kane-Mele over all 8 TRIM).
Z2Report equivalence_report(const BlochModel& model, int grid_n,
                            unsigned methods = kMethodAll);

}  // namespace z2kit
