#pragma once

#include <string>

#include "invariants.hpp"
#include "model.hpp"

namespace z2kit {

// Model files are JSON. Two forms:
//  - generator reference: {"name": ..., "builtin": "<id>", "parameters": {...}}
//  - explicit: {"name", "dim", "bands", "n_occupied", "lattice_vectors",
//               "hoppings": [{"delta": [..], "matrix": [[[re, im], ...], ...]}],
//               "time_reversal_unitary": [[[re, im], ...], ...],
//               "parameters": {...}}
// Complex entries are [re, im] pairs. Schema failures name the offending field.
BlochModel parse_model_json(const std::string& text);
BlochModel load_model_file(const std::string& path);
std::string model_to_json(const BlochModel& model, int indent = 2);

// Report serialization. Byte-deterministic for identical inputs: no
// timestamps, fixed key order, shortest-round-trip floats.
std::string report_to_json(const Z2Report& report, int indent = 2);

// RFC-4180-style CSV of a Wannier spectrum: header k_perp,theta_1..theta_n,
// values with 12 significant digits.
std::string wannier_to_csv(const WannierSpectrum& ws);

struct SweepRow {
  double value = 0.0;
  std::optional<int> nu;
  std::optional<int> upsilon_obs;
  std::optional<int> upsilon_wan;
  double gap = 0.0;
  std::string status;  // "ok", "gap-closing", or an error tag
};

std::string sweep_to_csv(const std::vector<SweepRow>& rows);

// One row of cmd_sweep: rebuilds the builtin-backed model with the parameter
// overridden and runs the three Z2 methods. Gap closings and coarse-grid
// failures are recorded in the row status rather than thrown.
SweepRow sweep_point(const BlochModel& base, const std::string& param, double value,
                     int grid_n);

}  // namespace z2kit
