#include "model_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "builtins.hpp"

namespace z2kit {

using nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::Validation, "model schema: " + where + ": " + what);
}

cplx parse_complex(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    schema_error(where, "expected a [re, im] pair");
  return cplx(j[0].get<double>(), j[1].get<double>());
}

MatrixXcd parse_complex_matrix(const json& j, long rows, long cols, const std::string& where) {
  if (!j.is_array() || static_cast<long>(j.size()) != rows)
    schema_error(where, "expected " + std::to_string(rows) + " rows");
  MatrixXcd m(rows, cols);
  for (long r = 0; r < rows; ++r) {
    const json& row = j[static_cast<size_t>(r)];
    if (!row.is_array() || static_cast<long>(row.size()) != cols)
      schema_error(where + "[" + std::to_string(r) + "]",
                   "expected " + std::to_string(cols) + " entries");
    for (long c = 0; c < cols; ++c)
      m(r, c) = parse_complex(row[static_cast<size_t>(c)],
                              where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
  }
  return m;
}

json dump_complex_matrix(const MatrixXcd& m) {
  json rows = json::array();
  for (long r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (long c = 0; c < m.cols(); ++c)
      row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
    rows.push_back(row);
  }
  return rows;
}

std::map<std::string, double> parse_parameters(const json& j) {
  std::map<std::string, double> p;
  if (j.contains("parameters")) {
    if (!j["parameters"].is_object()) schema_error("parameters", "expected an object");
    for (auto it = j["parameters"].begin(); it != j["parameters"].end(); ++it) {
      if (!it.value().is_number())
        schema_error("parameters." + it.key(), "expected a number");
      p[it.key()] = it.value().get<double>();
    }
  }
  return p;
}

}  // namespace

BlochModel parse_model_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Validation, std::string("model file is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) schema_error("(root)", "expected an object");

  if (j.contains("builtin")) {
    if (!j["builtin"].is_string()) schema_error("builtin", "expected a string");
    BlochModel m = make_builtin(j["builtin"].get<std::string>(), parse_parameters(j));
    if (j.contains("name") && j["name"].is_string()) m.name = j["name"].get<std::string>();
    return m;
  }

  BlochModel m;
  auto require = [&](const char* key) -> const json& {
    if (!j.contains(key)) schema_error(key, "missing required field");
    return j[key];
  };
  if (!require("name").is_string()) schema_error("name", "expected a string");
  m.name = j["name"].get<std::string>();
  if (!require("dim").is_number_integer()) schema_error("dim", "expected an integer");
  m.dim = j["dim"].get<int>();
  if (m.dim < 1 || m.dim > 3) schema_error("dim", "must be 1, 2 or 3");
  if (!require("bands").is_number_integer()) schema_error("bands", "expected an integer");
  m.bands = j["bands"].get<int>();
  if (m.bands <= 0 || m.bands % 2 != 0) schema_error("bands", "must be a positive even integer");
  if (!require("n_occupied").is_number_integer())
    schema_error("n_occupied", "expected an integer");
  m.n_occupied = j["n_occupied"].get<int>();

  const json& lat = require("lattice_vectors");
  if (!lat.is_array() || static_cast<int>(lat.size()) != m.dim)
    schema_error("lattice_vectors", "expected " + std::to_string(m.dim) + " rows");
  m.lattice = MatrixXd::Zero(m.dim, m.dim);
  for (int r = 0; r < m.dim; ++r) {
    const json& row = lat[static_cast<size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != m.dim)
      schema_error("lattice_vectors[" + std::to_string(r) + "]",
                   "expected " + std::to_string(m.dim) + " entries");
    for (int c = 0; c < m.dim; ++c) {
      if (!row[static_cast<size_t>(c)].is_number())
        schema_error("lattice_vectors[" + std::to_string(r) + "]", "expected numbers");
      m.lattice(r, c) = row[static_cast<size_t>(c)].get<double>();
    }
  }

  const json& hops = require("hoppings");
  if (!hops.is_array() || hops.empty()) schema_error("hoppings", "expected a non-empty array");
  for (size_t h = 0; h < hops.size(); ++h) {
    std::string where = "hoppings[" + std::to_string(h) + "]";
    const json& hop = hops[h];
    if (!hop.is_object()) schema_error(where, "expected an object");
    if (!hop.contains("delta") || !hop["delta"].is_array() ||
        static_cast<int>(hop["delta"].size()) != m.dim)
      schema_error(where + ".delta", "expected an integer vector of length " +
                                         std::to_string(m.dim));
    Hopping out;
    for (int a = 0; a < m.dim; ++a) {
      const json& v = hop["delta"][static_cast<size_t>(a)];
      if (!v.is_number_integer()) schema_error(where + ".delta", "expected integers");
      out.delta[static_cast<size_t>(a)] = v.get<int>();
    }
    if (!hop.contains("matrix")) schema_error(where + ".matrix", "missing required field");
    out.t = parse_complex_matrix(hop["matrix"], m.bands, m.bands, where + ".matrix");
    m.hoppings.push_back(out);
  }

  m.tr.u = parse_complex_matrix(require("time_reversal_unitary"), m.bands, m.bands,
                                "time_reversal_unitary");
  m.parameters = parse_parameters(j);
  m.validate();
  return m;
}

BlochModel load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Validation, "cannot open model file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_model_json(ss.str());
}

std::string model_to_json(const BlochModel& m, int indent) {
  json j;
  j["name"] = m.name;
  j["dim"] = m.dim;
  j["bands"] = m.bands;
  j["n_occupied"] = m.n_occupied;
  json lat = json::array();
  for (int r = 0; r < m.dim; ++r) {
    json row = json::array();
    for (int c = 0; c < m.dim; ++c) row.push_back(m.lattice(r, c));
    lat.push_back(row);
  }
  j["lattice_vectors"] = lat;
  json hops = json::array();
  for (const Hopping& h : m.hoppings) {
    json hop;
    json d = json::array();
    for (int a = 0; a < m.dim; ++a) d.push_back(h.delta[static_cast<size_t>(a)]);
    hop["delta"] = d;
    hop["matrix"] = dump_complex_matrix(h.t);
    hops.push_back(hop);
  }
  j["hoppings"] = hops;
  j["time_reversal_unitary"] = dump_complex_matrix(m.tr.u);
  j["parameters"] = m.parameters;
  return j.dump(indent);
}

std::string report_to_json(const Z2Report& r, int indent) {
  json j;
  j["tool"] = "z2kit 1.0.0";
  j["model"] = r.model_name;
  j["parameters"] = r.parameters;
  j["grid"] = {{"dim", r.dim}, {"n", r.grid_n}};

  json methods = json::object();
  if (r.nu_kane_mele) methods["kane_mele"] = {{"nu", *r.nu_kane_mele}};
  if (r.upsilon_obstruction)
    methods["obstruction"] = {{"upsilon", *r.upsilon_obstruction},
                              {"stokes_value", r.diagnostics.obstruction_stokes}};
  if (r.upsilon_wannier)
    methods["wannier"] = {{"upsilon", *r.upsilon_wannier},
                          {"crossings", r.diagnostics.wannier_crossings},
                          {"retries", r.diagnostics.wannier_retries}};
  if (r.chern_total) methods["chern"] = {{"total", *r.chern_total}};
  j["methods"] = methods;
  j["agreement"] = r.agreement;

  json diag;
  diag["gap"] = r.diagnostics.gap;
  diag["trs_residual"] = r.diagnostics.trs_residual;
  diag["sewing_unitarity"] = r.diagnostics.sewing_unitarity;
  diag["sewing_law"] = r.diagnostics.sewing_law;
  diag["sewing_trim_skew"] = r.diagnostics.sewing_trim_skew;
  diag["kramers_residual"] = r.diagnostics.kramers_residual;
  diag["max_plaquette_flux"] = r.diagnostics.max_plaquette_flux;
  diag["branch_log"] = r.diagnostics.branch_log;
  if (!r.diagnostics.plane_values.empty()) {
    json planes;
    for (const auto& [k, v] : r.diagnostics.plane_values) planes[k] = v;
    diag["plane_upsilon"] = planes;
  }
  j["diagnostics"] = diag;

  j["conventions"] = {
      {"plaquette_orientation", "counterclockwise in (k_x, k_y)"},
      {"wilson_loop_direction", "+k_1"},
      {"chern_prefactor", "1/(2*pi*i)"},
      {"wzw_prefactor", "1/(24*pi^2)"},
      {"tolerances",
       {{"trs", 1e-10},
        {"gap", 1e-8},
        {"kramers_relative", 1e-8},
        {"sewing_unitarity", 1e-8},
        {"trim_skew", 1e-10},
        {"pfaffian_degeneracy", 1e-6},
        {"branch_step", kPi / 2.0},
        {"plaquette_flux_guard", 0.995 * kPi},
        {"integer_rounding", 0.1}}},
  };
  return j.dump(indent);
}

namespace {

std::string format_sig12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

std::string wannier_to_csv(const WannierSpectrum& ws) {
  std::ostringstream os;
  size_t nb = ws.theta.empty() ? 0 : ws.theta.front().size();
  os << "k_perp";
  for (size_t b = 1; b <= nb; ++b) os << ",theta_" << b;
  os << "\r\n";
  for (size_t s = 0; s < ws.k_perp.size(); ++s) {
    os << format_sig12(ws.k_perp[s]);
    for (double th : ws.theta[s]) os << "," << format_sig12(th);
    os << "\r\n";
  }
  return os.str();
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "value,nu,upsilon_obstruction,upsilon_wannier,gap,status\r\n";
  for (const SweepRow& r : rows) {
    os << format_sig12(r.value) << ",";
    if (r.nu) os << *r.nu;
    os << ",";
    if (r.upsilon_obs) os << *r.upsilon_obs;
    os << ",";
    if (r.upsilon_wan) os << *r.upsilon_wan;
    os << "," << format_sig12(r.gap) << "," << r.status << "\r\n";
  }
  return os.str();
}

SweepRow sweep_point(const BlochModel& base, const std::string& param, double value,
                     int grid_n) {
  SweepRow row;
  row.value = value;
  if (base.builtin.empty())
    throw Error(ErrorKind::Validation,
                "sweep needs a builtin-backed model; explicit hopping files have no "
                "substitutable parameters");
  if (!base.parameters.count(param))
    throw Error(ErrorKind::Validation, "parameter '" + param + "' not present in model");
  std::map<std::string, double> params = base.parameters;
  params[param] = value;
  BlochModel m = make_builtin(base.builtin, params);
  try {
    Z2Report rep = equivalence_report(
        m, grid_n, kMethodKaneMele | kMethodObstruction | kMethodWannier);
    row.nu = rep.nu_kane_mele;
    row.upsilon_obs = rep.upsilon_obstruction;
    row.upsilon_wan = rep.upsilon_wannier;
    row.gap = rep.diagnostics.gap;
    row.status = rep.agreement ? "ok" : "disagreement";
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::GapClosing) {
      row.status = "gap-closing";
      row.gap = 0.0;
    } else if (e.kind() == ErrorKind::CoarseGrid) {
      row.status = "grid-too-coarse";
    } else {
      throw;
    }
  }
  return row;
}

}  // namespace z2kit
