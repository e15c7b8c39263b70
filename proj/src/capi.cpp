#include "z2kit.h"

#include <cstring>
#include <string>

#include <json.hpp>

#include "builtins.hpp"
#include "invariants.hpp"
#include "kgroups.hpp"
#include "model_io.hpp"

using namespace z2kit;

struct z2k_model {
  BlochModel m;
};

namespace {

void set_err(char* errbuf, size_t len, const std::string& msg) {
  if (!errbuf || len == 0) return;
  std::strncpy(errbuf, msg.c_str(), len - 1);
  errbuf[len - 1] = '\0';
}

z2k_status status_of(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::Validation:
      return Z2K_ERR_VALIDATION;
    case ErrorKind::BadArgument:
      return Z2K_ERR_BAD_ARGUMENT;
    default:
      return Z2K_ERR_NUMERIC;
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

unsigned parse_methods(const std::string& spec) {
  if (spec.empty() || spec == "all") return kMethodAll;
  unsigned mask = 0;
  size_t pos = 0;
  while (pos <= spec.size()) {
    size_t comma = spec.find(',', pos);
    std::string tok = spec.substr(pos, comma == std::string::npos ? comma : comma - pos);
    if (tok == "km" || tok == "kane_mele")
      mask |= kMethodKaneMele;
    else if (tok == "obstruction")
      mask |= kMethodObstruction;
    else if (tok == "wannier")
      mask |= kMethodWannier;
    else if (tok == "chern")
      mask |= kMethodChern;
    else if (tok == "all")
      mask |= kMethodAll;
    else if (!tok.empty())
      throw Error(ErrorKind::BadArgument, "unknown method '" + tok + "'");
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (mask == 0) throw Error(ErrorKind::BadArgument, "empty method selector");
  return mask;
}

template <typename Fn>
z2k_status guarded(char* errbuf, size_t errbuf_len, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    set_err(errbuf, errbuf_len, e.what());
    return status_of(e);
  } catch (const std::exception& e) {
    set_err(errbuf, errbuf_len, e.what());
    return Z2K_ERR_NUMERIC;
  }
}

}  // namespace

extern "C" {

const char* z2k_version(void) { return "z2kit 1.0.0"; }

void z2k_string_free(char* s) { delete[] s; }

z2k_model* z2k_model_builtin(const char* name, const char* const* param_names,
                             const double* param_values, size_t n_params, char* errbuf,
                             size_t errbuf_len) {
  try {
    std::map<std::string, double> params;
    for (size_t i = 0; i < n_params; ++i) params[param_names[i]] = param_values[i];
    return new z2k_model{make_builtin(name ? name : "", params)};
  } catch (const std::exception& e) {
    set_err(errbuf, errbuf_len, e.what());
    return nullptr;
  }
}

z2k_model* z2k_model_from_json(const char* json_text, char* errbuf, size_t errbuf_len) {
  try {
    return new z2k_model{parse_model_json(json_text ? json_text : "")};
  } catch (const std::exception& e) {
    set_err(errbuf, errbuf_len, e.what());
    return nullptr;
  }
}

z2k_model* z2k_model_load_file(const char* path, char* errbuf, size_t errbuf_len) {
  try {
    return new z2k_model{load_model_file(path ? path : "")};
  } catch (const std::exception& e) {
    set_err(errbuf, errbuf_len, e.what());
    return nullptr;
  }
}

void z2k_model_free(z2k_model* m) { delete m; }

z2k_status z2k_model_to_json(const z2k_model* m, char** json_out, char* errbuf,
                             size_t errbuf_len) {
  if (!m || !json_out) {
    set_err(errbuf, errbuf_len, "null argument");
    return Z2K_ERR_BAD_ARGUMENT;
  }
  return guarded(errbuf, errbuf_len, [&] {
    *json_out = dup_string(model_to_json(m->m));
    return Z2K_OK;
  });
}

z2k_status z2k_compute(const z2k_model* m, int grid_n, const char* methods,
                       char** report_json, char* errbuf, size_t errbuf_len) {
  if (!m || !report_json) {
    set_err(errbuf, errbuf_len, "null argument");
    return Z2K_ERR_BAD_ARGUMENT;
  }
  return guarded(errbuf, errbuf_len, [&]() -> z2k_status {
    if (grid_n < 8 || grid_n % 2 != 0)
      throw Error(ErrorKind::BadArgument, "grid size must be even and >= 8");
    unsigned mask = parse_methods(methods ? methods : "all");
    Z2Report rep = equivalence_report(m->m, grid_n, mask);
    *report_json = dup_string(report_to_json(rep));
    if (!rep.agreement) {
      set_err(errbuf, errbuf_len, "method disagreement; see report diagnostics");
      return Z2K_ERR_DISAGREEMENT;
    }
    return Z2K_OK;
  });
}

z2k_status z2k_sweep(const z2k_model* m, const char* param_name, double lo, double hi,
                     int steps, int grid_n, char** csv_out, char* errbuf,
                     size_t errbuf_len) {
  if (!m || !csv_out || !param_name) {
    set_err(errbuf, errbuf_len, "null argument");
    return Z2K_ERR_BAD_ARGUMENT;
  }
  return guarded(errbuf, errbuf_len, [&]() -> z2k_status {
    if (steps < 1) throw Error(ErrorKind::BadArgument, "sweep needs at least one step");
    if (steps > 1 && hi == lo)
      throw Error(ErrorKind::BadArgument, "empty sweep range");
    std::vector<SweepRow> rows;
    for (int s = 0; s < steps; ++s) {
      double v = steps == 1 ? lo : lo + (hi - lo) * s / (steps - 1);
      rows.push_back(sweep_point(m->m, param_name, v, grid_n));
    }
    *csv_out = dup_string(sweep_to_csv(rows));
    return Z2K_OK;
  });
}

z2k_status z2k_wannier(const z2k_model* m, int grid_n, char** csv_out, char* errbuf,
                       size_t errbuf_len) {
  if (!m || !csv_out) {
    set_err(errbuf, errbuf_len, "null argument");
    return Z2K_ERR_BAD_ARGUMENT;
  }
  return guarded(errbuf, errbuf_len, [&]() -> z2k_status {
    const BlochModel& model = m->m;
    if (model.dim != 2)
      throw Error(ErrorKind::Validation, "wannier CSV output needs a 2d model");
    InvolutiveGrid grid = make_grid(2, grid_n);
    model.validate();
    require_trs(model, grid);
    BandFrame bf = diagonalize(model, grid);
    WannierSpectrum ws = wannier_flow(PlaneView(bf, grid));
    *csv_out = dup_string(wannier_to_csv(ws));
    return Z2K_OK;
  });
}

z2k_status z2k_kgroup(const char* space, int degree, int reduced, char** json_out,
                      char* errbuf, size_t errbuf_len) {
  if (!space || !json_out) {
    set_err(errbuf, errbuf_len, "null argument");
    return Z2K_ERR_BAD_ARGUMENT;
  }
  return guarded(errbuf, errbuf_len, [&]() -> z2k_status {
    SpaceDescriptor sd = SpaceDescriptor::parse(space, reduced != 0);
    nlohmann::json j;
    AbelianGroup g;
    nlohmann::json provenance = nlohmann::json::array();
    if (sd.kind == SpaceDescriptor::Kind::Point) {
      g = ksp_point(degree);
      provenance.push_back({{"summand", "KSp^{-" + std::to_string(degree) + "}(pt)"},
                            {"group", g.pretty()}});
    } else if (sd.kind == SpaceDescriptor::Kind::Sphere) {
      g = kq_from_kr(sd, degree);
      int i = degree + 4;
      if (!sd.reduced)
        provenance.push_back({{"ko_degree", ((i % 8) + 8) % 8},
                              {"origin", "fixed point at infinity"},
                              {"group", ko_point(i).pretty()}});
      provenance.push_back({{"ko_degree", (((i - sd.d) % 8) + 8) % 8},
                            {"origin", "R^{0," + std::to_string(sd.d) + "} cell"},
                            {"group", ko_point(i - sd.d).pretty()}});
    } else {
      g = kq_torus(degree, sd.d, sd.reduced);
      for (const TorusSummand& s : kq_torus_summands(degree, sd.d, sd.reduced))
        provenance.push_back({{"k", s.k},
                              {"multiplicity", s.multiplicity},
                              {"ko_degree", s.ko_degree},
                              {"group", s.group.pretty()}});
    }
    j["space"] = sd.name();
    j["degree"] = degree;
    j["reduced"] = sd.reduced;
    j["free_rank"] = g.free_rank;
    j["torsion_orders"] = g.torsion_orders;
    j["pretty"] = g.pretty();
    j["summands"] = provenance;
    *json_out = dup_string(j.dump(2));
    return Z2K_OK;
  });
}

}  // extern "C"
