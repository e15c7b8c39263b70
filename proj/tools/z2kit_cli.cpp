// Command-line front end for z2kit. Talks to the core exclusively through the
// C API, like any external client would.

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "z2kit.h"

namespace {

constexpr size_t kErrLen = 1024;

struct ModelOptions {
  std::string model;
  std::vector<std::string> params;
};

z2k_model* open_model(const ModelOptions& opt, char* errbuf) {
  std::vector<std::string> names;
  std::vector<double> values;
  for (const std::string& p : opt.params) {
    size_t eq = p.find('=');
    if (eq == std::string::npos) {
      std::snprintf(errbuf, kErrLen, "bad --param '%s', expected name=value", p.c_str());
      return nullptr;
    }
    names.push_back(p.substr(0, eq));
    try {
      values.push_back(std::stod(p.substr(eq + 1)));
    } catch (const std::exception&) {
      std::snprintf(errbuf, kErrLen, "bad --param value in '%s'", p.c_str());
      return nullptr;
    }
  }
  std::vector<const char*> name_ptrs;
  for (const std::string& n : names) name_ptrs.push_back(n.c_str());

  if (opt.model.rfind("builtin:", 0) == 0) {
    return z2k_model_builtin(opt.model.substr(8).c_str(), name_ptrs.data(), values.data(),
                             name_ptrs.size(), errbuf, kErrLen);
  }
  z2k_model* m = z2k_model_load_file(opt.model.c_str(), errbuf, kErrLen);
  if (m && !names.empty()) {
    // Apply overrides by regenerating through the builtin id when present.
    char* json = nullptr;
    if (z2k_model_to_json(m, &json, errbuf, kErrLen) == Z2K_OK) z2k_string_free(json);
    std::fprintf(stderr, "note: --param overrides apply to builtin models only\n");
  }
  return m;
}

int write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::fputs(text.c_str(), stdout);
    return 0;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::fprintf(stderr, "error: cannot open output file '%s'\n", out_path.c_str());
    return 1;
  }
  out << text;
  return 0;
}

int status_to_exit(z2k_status s, const char* errbuf) {
  if (s == Z2K_OK) return 0;
  if (s == Z2K_ERR_DISAGREEMENT) {
    std::fprintf(stderr, "warning: %s\n", errbuf);
    return 2;
  }
  std::fprintf(stderr, "error: %s\n", errbuf);
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"z2kit: Z2 invariants of time-reversal invariant band models"};
  app.require_subcommand(1);

  char errbuf[kErrLen] = {0};

  // compute
  auto* compute = app.add_subcommand("compute", "run the invariant methods and emit a report");
  ModelOptions c_model;
  int c_grid = 24;
  std::string c_methods = "all", c_out;
  compute->add_option("--model", c_model.model, "model file or builtin:<name>")->required();
  compute->add_option("--grid", c_grid, "grid points per axis (even, >= 8)");
  compute->add_option("--methods", c_methods, "comma list: km,obstruction,wannier,chern,all");
  compute->add_option("--out", c_out, "write the report here instead of stdout");
  compute->add_option("--param", c_model.params, "override builtin parameter name=value");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "sweep one model parameter, emit CSV");
  ModelOptions s_model;
  int s_grid = 16, s_steps = 11;
  std::string s_param, s_range, s_out;
  sweep->add_option("--model", s_model.model, "model file or builtin:<name>")->required();
  sweep->add_option("--param", s_param, "parameter to sweep")->required();
  sweep->add_option("--range", s_range, "lo:hi")->required();
  sweep->add_option("--steps", s_steps, "number of samples");
  sweep->add_option("--grid", s_grid, "grid points per axis");
  sweep->add_option("--out", s_out, "write the CSV here instead of stdout");

  // kgroup
  auto* kgroup = app.add_subcommand("kgroup", "symbolic K-group of a sphere or torus");
  std::string k_space;
  int k_degree = 0;
  bool k_reduced = false;
  std::string k_out;
  kgroup->add_option("--space", k_space, "pt, S<d> or T<d>")->required();
  kgroup->add_option("--degree", k_degree, "degree j of KQ^{-j}");
  kgroup->add_flag("--reduced", k_reduced, "reduced group (kernel of the restriction map)");
  kgroup->add_option("--out", k_out, "write the record here instead of stdout");

  // wannier
  auto* wannier = app.add_subcommand("wannier", "Wilson-loop eigenphase spectrum CSV");
  ModelOptions w_model;
  int w_grid = 24;
  std::string w_out;
  wannier->add_option("--model", w_model.model, "model file or builtin:<name>")->required();
  wannier->add_option("--grid", w_grid, "grid points per axis");
  wannier->add_option("--out", w_out, "write the CSV here instead of stdout");
  wannier->add_option("--param", w_model.params, "override builtin parameter name=value");

  CLI11_PARSE(app, argc, argv);

  if (compute->parsed()) {
    z2k_model* m = open_model(c_model, errbuf);
    if (!m) return status_to_exit(Z2K_ERR_VALIDATION, errbuf);
    char* report = nullptr;
    z2k_status s = z2k_compute(m, c_grid, c_methods.c_str(), &report, errbuf, kErrLen);
    z2k_model_free(m);
    if (report) {
      int w = write_output(std::string(report) + "\n", c_out);
      z2k_string_free(report);
      if (w != 0) return 1;
    }
    return status_to_exit(s, errbuf);
  }

  if (sweep->parsed()) {
    size_t colon = s_range.find(':');
    if (colon == std::string::npos) {
      std::fprintf(stderr, "error: --range expects lo:hi\n");
      return 1;
    }
    double lo = 0, hi = 0;
    try {
      lo = std::stod(s_range.substr(0, colon));
      hi = std::stod(s_range.substr(colon + 1));
    } catch (const std::exception&) {
      std::fprintf(stderr, "error: --range expects numbers lo:hi\n");
      return 1;
    }
    z2k_model* m = open_model(s_model, errbuf);
    if (!m) return status_to_exit(Z2K_ERR_VALIDATION, errbuf);
    char* csv = nullptr;
    z2k_status s = z2k_sweep(m, s_param.c_str(), lo, hi, s_steps, s_grid, &csv, errbuf,
                             kErrLen);
    z2k_model_free(m);
    if (s != Z2K_OK) return status_to_exit(s, errbuf);
    int w = write_output(csv, s_out);
    z2k_string_free(csv);
    return w;
  }

  if (kgroup->parsed()) {
    char* json = nullptr;
    z2k_status s =
        z2k_kgroup(k_space.c_str(), k_degree, k_reduced ? 1 : 0, &json, errbuf, kErrLen);
    if (s != Z2K_OK) return status_to_exit(s, errbuf);
    int w = write_output(std::string(json) + "\n", k_out);
    z2k_string_free(json);
    return w;
  }

  if (wannier->parsed()) {
    z2k_model* m = open_model(w_model, errbuf);
    if (!m) return status_to_exit(Z2K_ERR_VALIDATION, errbuf);
    char* csv = nullptr;
    z2k_status s = z2k_wannier(m, w_grid, &csv, errbuf, kErrLen);
    z2k_model_free(m);
    if (s != Z2K_OK) return status_to_exit(s, errbuf);
    int w = write_output(csv, w_out);
    z2k_string_free(csv);
    return w;
  }
  return 1;
}
