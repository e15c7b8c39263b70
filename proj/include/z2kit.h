/* z2kit -- Z2 invariants of time-reversal invariant band models.
 *
 * C API over the C++ core: opaque handles, integer status codes, JSON/CSV
 * strings for structured results. Every function that can fail takes an
 * optional error buffer which receives a NUL-terminated message.
 */
#ifndef Z2KIT_H
#define Z2KIT_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct z2k_model z2k_model;

typedef enum {
  Z2K_OK = 0,
  Z2K_ERR_VALIDATION = 1,   /* schema, symmetry or precondition failure */
  Z2K_ERR_DISAGREEMENT = 2, /* methods ran but their Z2 values differ */
  Z2K_ERR_NUMERIC = 3,      /* gap closing, coarse grid, quantization failure */
  Z2K_ERR_BAD_ARGUMENT = 4
} z2k_status;

const char* z2k_version(void);

/* Free a string returned through an out-parameter. */
void z2k_string_free(char* s);

/* Builtin models: kane_mele, bhz, qwz_pair, atomic, strong_ti_3d.
 * Parameters not listed keep their defaults. Returns NULL on failure. */
z2k_model* z2k_model_builtin(const char* name, const char* const* param_names,
                             const double* param_values, size_t n_params,
                             char* errbuf, size_t errbuf_len);

z2k_model* z2k_model_from_json(const char* json_text, char* errbuf, size_t errbuf_len);
z2k_model* z2k_model_load_file(const char* path, char* errbuf, size_t errbuf_len);
void z2k_model_free(z2k_model* m);

z2k_status z2k_model_to_json(const z2k_model* m, char** json_out, char* errbuf,
                             size_t errbuf_len);

/* Runs the selected methods ("km,obstruction,wannier,chern" or "all") on an
 * N^d grid and writes the JSON report. Z2K_OK on agreement;
 * Z2K_ERR_DISAGREEMENT when methods disagree (the report is still written). */
z2k_status z2k_compute(const z2k_model* m, int grid_n, const char* methods,
                       char** report_json, char* errbuf, size_t errbuf_len);

/* Parameter sweep CSV: value,nu,upsilon_obstruction,upsilon_wannier,gap,status.
 * Rows where the spectrum closes are marked "gap-closing". */
z2k_status z2k_sweep(const z2k_model* m, const char* param_name, double lo, double hi,
                     int steps, int grid_n, char** csv_out, char* errbuf,
                     size_t errbuf_len);

/* Wilson-loop eigenphase spectrum CSV: k_perp,theta_1..theta_n. */
z2k_status z2k_wannier(const z2k_model* m, int grid_n, char** csv_out, char* errbuf,
                       size_t errbuf_len);

/* K-group query; space is "pt", "S<d>" or "T<d>". The JSON record carries
 * free_rank, torsion_orders, pretty and the summand provenance. */
z2k_status z2k_kgroup(const char* space, int degree, int reduced, char** json_out,
                      char* errbuf, size_t errbuf_len);

#ifdef __cplusplus
}
#endif

#endif /* Z2KIT_H */
