/***********************************************************************
*  Copyright 2026 the nsk authors
*
*  Licensed under the Apache License, Version 2.0 (the "License");
*  you may not use this file except in compliance with the License.
*  You may obtain a copy of the License at
*
*      http://www.apache.org/licenses/LICENSE-2.0
*
*  Unless required by applicable law or agreed to in writing, software
*  distributed under the License is distributed on an "AS IS" BASIS,
*  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or
*  implied. See the License for the specific language governing
*  permissions and limitations under the License.
***********************************************************************/

/* C API of the nsk shared library: opaque handles plus status codes.
 * Every entry point returns NSK_OK on success; on failure the thread-local
 * message behind nsk_last_error() describes what went wrong. */

#ifndef NSK_NSK_H
#define NSK_NSK_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nsk_status {
  NSK_OK = 0,
  NSK_ERR_VALIDATION = 1, /* bad arguments or inconsistent configuration */
  NSK_ERR_NUMERIC = 2,    /* vacuum, NaN or another numerical abort */
  NSK_ERR_IO = 3          /* unreadable/unwritable paths */
} nsk_status;

const char* nsk_version(void);
const char* nsk_last_error(void);

/* ---- fields ---------------------------------------------------------- */

typedef struct nsk_field nsk_field;

nsk_status nsk_field_load(const char* path, nsk_field** out);
nsk_status nsk_field_save(const nsk_field* f, const char* path);
void nsk_field_free(nsk_field* f);

nsk_status nsk_field_info(const nsk_field* f, int* dim, int* n, double* length,
                          int* rank);
nsk_status nsk_field_stats(const nsk_field* f, double* min, double* max,
                           double* l2);
/* Plain homogeneous Besov norm; pass r/p <= 0 for infinity. */
nsk_status nsk_field_besov_norm(const nsk_field* f, double s, double p,
                                double r, double* out);

/* ---- command-level entries (the CLI is a thin shell over these) ------ */

/* Runs a simulation from a JSON config; writes trajectory snapshots,
 * diagnostics CSV and the run manifest under out_dir.  seed_override < 0
 * keeps the config seed. */
nsk_status nsk_cmd_simulate(const char* config_path, const char* out_dir,
                            int64_t seed_override, int quiet);

/* Constructs the configured initial data, writes the field snapshot and a
 * JSON norm report without simulating. */
nsk_status nsk_cmd_data(const char* config_path, const char* out_dir,
                        int quiet);

/* Linearized-system block study: decay fit and dyadic Lyapunov series.
 * Emits CSV (t, block_norm, k_l) and a JSON verdict. */
nsk_status nsk_cmd_semigroup(double mu, double lambda, double kappa, double K,
                             int block, double tmax, int samples,
                             const char* out_dir, int quiet);

/* Named verification suites (NULL = all).  *failures receives the count. */
nsk_status nsk_cmd_verify(const char* suite_or_null, const char* out_dir,
                          int quiet, int* failures);

/* Besov norm report of a stored field snapshot (per-block CSV + JSON). */
nsk_status nsk_cmd_besov(const char* field_path, double s, double p, double r,
                         const char* out_dir, int quiet);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* NSK_NSK_H */
