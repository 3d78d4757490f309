// Copyright 2026 The polydyn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* C interface to polydyn: triangular permutation polynomial systems over
 * prime fields, the pseudorandom generator they define, and the analysis
 * tools around it.
 *
 * Every call returns a pdyn_status. On failure, pdyn_last_error() describes
 * the problem for the calling thread. Strings returned through char** must be
 * released with pdyn_string_free. Handles are single-owner and not
 * thread-safe; distinct handles may be used from distinct threads.
 */
#ifndef POLYDYN_POLYDYN_H
#define POLYDYN_POLYDYN_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  ifdef POLYDYN_BUILDING_LIBRARY
#    define PDYN_API __declspec(dllexport)
#  else
#    define PDYN_API __declspec(dllimport)
#  endif
#else
#  define PDYN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pdyn_status {
    PDYN_OK = 0,
    PDYN_VALIDATION = 1, /* structural violation or failed permutation check */
    PDYN_USAGE = 2,      /* bad arguments or malformed input */
    PDYN_BUDGET = 3,     /* work or memory budget exhausted */
    PDYN_IO = 4,
    PDYN_INTERNAL = 5
} pdyn_status;

typedef struct pdyn_system pdyn_system;
typedef struct pdyn_generator pdyn_generator;

/* Zero fields select the library defaults. */
typedef struct pdyn_run_options {
    unsigned threads;
    uint64_t budget;
} pdyn_run_options;

typedef enum pdyn_family {
    PDYN_FAMILY_CHAIN = 0,        /* g_i = X_{i+1}^2 - c, c the smallest nonresidue */
    PDYN_FAMILY_FULL_PRODUCT = 1, /* g_i = prod_{j>i} (X_j^2 - c) */
    PDYN_FAMILY_PLANTED_ZERO = 2  /* chain, but g_0 = X_1^2 - 1, which vanishes at X_1 = 1 */
} pdyn_family;

/* Receives successive chunks of generator output; return nonzero to abort. */
typedef int (*pdyn_write_fn)(void* ctx, const char* data, size_t len);

PDYN_API const char* pdyn_version(void);
PDYN_API const char* pdyn_status_name(pdyn_status status);
PDYN_API const char* pdyn_last_error(void);
PDYN_API void pdyn_string_free(char* s);

/* Systems ---------------------------------------------------------------- */

PDYN_API pdyn_status pdyn_system_from_json(const char* text, pdyn_system** out);
PDYN_API pdyn_status pdyn_system_load(const char* path, pdyn_system** out);
/* h_i = h[i] (missing entries 0) for i < m, f_m = a X_m + b. */
PDYN_API pdyn_status pdyn_system_make(uint64_t p, size_t m, pdyn_family family, const uint64_t* h, size_t h_len,
                                      uint64_t a, uint64_t b, pdyn_system** out);
PDYN_API void pdyn_system_free(pdyn_system* sys);

PDYN_API pdyn_status pdyn_system_to_json(const pdyn_system* sys, char** out);
PDYN_API pdyn_status pdyn_system_save(const pdyn_system* sys, const char* path);
PDYN_API uint64_t pdyn_system_modulus(const pdyn_system* sys);
PDYN_API size_t pdyn_system_m(const pdyn_system* sys);

/* Checks the structural conditions and whether the map permutes F_p^{m+1}.
 * `report` receives a JSON object in every case where the system could be
 * examined. Returns PDYN_VALIDATION on violations or a found zero of some
 * g_i, PDYN_BUDGET when the permutation check was inconclusive. */
PDYN_API pdyn_status pdyn_system_validate(const pdyn_system* sys, const pdyn_run_options* opts, char** report);

/* out[0..m] = F(x[0..m]). */
PDYN_API pdyn_status pdyn_system_apply(const pdyn_system* sys, const uint64_t* x, uint64_t* out);

/* Generator -------------------------------------------------------------- */

PDYN_API pdyn_status pdyn_generator_new(const pdyn_system* sys, const uint64_t* seed, size_t seed_len,
                                        int allow_fast_path, pdyn_generator** out);
PDYN_API void pdyn_generator_free(pdyn_generator* gen);
PDYN_API pdyn_status pdyn_generator_jump(pdyn_generator* gen, uint64_t k);
/* out receives the m+1 state coordinates. */
PDYN_API pdyn_status pdyn_generator_state(const pdyn_generator* gen, uint64_t* out);
PDYN_API uint64_t pdyn_generator_steps(const pdyn_generator* gen);
/* "generic" or "product_form". */
PDYN_API const char* pdyn_generator_path(const pdyn_generator* gen);
/* count * m numerators u_{n,j}, row by row; the denominator is p. */
PDYN_API pdyn_status pdyn_generator_next(pdyn_generator* gen, size_t count, uint64_t* numerators);
/* format: "csv", "ndjson" or "u64le". */
PDYN_API pdyn_status pdyn_generator_write(pdyn_generator* gen, size_t count, const char* format, pdyn_write_fn fn,
                                          void* ctx);

/* Analyses (text results) ------------------------------------------------ */

/* CSV i,k,deg_g,predicted_leading,residual for k = k_first..k_max; summary
 * receives one JSON line per i (may be NULL). opts->budget caps the number
 * of terms in the iterates. */
PDYN_API pdyn_status pdyn_degrees(const pdyn_system* sys, unsigned k_first, unsigned k_max,
                                  const pdyn_run_options* opts, char** csv, char** summary);

/* The collapse sum for coefficient vector a (length m, nonzero), k >= l, by
 * both routes, as one CSV record with header. */
PDYN_API pdyn_status pdyn_expsum(const pdyn_system* sys, const uint64_t* a, size_t a_len, unsigned k, unsigned l,
                                 const pdyn_run_options* opts, char** csv);

/* V_{a,c}(M,N) for N = 1..n_max on the window starting at `shift`, with the
 * bound and ratio per row. growth_flag may be NULL. */
PDYN_API pdyn_status pdyn_vsum(const pdyn_system* sys, const uint64_t* a, size_t a_len, int64_t c, uint64_t M,
                               uint64_t n_max, uint64_t shift, const pdyn_run_options* opts, char** csv,
                               int* growth_flag);

/* Discrepancy of a point set given as CSV text. method: "1d", "grid" or
 * "etk" (L > 1 for etk). denominator 0 means coordinates are decimals or
 * fractions; otherwise they are integer numerators over it. */
PDYN_API pdyn_status pdyn_discrepancy(const char* points_csv, const char* method, unsigned L, uint64_t denominator,
                                      char** csv);

/* Discrepancy of the first N outputs over every seed. thresholds may be NULL
 * for the defaults 0.5,1,2,4. mean_decreasing may be NULL. */
PDYN_API pdyn_status pdyn_avg_discrepancy(const pdyn_system* sys, const uint64_t* N, size_t n_count,
                                          const double* thresholds, size_t t_count, const pdyn_run_options* opts,
                                          char** summary_csv, char** distribution_csv, int* mean_decreasing);

/* One NDJSON record with the period and preperiod of a seed. */
PDYN_API pdyn_status pdyn_period(const pdyn_system* sys, const uint64_t* seed, size_t seed_len, int with_projection,
                                 const pdyn_run_options* opts, char** ndjson);

/* One NDJSON record with the cycle structure of the whole state space. */
PDYN_API pdyn_status pdyn_cycle_structure(const pdyn_system* sys, const pdyn_run_options* opts, char** ndjson);

/* Throughput and multiplication counts; one JSON line. */
PDYN_API pdyn_status pdyn_bench(const pdyn_system* sys, const uint64_t* seed, size_t seed_len, uint64_t steps,
                                int allow_fast_path, char** json);

#ifdef __cplusplus
}
#endif

#endif /* POLYDYN_POLYDYN_H */
