// Copyright 2026 The copeland-bandits Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* C interface to the copeland dueling-bandit library.
 *
 * Every function returns a cb_status. On failure a message describing the
 * error is available from cb_last_error() on the calling thread until the
 * next call into the library from that thread.
 *
 * Functions that produce text write a NUL-terminated string into a caller
 * buffer. `*needed` always receives the full length including the NUL; if
 * `capacity` is too small the buffer is left untouched and
 * CB_ERR_BUFFER_TOO_SMALL is returned. Passing buf == NULL with capacity 0
 * is the way to query the size.
 */
#ifndef COPELAND_COPELAND_H_
#define COPELAND_COPELAND_H_

#include <stddef.h>
#include <stdint.h>

#if defined(COPELAND_BUILDING_LIBRARY)
#define CB_API __attribute__((visibility("default")))
#else
#define CB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cb_status {
  CB_OK = 0,
  CB_ERR_INVALID_ARGUMENT = 1,
  CB_ERR_INCONSISTENT = 2,
  CB_ERR_NON_CONVERGENCE = 3,
  CB_ERR_DIVERGENCE = 4,
  CB_ERR_IO = 5,
  CB_ERR_CONFIG = 6,
  CB_ERR_BUFFER_TOO_SMALL = 7,
  CB_ERR_INTERNAL = 8
} cb_status;

typedef enum cb_notion {
  CB_NOTION_COPELAND = 0,
  CB_NOTION_BORDA = 1,
  CB_NOTION_RANDOM_WALK = 2
} cb_notion;

typedef enum cb_analysis {
  CB_ANALYSIS_CONDORCET = 0,
  CB_ANALYSIS_STATS = 1,
  CB_ANALYSIS_GAPS = 2,
  CB_ANALYSIS_OVERLAP = 3
} cb_analysis;

typedef struct cb_matrix cb_matrix;

CB_API const char* cb_last_error(void);
CB_API const char* cb_status_name(cb_status status);

/* `source` is a fixture name (P3CYCLE, P4, PCOND5), "cyclic:K:gamma",
 * "random:K:min_margin[:seed]", or a CSV file path. */
CB_API cb_status cb_matrix_load(const char* source, cb_matrix** out);
/* K*K row-major probabilities; validated with ties allowed. */
CB_API cb_status cb_matrix_from_values(size_t arms, const double* values, cb_matrix** out);
CB_API void cb_matrix_free(cb_matrix* matrix);

CB_API cb_status cb_matrix_arms(const cb_matrix* matrix, size_t* arms);
CB_API cb_status cb_matrix_value(const cb_matrix* matrix, size_t i, size_t j, double* value);
/* Writes the 17-digit CSV form. */
CB_API cb_status cb_matrix_save(const cb_matrix* matrix, const char* path);

/* Winner set under `notion`, ascending. `*count` receives the set size;
 * CB_ERR_BUFFER_TOO_SMALL if it exceeds `capacity`. */
CB_API cb_status cb_matrix_winners(const cb_matrix* matrix, cb_notion notion, size_t* arms,
                                   size_t capacity, size_t* count);
/* `scores` must hold K entries. */
CB_API cb_status cb_matrix_copeland_scores(const cb_matrix* matrix, int* scores);
/* *found is 1 and *arm set if a Condorcet winner exists, else *found is 0. */
CB_API cb_status cb_matrix_condorcet(const cb_matrix* matrix, int* found, size_t* arm);

/* JSON summary of scores and winner sets. */
CB_API cb_status cb_matrix_summary_json(const cb_matrix* matrix, char* buf, size_t capacity,
                                        size_t* needed);

/* JSON bound report (cDelta, nHatTotal, tDelta, a1, a2, a3, ...). The matrix
 * must not contain ties. */
CB_API cb_status cb_bound_report_json(const cb_matrix* matrix, double alpha, double delta,
                                      double horizon, char* buf, size_t capacity,
                                      size_t* needed);

/* Samples `samples` k-armed restrictions of `matrix` and reports the chosen
 * statistic as JSON. */
CB_API cb_status cb_analyze_json(const cb_matrix* matrix, cb_analysis analysis, size_t k,
                                 size_t samples, uint64_t seed, char* buf, size_t capacity,
                                 size_t* needed);

typedef struct cb_run_options {
  unsigned threads;        /* 0 = hardware concurrency */
  int override_seed;       /* nonzero: use `seed` instead of the config's */
  uint64_t seed;
  const char* output;      /* NULL: the config's output path */
} cb_run_options;

/* Runs the experiment described by a JSON config file and writes the trace
 * CSV. `options` may be NULL. Config problems yield CB_ERR_CONFIG. */
CB_API cb_status cb_run_config_file(const char* config_path, const cb_run_options* options);

#ifdef __cplusplus
}
#endif

#endif /* COPELAND_COPELAND_H_ */
