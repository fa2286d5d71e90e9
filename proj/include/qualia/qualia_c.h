/* Copyright 2026 The Qualia Cluster Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the qualia clustering library.
 *
 * Every call returns a qc_status. On failure qc_last_error() describes the
 * error; on success of a command qc_last_summary() holds its report. Both
 * strings are thread-local and valid until the next call on the same
 * thread. Handles are opaque and must be released with their destroy
 * function. */

#ifndef QUALIA_QUALIA_C_H_
#define QUALIA_QUALIA_C_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define QC_API __declspec(dllexport)
#else
#define QC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  QC_OK = 0,
  QC_ERR_IO = 1,
  QC_ERR_FORMAT = 2,
  QC_ERR_CONFIG = 3,
  QC_ERR_ARGUMENT = 4,
  QC_ERR_EVALUATION = 5,
  QC_ERR_UNDEFINED = 6, /* distribution of an all-zero row */
  QC_ERR_INTERNAL = 7,
} qc_status;

typedef struct qc_config qc_config;
typedef struct qc_matrix qc_matrix;
typedef struct qc_assignment qc_assignment;

typedef struct {
  size_t seeds_total;
  size_t seeds_covered;
  size_t descriptors;
  size_t occurrences;
} qc_extract_stats;

QC_API const char *qc_version(void);
QC_API const char *qc_last_error(void);
QC_API const char *qc_last_summary(void);
QC_API const char *qc_status_name(qc_status status);

/* Configuration: the same keys as the key=value config file. */
QC_API qc_status qc_config_create(qc_config **out);
QC_API void qc_config_destroy(qc_config *config);
QC_API qc_status qc_config_set(qc_config *config, const char *key,
                               const char *value);
/* List-valued keys ("corpus") gain an element; other keys are set. */
QC_API qc_status qc_config_append(qc_config *config, const char *key,
                                  const char *value);
QC_API qc_status qc_config_load_file(qc_config *config, const char *path);
/* Copies the manifest text into a new string owned by the caller; release
 * it with qc_string_free. */
QC_API qc_status qc_config_manifest(const qc_config *config, char **out);
QC_API void qc_string_free(char *text);

/* Pipeline stages. `stats` may be NULL. */
QC_API qc_status qc_cmd_extract(const qc_config *config,
                                qc_extract_stats *stats);
QC_API qc_status qc_cmd_build(const qc_config *config);
QC_API qc_status qc_cmd_filter(const qc_config *config);
QC_API qc_status qc_cmd_bootstrap(const qc_config *config);
QC_API qc_status qc_cmd_cluster(const qc_config *config);
QC_API qc_status qc_cmd_subcluster(const qc_config *config);
QC_API qc_status qc_cmd_report(const qc_config *config);
QC_API qc_status qc_cmd_pipeline(const qc_config *config);
QC_API qc_status qc_cmd_gen_synthetic(const qc_config *config);

/* Feature matrices. */
QC_API qc_status qc_matrix_load(const char *path, qc_matrix **out);
QC_API qc_status qc_matrix_save(const qc_matrix *matrix, const char *path);
QC_API void qc_matrix_destroy(qc_matrix *matrix);
QC_API size_t qc_matrix_num_rows(const qc_matrix *matrix);
QC_API size_t qc_matrix_num_columns(const qc_matrix *matrix);
QC_API int64_t qc_matrix_total_mass(const qc_matrix *matrix);
QC_API qc_status qc_matrix_filter_shared(const qc_matrix *matrix,
                                         int min_sharers, qc_matrix **out);

/* Clustering. `prior` is "mass" or "uniform" (NULL: mass). */
QC_API qc_status qc_sib_run(const qc_matrix *matrix, int k, int restarts,
                            uint64_t seed, const char *prior,
                            qc_assignment **out);
QC_API void qc_assignment_destroy(qc_assignment *assignment);
QC_API double qc_assignment_objective(const qc_assignment *assignment);
QC_API int qc_assignment_k(const qc_assignment *assignment);
/* Cluster id of `noun`, or -1 if it is not clustered. */
QC_API int qc_assignment_cluster_of(const qc_assignment *assignment,
                                    const char *noun);
QC_API qc_status qc_assignment_save(const qc_assignment *assignment,
                                    const char *path);

/* Weighted Jensen-Shannon divergence in bits of two aligned vectors. */
QC_API qc_status qc_js_divergence(const double *p, const double *q,
                                  size_t length, double pi1, double pi2,
                                  double *out);

#ifdef __cplusplus
}
#endif

#endif /* QUALIA_QUALIA_C_H_ */
