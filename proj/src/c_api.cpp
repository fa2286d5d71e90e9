// Copyright 2026 The Qualia Cluster Authors.
//
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

#include "qualia/qualia_c.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <span>
#include <string>

#include "qualia/error.hpp"
#include "qualia/features.hpp"
#include "qualia/pipeline.hpp"
#include "qualia/sib.hpp"

struct qc_config {
  qualia::PipelineConfig config;
};

struct qc_matrix {
  qualia::FeatureMatrix matrix;
};

struct qc_assignment {
  qualia::ClusterAssignment assignment;
};

namespace {

thread_local std::string last_error;
thread_local std::string last_summary;

qc_status StatusFor(qualia::ErrorKind kind) {
  switch (kind) {
    case qualia::ErrorKind::kIo:
      return QC_ERR_IO;
    case qualia::ErrorKind::kFormat:
      return QC_ERR_FORMAT;
    case qualia::ErrorKind::kConfig:
      return QC_ERR_CONFIG;
    case qualia::ErrorKind::kArgument:
      return QC_ERR_ARGUMENT;
    case qualia::ErrorKind::kEvaluation:
      return QC_ERR_EVALUATION;
    case qualia::ErrorKind::kUndefinedDistribution:
      return QC_ERR_UNDEFINED;
  }
  return QC_ERR_INTERNAL;
}

template <typename F>
qc_status Guard(F &&body) {
  try {
    last_error.clear();
    body();
    return QC_OK;
  } catch (const qualia::Error &error) {
    last_error = error.what();
    return StatusFor(error.kind());
  } catch (const std::bad_alloc &) {
    last_error = "out of memory";
  } catch (const std::exception &error) {
    last_error = error.what();
  } catch (...) {
    last_error = "unknown error";
  }
  return QC_ERR_INTERNAL;
}

qc_status NullArgument(const char *name) {
  last_error = std::string("null argument: ") + name;
  return QC_ERR_ARGUMENT;
}

template <typename F>
qc_status Command(const qc_config *config, F &&run) {
  if (config == nullptr) return NullArgument("config");
  return Guard([&] {
    last_summary.clear();
    last_summary = run(config->config);
  });
}

}  // namespace

extern "C" {

const char *qc_version(void) { return qualia::kVersion; }
const char *qc_last_error(void) { return last_error.c_str(); }
const char *qc_last_summary(void) { return last_summary.c_str(); }

const char *qc_status_name(qc_status status) {
  switch (status) {
    case QC_OK:
      return "ok";
    case QC_ERR_IO:
      return "io error";
    case QC_ERR_FORMAT:
      return "format error";
    case QC_ERR_CONFIG:
      return "configuration error";
    case QC_ERR_ARGUMENT:
      return "argument error";
    case QC_ERR_EVALUATION:
      return "evaluation error";
    case QC_ERR_UNDEFINED:
      return "undefined distribution";
    case QC_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

qc_status qc_config_create(qc_config **out) {
  if (out == nullptr) return NullArgument("out");
  return Guard([&] { *out = new qc_config(); });
}

void qc_config_destroy(qc_config *config) { delete config; }

qc_status qc_config_set(qc_config *config, const char *key,
                        const char *value) {
  if (config == nullptr) return NullArgument("config");
  if (key == nullptr) return NullArgument("key");
  if (value == nullptr) return NullArgument("value");
  return Guard([&] { config->config.Set(key, value); });
}

qc_status qc_config_append(qc_config *config, const char *key,
                           const char *value) {
  if (config == nullptr) return NullArgument("config");
  if (key == nullptr) return NullArgument("key");
  if (value == nullptr) return NullArgument("value");
  return Guard([&] { config->config.Append(key, value); });
}

qc_status qc_config_load_file(qc_config *config, const char *path) {
  if (config == nullptr) return NullArgument("config");
  if (path == nullptr) return NullArgument("path");
  return Guard([&] { config->config.LoadFile(path); });
}

qc_status qc_config_manifest(const qc_config *config, char **out) {
  if (config == nullptr) return NullArgument("config");
  if (out == nullptr) return NullArgument("out");
  return Guard([&] {
    const std::string text = config->config.Manifest();
    char *copy = static_cast<char *>(std::malloc(text.size() + 1));
    if (copy == nullptr) throw std::bad_alloc();
    std::memcpy(copy, text.c_str(), text.size() + 1);
    *out = copy;
  });
}

void qc_string_free(char *text) { std::free(text); }

qc_status qc_cmd_extract(const qc_config *config, qc_extract_stats *stats) {
  return Command(config, [&](const qualia::PipelineConfig &c) {
    qualia::ExtractStats computed;
    std::string summary = qualia::RunExtract(c, &computed);
    if (stats != nullptr) {
      stats->seeds_total = computed.seeds_total;
      stats->seeds_covered = computed.seeds_covered;
      stats->descriptors = computed.descriptors;
      stats->occurrences = computed.occurrences;
    }
    return summary;
  });
}

qc_status qc_cmd_build(const qc_config *config) {
  return Command(config, qualia::RunBuild);
}
qc_status qc_cmd_filter(const qc_config *config) {
  return Command(config, qualia::RunFilter);
}
qc_status qc_cmd_bootstrap(const qc_config *config) {
  return Command(config, qualia::RunBootstrap);
}
qc_status qc_cmd_cluster(const qc_config *config) {
  return Command(config, qualia::RunCluster);
}
qc_status qc_cmd_subcluster(const qc_config *config) {
  return Command(config, qualia::RunSubcluster);
}
qc_status qc_cmd_report(const qc_config *config) {
  return Command(config, qualia::RunReport);
}
qc_status qc_cmd_pipeline(const qc_config *config) {
  return Command(config, qualia::RunPipeline);
}
qc_status qc_cmd_gen_synthetic(const qc_config *config) {
  return Command(config, qualia::RunGenSynthetic);
}

qc_status qc_matrix_load(const char *path, qc_matrix **out) {
  if (path == nullptr) return NullArgument("path");
  if (out == nullptr) return NullArgument("out");
  return Guard([&] {
    auto *handle = new qc_matrix{qualia::LoadMatrix(path)};
    *out = handle;
  });
}

qc_status qc_matrix_save(const qc_matrix *matrix, const char *path) {
  if (matrix == nullptr) return NullArgument("matrix");
  if (path == nullptr) return NullArgument("path");
  return Guard([&] { qualia::SaveMatrix(matrix->matrix, path); });
}

void qc_matrix_destroy(qc_matrix *matrix) { delete matrix; }

size_t qc_matrix_num_rows(const qc_matrix *matrix) {
  return matrix == nullptr ? 0 : matrix->matrix.num_rows();
}

size_t qc_matrix_num_columns(const qc_matrix *matrix) {
  return matrix == nullptr ? 0 : matrix->matrix.Columns().size();
}

int64_t qc_matrix_total_mass(const qc_matrix *matrix) {
  return matrix == nullptr ? 0 : matrix->matrix.TotalMass();
}

qc_status qc_matrix_filter_shared(const qc_matrix *matrix, int min_sharers,
                                  qc_matrix **out) {
  if (matrix == nullptr) return NullArgument("matrix");
  if (out == nullptr) return NullArgument("out");
  return Guard([&] {
    auto *handle =
        new qc_matrix{qualia::FilterShared(matrix->matrix, min_sharers)};
    *out = handle;
  });
}

qc_status qc_sib_run(const qc_matrix *matrix, int k, int restarts,
                     uint64_t seed, const char *prior, qc_assignment **out) {
  if (matrix == nullptr) return NullArgument("matrix");
  if (out == nullptr) return NullArgument("out");
  return Guard([&] {
    qualia::SibOptions options;
    options.k = k;
    options.restarts = restarts;
    options.rng_seed = seed;
    if (prior != nullptr) options.prior = qualia::ParsePrior(prior);
    auto *handle = new qc_assignment{qualia::SibRun(matrix->matrix, options)};
    *out = handle;
  });
}

void qc_assignment_destroy(qc_assignment *assignment) { delete assignment; }

double qc_assignment_objective(const qc_assignment *assignment) {
  return assignment == nullptr ? 0.0 : assignment->assignment.objective;
}

int qc_assignment_k(const qc_assignment *assignment) {
  return assignment == nullptr ? 0 : assignment->assignment.k;
}

int qc_assignment_cluster_of(const qc_assignment *assignment,
                             const char *noun) {
  if (assignment == nullptr || noun == nullptr) return -1;
  return assignment->assignment.ClusterOf(noun).value_or(-1);
}

qc_status qc_assignment_save(const qc_assignment *assignment,
                             const char *path) {
  if (assignment == nullptr) return NullArgument("assignment");
  if (path == nullptr) return NullArgument("path");
  return Guard([&] { qualia::SaveAssignment(assignment->assignment, path); });
}

qc_status qc_js_divergence(const double *p, const double *q, size_t length,
                           double pi1, double pi2, double *out) {
  if ((p == nullptr || q == nullptr) && length > 0) {
    return NullArgument("p/q");
  }
  if (out == nullptr) return NullArgument("out");
  return Guard([&] {
    *out = qualia::JsDivergence(std::span<const double>(p, length),
                                std::span<const double>(q, length), pi1, pi2);
  });
}

}  // extern "C"
