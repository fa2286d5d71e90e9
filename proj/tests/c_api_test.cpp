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

// Exercises the shared library through its C header only.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <unistd.h>

#include "qualia/qualia_c.h"

#ifndef QUALIA_TEST_DATA
#error "QUALIA_TEST_DATA must point at tests/data"
#endif

namespace fs = std::filesystem;

namespace {

const std::string kData = QUALIA_TEST_DATA;

struct Scratch {
  Scratch() {
    path = fs::temp_directory_path() /
           ("qualia-capi-" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~Scratch() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string operator/(const std::string &name) const {
    return (path / name).string();
  }
  fs::path path;
};

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::string(qc_version()) == "1.0.0");
  CHECK(std::string(qc_status_name(QC_OK)) == "ok");
  CHECK(std::string(qc_status_name(QC_ERR_CONFIG)) == "configuration error");
}

TEST_CASE("config errors are reported through the status") {
  qc_config *config = nullptr;
  REQUIRE(qc_config_create(&config) == QC_OK);
  CHECK(qc_config_set(config, "restarts", "4") == QC_OK);
  CHECK(qc_config_set(config, "no_such_key", "1") == QC_ERR_CONFIG);
  CHECK(std::string(qc_last_error()).find("no_such_key") != std::string::npos);
  CHECK(qc_config_set(nullptr, "k", "2") == QC_ERR_ARGUMENT);
  char *manifest = nullptr;
  REQUIRE(qc_config_manifest(config, &manifest) == QC_OK);
  CHECK(std::string(manifest).find("restarts=4") != std::string::npos);
  qc_string_free(manifest);
  qc_config_destroy(config);
}

TEST_CASE("pipeline through the C API") {
  Scratch scratch;
  qc_config *config = nullptr;
  REQUIRE(qc_config_create(&config) == QC_OK);
  REQUIRE(qc_config_append(config, "corpus", (kData + "/mini.vert").c_str()) ==
          QC_OK);
  REQUIRE(qc_config_set(config, "seeds",
                        (kData + "/mini.seeds.tsv").c_str()) == QC_OK);
  REQUIRE(qc_config_set(config, "out", scratch.path.c_str()) == QC_OK);
  REQUIRE(qc_config_set(config, "k", "2") == QC_OK);

  qc_extract_stats stats{};
  REQUIRE(qc_cmd_extract(config, &stats) == QC_OK);
  CHECK(stats.seeds_total == 6);
  CHECK(stats.occurrences == 23);
  CHECK(std::string(qc_last_summary()).find("extracted") != std::string::npos);

  REQUIRE(qc_cmd_pipeline(config) == QC_OK);
  CHECK(fs::exists(scratch / "assignment.k2.tsv"));
  CHECK(fs::exists(scratch / "table.k2.txt"));

  qc_matrix *matrix = nullptr;
  REQUIRE(qc_matrix_load((scratch / "matrix.tsv").c_str(), &matrix) == QC_OK);
  CHECK(qc_matrix_num_rows(matrix) == 6);
  CHECK(qc_matrix_total_mass(matrix) > 0);

  qc_matrix *filtered = nullptr;
  REQUIRE(qc_matrix_filter_shared(matrix, 2, &filtered) == QC_OK);
  CHECK(qc_matrix_num_rows(filtered) == 6);
  CHECK(qc_matrix_num_columns(filtered) <= qc_matrix_num_columns(matrix));
  CHECK(qc_matrix_save(filtered, (scratch / "copy.tsv").c_str()) == QC_OK);
  qc_matrix_destroy(filtered);

  qc_assignment *assignment = nullptr;
  REQUIRE(qc_sib_run(matrix, 2, 5, 42, "mass", &assignment) == QC_OK);
  CHECK(qc_assignment_k(assignment) == 2);
  CHECK(qc_assignment_objective(assignment) >= 0.0);
  const int cluster = qc_assignment_cluster_of(assignment, "bank");
  CHECK((cluster == 0 || cluster == 1));
  // No shared descriptors survive for treasurer on this corpus.
  CHECK(qc_assignment_cluster_of(assignment, "treasurer") == -1);
  CHECK(qc_assignment_cluster_of(assignment, "nobody") == -1);
  CHECK(qc_assignment_save(assignment, (scratch / "a.tsv").c_str()) == QC_OK);
  qc_assignment_destroy(assignment);

  CHECK(qc_sib_run(matrix, 99, 5, 42, nullptr, &assignment) ==
        QC_ERR_ARGUMENT);
  CHECK(std::string(qc_last_error()).find("sib-cluster") != std::string::npos);
  CHECK(qc_sib_run(matrix, 2, 5, 42, "flat", &assignment) == QC_ERR_CONFIG);
  qc_matrix_destroy(matrix);

  REQUIRE(qc_config_set(config, "seeds", (scratch / "none.tsv").c_str()) ==
          QC_OK);
  CHECK(qc_cmd_extract(config, nullptr) == QC_ERR_CONFIG);
  CHECK(std::string(qc_last_error()).find("none.tsv") != std::string::npos);
  qc_config_destroy(config);
}

TEST_CASE("matrix load errors") {
  qc_matrix *matrix = nullptr;
  CHECK(qc_matrix_load("/nonexistent/m.tsv", &matrix) == QC_ERR_IO);
  CHECK(matrix == nullptr);
  Scratch scratch;
  std::ofstream(scratch / "bad.tsv") << "a\tx\tzero\n";
  CHECK(qc_matrix_load((scratch / "bad.tsv").c_str(), &matrix) ==
        QC_ERR_FORMAT);
}

TEST_CASE("js divergence") {
  const double p[] = {1.0, 0.0}, q[] = {0.0, 1.0};
  double value = -1.0;
  REQUIRE(qc_js_divergence(p, q, 2, 0.5, 0.5, &value) == QC_OK);
  CHECK(std::abs(value - 1.0) < 1e-12);
  REQUIRE(qc_js_divergence(p, p, 2, 0.5, 0.5, &value) == QC_OK);
  CHECK(std::abs(value) < 1e-12);
  CHECK(qc_js_divergence(p, q, 2, 0.7, 0.7, &value) == QC_ERR_ARGUMENT);
}
