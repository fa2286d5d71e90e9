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

// Stage runners behind the command-line tool. Each stage reads and writes
// the TSV formats of the library so stages can be rerun independently.

#ifndef QUALIA_PIPELINE_HPP_
#define QUALIA_PIPELINE_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qualia/corpus.hpp"
#include "qualia/patterns.hpp"
#include "qualia/sib.hpp"
#include "qualia/synthetic.hpp"

namespace qualia {

inline constexpr const char *kVersion = "1.0.0";

enum class SeedSource { kPrefilter, kPostfilter };

struct PipelineConfig {
  std::vector<std::string> corpus;
  std::string seeds;
  std::string templates;  // empty: built-in clues
  std::string out = "run";
  CorpusFormat format;
  int max_np_span = 4;
  int min_sharers = 2;
  int bootstrap_iters = 1;
  SeedSource bootstrap_seed_source = SeedSource::kPostfilter;
  std::vector<int> k = {3, 4};
  int restarts = 10;
  std::uint64_t seed = 42;
  Prior prior = Prior::kMass;
  int max_passes = 100;

  // Stage inputs and outputs; empty means the stage default.
  std::string records;
  std::string matrix;
  std::string seed_matrix;  // unfiltered links for the prefilter source
  std::string provenance;
  std::string assignment;
  std::string gold;
  std::string output;
  int cluster_id = -1;
  int k2 = 2;

  SyntheticOptions synthetic;

  // Keys accept '-' or '_'. Unknown keys and bad values throw config errors.
  void Set(std::string_view key, std::string_view value);
  // Like Set, but list-valued keys ("corpus") gain an element.
  void Append(std::string_view key, std::string_view value);
  // key=value lines; '#' starts a comment line.
  void LoadFile(const std::string &path);

  // Every tunable that affects output, as sorted key=value lines.
  std::string Manifest() const;
};

struct ExtractStats {
  std::size_t seeds_total = 0;
  std::size_t seeds_covered = 0;
  std::size_t descriptors = 0;
  std::size_t occurrences = 0;

  std::string Line() const;
};

// Each runner returns a short human-readable summary.
std::string RunExtract(const PipelineConfig &config,
                       ExtractStats *stats = nullptr);
std::string RunBuild(const PipelineConfig &config);
std::string RunFilter(const PipelineConfig &config);
std::string RunBootstrap(const PipelineConfig &config);
std::string RunCluster(const PipelineConfig &config);
std::string RunSubcluster(const PipelineConfig &config);
std::string RunReport(const PipelineConfig &config);
std::string RunPipeline(const PipelineConfig &config);
std::string RunGenSynthetic(const PipelineConfig &config);

MatcherSet LoadMatchers(const PipelineConfig &config);
SibOptions MakeSibOptions(const PipelineConfig &config, int k);

}  // namespace qualia

#endif  // QUALIA_PIPELINE_HPP_
