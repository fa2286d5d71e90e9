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

// Planted-class corpus generator. Every seed noun is mentioned in clue
// sentences with descriptors drawn from its class's descriptor pool; each
// class descriptor in turn has two parent descriptors mentioned in their own
// clue sentences, so bootstrapping has something to inherit. Optional
// structure:
//   - a dot-object subgroup of the first class whose nouns also draw
//     descriptors from an organization pool;
//   - low-information nouns with only a few mentions of generic
//     descriptors ("thing", "item", ...);
//   - noise mentions (cross-class descriptors and one-off words).

#ifndef QUALIA_SYNTHETIC_HPP_
#define QUALIA_SYNTHETIC_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "qualia/corpus.hpp"
#include "qualia/features.hpp"

namespace qualia {

struct SyntheticOptions {
  int classes = 3;          // 1..5 built-in classes
  int nouns = 60;           // split evenly across classes
  int low_info = 7;         // spread round-robin across classes
  int dot_objects = 6;      // taken from the first class
  double dot_share = 0.3;   // share of a dot noun's mentions from the org pool
  double noise = 0.05;      // per-mention noise probability
  int mentions_min = 8;     // mentions per regular noun
  int mentions_max = 16;
  int low_info_mentions_min = 2;
  int low_info_mentions_max = 4;
  int descriptors_per_noun = 4;  // class descriptors a regular noun uses
  int parent_mentions = 1;       // sentences per descriptor -> parent link
  int filler = 100;              // sentences without usable clues
  std::uint64_t seed = 42;
};

struct SyntheticData {
  std::vector<Sentence> sentences;
  SeedLexicon lexicon;     // noun -> class
  SeedLexicon subclasses;  // noun -> DOT_OBJECT or OTHER
  std::vector<std::string> low_info_nouns;
  std::vector<std::string> dot_object_nouns;
};

// Throws an argument error for inconsistent options.
SyntheticData GenerateSynthetic(const SyntheticOptions &options);

// Writes corpus.vert, seeds.tsv, subclasses.tsv and planted.tsv
// (noun, class, role) into `directory`, which must exist.
void WriteSynthetic(const SyntheticData &data, const std::string &directory);

}  // namespace qualia

#endif  // QUALIA_SYNTHETIC_HPP_
