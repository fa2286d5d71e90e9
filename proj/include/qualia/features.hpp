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

// The noun x descriptor co-occurrence matrix: construction from extraction
// records, the shared-feature filter, one-level bootstrapping by is-a
// inheritance, and TSV persistence.

#ifndef QUALIA_FEATURES_HPP_
#define QUALIA_FEATURES_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qualia/corpus.hpp"
#include "qualia/patterns.hpp"

namespace qualia {

// Where a matrix entry came from. Level 1 entries are direct extractions;
// level 2 entries were inherited through the intermediate descriptor `via`.
struct Provenance {
  ClueId clue = ClueId::kOrAndOther;
  std::string corpus_id;
  std::size_t sentence_index = 0;
  int level = 1;
  std::string via;

  bool operator==(const Provenance &) const = default;
};

class FeatureMatrix {
 public:
  using Row = std::map<std::string, std::int64_t>;
  using Key = std::pair<std::string, std::string>;

  // Adds a noun with no features if it is not present yet.
  void EnsureRow(const std::string &noun);
  // count must be positive.
  void Add(const std::string &noun, const std::string &descriptor,
           std::int64_t count);
  // Ignored unless (noun, descriptor) is an entry of the matrix.
  void AddProvenance(const std::string &noun, const std::string &descriptor,
                     Provenance provenance);
  void ClearProvenance() { provenance_.clear(); }

  const std::map<std::string, Row> &rows() const { return rows_; }
  const std::map<Key, std::vector<Provenance>> &provenance() const {
    return provenance_;
  }

  bool HasRow(const std::string &noun) const { return rows_.count(noun) > 0; }
  const Row *FindRow(const std::string &noun) const;
  std::int64_t Count(const std::string &noun,
                     const std::string &descriptor) const;
  std::int64_t RowMass(const std::string &noun) const;
  std::int64_t TotalMass() const;
  std::size_t num_rows() const { return rows_.size(); }
  std::size_t num_entries() const;
  std::set<std::string> Columns() const;
  // Number of distinct rows each descriptor occurs in.
  std::map<std::string, std::size_t> ColumnSharers() const;
  std::vector<std::string> EmptyRows() const;

  bool SameRows(const FeatureMatrix &other) const {
    return rows_ == other.rows_;
  }

 private:
  std::map<std::string, Row> rows_;
  std::map<Key, std::vector<Provenance>> provenance_;
};

// rows[seed][descriptor] = number of records with that pair.
FeatureMatrix BuildMatrix(const std::vector<ExtractionRecord> &records);

// Keeps the columns that occur in at least min_sharers distinct rows. Rows
// left without features stay in the matrix as empty rows.
FeatureMatrix FilterShared(const FeatureMatrix &matrix, int min_sharers = 2);

struct BootstrapOptions {
  int min_sharers = 2;
  // Noun -> descriptor links whose descriptors become the new seeds and
  // along which new descriptors are inherited. Defaults to the input matrix
  // itself; pass the unfiltered matrix to bootstrap from pre-filter
  // descriptors.
  const FeatureMatrix *links = nullptr;
  // Level recorded in the provenance of inherited entries.
  int level = 2;
};

struct BootstrapResult {
  FeatureMatrix matrix;
  // Entries inherited in this step, before the final re-filter.
  FeatureMatrix inherited;
  std::size_t level_records = 0;
};

// One bootstrap iteration: extract with the linked descriptors as seeds, let
// every noun inherit the descriptors found for its own descriptors (with the
// level-2 occurrence count), merge into the matrix and re-filter.
BootstrapResult BootstrapStep(const FeatureMatrix &matrix,
                              const Corpus &corpus,
                              const MatcherSet &matchers,
                              const BootstrapOptions &options = {});

inline FeatureMatrix BootstrapOnce(const FeatureMatrix &matrix,
                                   const Corpus &corpus,
                                   const MatcherSet &matchers,
                                   const BootstrapOptions &options = {}) {
  return BootstrapStep(matrix, corpus, matchers, options).matrix;
}

// Runs `iterations` bootstrap steps. The first step links through
// `first_links` (or the matrix itself); later steps go up one more level by
// linking only through the entries inherited in the previous step.
FeatureMatrix Bootstrap(const FeatureMatrix &matrix, const Corpus &corpus,
                        const MatcherSet &matchers, int iterations,
                        int min_sharers,
                        const FeatureMatrix *first_links = nullptr);

// Matrix TSV: noun, descriptor, count; sorted by noun then descriptor. A
// noun without features is written as a line holding only the noun.
void WriteMatrix(std::ostream &output, const FeatureMatrix &matrix);
FeatureMatrix ReadMatrix(std::istream &input, const std::string &source_name);
void SaveMatrix(const FeatureMatrix &matrix, const std::string &path);
FeatureMatrix LoadMatrix(const std::string &path);

// Provenance TSV: noun, descriptor, clue_id, corpus_id, sentence_index,
// level.
void WriteProvenance(std::ostream &output, const FeatureMatrix &matrix);
void ReadProvenance(std::istream &input, const std::string &source_name,
                    FeatureMatrix &matrix);
void SaveProvenance(const FeatureMatrix &matrix, const std::string &path);
void LoadProvenance(const std::string &path, FeatureMatrix &matrix);

// p(y|x) for one row, support in descriptor order.
struct Distribution {
  std::vector<std::string> support;
  std::vector<double> probs;
};

// Throws kUndefinedDistribution for a missing or feature-less noun.
Distribution RowDistribution(const FeatureMatrix &matrix,
                             const std::string &noun);

// Gold classes of the seed nouns. Classes keep first-appearance order.
class SeedLexicon {
 public:
  void Add(const std::string &noun, const std::string &label);

  const std::map<std::string, std::string> &entries() const {
    return entries_;
  }
  const std::vector<std::string> &classes() const { return classes_; }
  std::optional<std::string> ClassOf(const std::string &noun) const;
  SeedSet Seeds() const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::map<std::string, std::string> entries_;
  std::vector<std::string> classes_;
};

// `noun<TAB>class` per line, '#' comments and blank lines allowed.
SeedLexicon ReadSeedLexicon(std::istream &input,
                            const std::string &source_name);
SeedLexicon LoadSeedLexicon(const std::string &path);

}  // namespace qualia

#endif  // QUALIA_FEATURES_HPP_
