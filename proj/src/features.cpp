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

#include "qualia/features.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>

#include "qualia/error.hpp"
#include "tsv.hpp"

namespace qualia {

void FeatureMatrix::EnsureRow(const std::string &noun) { rows_[noun]; }

void FeatureMatrix::Add(const std::string &noun,
                        const std::string &descriptor, std::int64_t count) {
  if (count <= 0) {
    throw ArgumentError("matrix counts must be positive (" + noun + ", " +
                        descriptor + ")");
  }
  rows_[noun][descriptor] += count;
}

void FeatureMatrix::AddProvenance(const std::string &noun,
                                  const std::string &descriptor,
                                  Provenance provenance) {
  if (Count(noun, descriptor) == 0) return;
  provenance_[{noun, descriptor}].push_back(std::move(provenance));
}

const FeatureMatrix::Row *FeatureMatrix::FindRow(
    const std::string &noun) const {
  auto it = rows_.find(noun);
  return it == rows_.end() ? nullptr : &it->second;
}

std::int64_t FeatureMatrix::Count(const std::string &noun,
                                  const std::string &descriptor) const {
  const Row *row = FindRow(noun);
  if (row == nullptr) return 0;
  auto it = row->find(descriptor);
  return it == row->end() ? 0 : it->second;
}

std::int64_t FeatureMatrix::RowMass(const std::string &noun) const {
  const Row *row = FindRow(noun);
  std::int64_t mass = 0;
  if (row != nullptr) {
    for (const auto &[descriptor, count] : *row) mass += count;
  }
  return mass;
}

std::int64_t FeatureMatrix::TotalMass() const {
  std::int64_t mass = 0;
  for (const auto &[noun, row] : rows_) {
    for (const auto &[descriptor, count] : row) mass += count;
  }
  return mass;
}

std::size_t FeatureMatrix::num_entries() const {
  std::size_t entries = 0;
  for (const auto &[noun, row] : rows_) entries += row.size();
  return entries;
}

std::set<std::string> FeatureMatrix::Columns() const {
  std::set<std::string> columns;
  for (const auto &[noun, row] : rows_) {
    for (const auto &[descriptor, count] : row) columns.insert(descriptor);
  }
  return columns;
}

std::map<std::string, std::size_t> FeatureMatrix::ColumnSharers() const {
  std::map<std::string, std::size_t> sharers;
  for (const auto &[noun, row] : rows_) {
    for (const auto &[descriptor, count] : row) ++sharers[descriptor];
  }
  return sharers;
}

std::vector<std::string> FeatureMatrix::EmptyRows() const {
  std::vector<std::string> empty;
  for (const auto &[noun, row] : rows_) {
    if (row.empty()) empty.push_back(noun);
  }
  return empty;
}

FeatureMatrix BuildMatrix(const std::vector<ExtractionRecord> &records) {
  FeatureMatrix matrix;
  for (const ExtractionRecord &record : records) {
    matrix.Add(record.seed, record.descriptor, 1);
    matrix.AddProvenance(record.seed, record.descriptor,
                         {record.clue, record.corpus_id,
                          record.sentence_index, 1, {}});
  }
  return matrix;
}

FeatureMatrix FilterShared(const FeatureMatrix &matrix, int min_sharers) {
  if (min_sharers < 1) throw ArgumentError("min_sharers must be at least 1");
  const auto sharers = matrix.ColumnSharers();
  auto keep = [&](const std::string &descriptor) {
    auto it = sharers.find(descriptor);
    return it != sharers.end() &&
           it->second >= static_cast<std::size_t>(min_sharers);
  };

  FeatureMatrix filtered;
  for (const auto &[noun, row] : matrix.rows()) {
    filtered.EnsureRow(noun);
    for (const auto &[descriptor, count] : row) {
      if (keep(descriptor)) filtered.Add(noun, descriptor, count);
    }
  }
  for (const auto &[key, sources] : matrix.provenance()) {
    if (!keep(key.second)) continue;
    for (const Provenance &source : sources) {
      filtered.AddProvenance(key.first, key.second, source);
    }
  }
  return filtered;
}

BootstrapResult BootstrapStep(const FeatureMatrix &matrix,
                              const Corpus &corpus,
                              const MatcherSet &matchers,
                              const BootstrapOptions &options) {
  const FeatureMatrix &links =
      options.links != nullptr ? *options.links : matrix;

  // Level-2 extraction over the linked descriptors.
  const std::set<std::string> columns = links.Columns();
  const SeedSet seeds(columns.begin(), columns.end());
  std::vector<ExtractionRecord> found = ExtractCorpus(corpus, matchers, seeds);

  std::map<std::string, std::vector<const ExtractionRecord *>> by_seed;
  for (const ExtractionRecord &record : found) {
    by_seed[record.seed].push_back(&record);
  }

  BootstrapResult result;
  result.level_records = found.size();
  FeatureMatrix merged = matrix;
  for (const auto &[noun, row] : links.rows()) {
    // Only nouns of the input matrix inherit.
    if (!matrix.HasRow(noun)) continue;
    for (const auto &link : row) {
      const std::string &descriptor = link.first;
      auto it = by_seed.find(descriptor);
      if (it == by_seed.end()) continue;
      for (const ExtractionRecord *record : it->second) {
        if (record->descriptor == noun) continue;  // no self-features
        Provenance source{record->clue, record->corpus_id,
                          record->sentence_index, options.level, descriptor};
        merged.Add(noun, record->descriptor, 1);
        merged.AddProvenance(noun, record->descriptor, source);
        result.inherited.Add(noun, record->descriptor, 1);
        result.inherited.AddProvenance(noun, record->descriptor, source);
      }
    }
  }
  result.matrix = FilterShared(merged, options.min_sharers);
  return result;
}

FeatureMatrix Bootstrap(const FeatureMatrix &matrix, const Corpus &corpus,
                        const MatcherSet &matchers, int iterations,
                        int min_sharers, const FeatureMatrix *first_links) {
  if (iterations < 0) {
    throw ArgumentError("bootstrap iterations must be non-negative");
  }
  FeatureMatrix current = matrix;
  FeatureMatrix frontier;
  for (int step = 0; step < iterations; ++step) {
    BootstrapOptions options;
    options.min_sharers = min_sharers;
    options.level = step + 2;
    if (step == 0) {
      options.links = first_links;
    } else {
      // Only what survived the last re-filter links further up.
      FeatureMatrix surviving;
      for (const auto &[noun, row] : frontier.rows()) {
        for (const auto &[descriptor, count] : row) {
          if (current.Count(noun, descriptor) > 0) {
            surviving.Add(noun, descriptor, count);
          }
        }
      }
      frontier = std::move(surviving);
      options.links = &frontier;
    }
    BootstrapResult result = BootstrapStep(current, corpus, matchers, options);
    current = std::move(result.matrix);
    frontier = std::move(result.inherited);
  }
  return current;
}

void WriteMatrix(std::ostream &output, const FeatureMatrix &matrix) {
  for (const auto &[noun, row] : matrix.rows()) {
    if (row.empty()) {
      output << noun << '\n';
      continue;
    }
    for (const auto &[descriptor, count] : row) {
      output << noun << '\t' << descriptor << '\t' << count << '\n';
    }
  }
}

FeatureMatrix ReadMatrix(std::istream &input, const std::string &source_name) {
  FeatureMatrix matrix;
  std::set<std::string> declared_empty;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(input, line)) {
    ++line_number;
    std::string_view view = tsv::StripLine(line);
    if (view.empty() || view.front() == '#') continue;
    const std::string where = source_name + ":" + std::to_string(line_number);
    std::vector<std::string_view> fields = tsv::Split(view);
    if (fields.size() == 1) {
      std::string noun(fields[0]);
      if (matrix.HasRow(noun)) {
        throw FormatError(where + ": noun '" + noun + "' listed twice");
      }
      matrix.EnsureRow(noun);
      declared_empty.insert(noun);
      continue;
    }
    if (fields.size() != 3) {
      throw FormatError(where + ": expected noun, descriptor and count");
    }
    std::string noun(fields[0]), descriptor(fields[1]);
    if (noun.empty() || descriptor.empty()) {
      throw FormatError(where + ": empty noun or descriptor");
    }
    std::uint64_t count = tsv::ParseCount(fields[2], where);
    if (count == 0) throw FormatError(where + ": count must be at least 1");
    if (declared_empty.count(noun) > 0) {
      throw FormatError(where + ": noun '" + noun +
                        "' was declared without features");
    }
    if (matrix.Count(noun, descriptor) > 0) {
      throw FormatError(where + ": duplicate entry (" + noun + ", " +
                        descriptor + ")");
    }
    matrix.Add(noun, descriptor, static_cast<std::int64_t>(count));
  }
  return matrix;
}

void SaveMatrix(const FeatureMatrix &matrix, const std::string &path) {
  std::ofstream output(path, std::ios::binary);
  if (!output) throw IoError("cannot write matrix file " + path);
  WriteMatrix(output, matrix);
  if (!output) throw IoError("error writing matrix file " + path);
}

FeatureMatrix LoadMatrix(const std::string &path) {
  std::ifstream input(path, std::ios::binary);
  if (!input) throw IoError("cannot open matrix file " + path);
  return ReadMatrix(input, path);
}

void WriteProvenance(std::ostream &output, const FeatureMatrix &matrix) {
  for (const auto &[key, sources] : matrix.provenance()) {
    for (const Provenance &source : sources) {
      output << key.first << '\t' << key.second << '\t'
             << ClueName(source.clue) << '\t' << source.corpus_id << '\t'
             << source.sentence_index << '\t' << source.level << '\n';
    }
  }
}

void ReadProvenance(std::istream &input, const std::string &source_name,
                    FeatureMatrix &matrix) {
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(input, line)) {
    ++line_number;
    std::string_view view = tsv::StripLine(line);
    if (view.empty() || view.front() == '#') continue;
    const std::string where = source_name + ":" + std::to_string(line_number);
    std::vector<std::string_view> fields = tsv::Split(view);
    if (fields.size() != 6) {
      throw FormatError(where + ": expected 6 tab-separated fields");
    }
    Provenance source;
    try {
      source.clue = ParseClueId(fields[2]);
    } catch (const Error &) {
      throw FormatError(where + ": unknown clue id");
    }
    source.corpus_id = std::string(fields[3]);
    source.sentence_index = tsv::ParseCount(fields[4], where);
    source.level = static_cast<int>(tsv::ParseCount(fields[5], where));
    if (source.level < 1) throw FormatError(where + ": level must be >= 1");
    matrix.AddProvenance(std::string(fields[0]), std::string(fields[1]),
                         std::move(source));
  }
}

void SaveProvenance(const FeatureMatrix &matrix, const std::string &path) {
  std::ofstream output(path, std::ios::binary);
  if (!output) throw IoError("cannot write provenance file " + path);
  WriteProvenance(output, matrix);
  if (!output) throw IoError("error writing provenance file " + path);
}

void LoadProvenance(const std::string &path, FeatureMatrix &matrix) {
  std::ifstream input(path, std::ios::binary);
  if (!input) throw IoError("cannot open provenance file " + path);
  ReadProvenance(input, path, matrix);
}

Distribution RowDistribution(const FeatureMatrix &matrix,
                             const std::string &noun) {
  const FeatureMatrix::Row *row = matrix.FindRow(noun);
  if (row == nullptr || row->empty()) {
    throw Error(ErrorKind::kUndefinedDistribution,
                "noun '" + noun + "' has no features");
  }
  const double mass = static_cast<double>(matrix.RowMass(noun));
  Distribution distribution;
  for (const auto &[descriptor, count] : *row) {
    distribution.support.push_back(descriptor);
    distribution.probs.push_back(static_cast<double>(count) / mass);
  }
  return distribution;
}

void SeedLexicon::Add(const std::string &noun, const std::string &label) {
  auto [it, inserted] = entries_.emplace(noun, label);
  if (!inserted && it->second != label) {
    throw FormatError("noun '" + noun + "' has conflicting classes '" +
                      it->second + "' and '" + label + "'");
  }
  if (std::find(classes_.begin(), classes_.end(), label) == classes_.end()) {
    classes_.push_back(label);
  }
}

std::optional<std::string> SeedLexicon::ClassOf(
    const std::string &noun) const {
  auto it = entries_.find(noun);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

SeedSet SeedLexicon::Seeds() const {
  SeedSet seeds;
  for (const auto &[noun, label] : entries_) seeds.insert(noun);
  return seeds;
}

SeedLexicon ReadSeedLexicon(std::istream &input,
                            const std::string &source_name) {
  SeedLexicon lexicon;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(input, line)) {
    ++line_number;
    std::string_view view = tsv::StripLine(line);
    if (view.empty() || view.front() == '#') continue;
    std::vector<std::string_view> fields = tsv::Split(view);
    const std::string where = source_name + ":" + std::to_string(line_number);
    if (fields.size() != 2 || fields[0].empty() || fields[1].empty()) {
      throw FormatError(where + ": expected noun<TAB>class");
    }
    try {
      lexicon.Add(ToLower(fields[0]), std::string(fields[1]));
    } catch (const Error &e) {
      throw FormatError(where + ": " + e.what());
    }
  }
  return lexicon;
}

SeedLexicon LoadSeedLexicon(const std::string &path) {
  std::ifstream input(path, std::ios::binary);
  if (!input) throw IoError("cannot open seed lexicon " + path);
  return ReadSeedLexicon(input, path);
}

}  // namespace qualia
