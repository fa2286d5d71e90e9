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

// Lexico-syntactic clue templates ("x and other y", "y such as x", ...) and
// the extraction of (seed, descriptor) pairs from tagged sentences.

#ifndef QUALIA_PATTERNS_HPP_
#define QUALIA_PATTERNS_HPP_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "qualia/corpus.hpp"

namespace qualia {

enum class ClueId { kOrAndOther, kSuchAs, kKindTypeOf, kAlsoKnownAs };

// OR_AND_OTHER, SUCH_AS, KIND_TYPE_OF, ALSO_KNOWN_AS.
std::string_view ClueName(ClueId id);
ClueId ParseClueId(std::string_view name);

// Which side of the fixed material holds the seed (hyponym).
enum class SlotSide { kBefore, kAfter };

enum class Direction { kLeftward, kRightward };

struct FixedItem {
  std::vector<std::string> alternatives;  // lowercased word forms
  std::string pos_prefix;                 // empty: any tag

  bool operator==(const FixedItem &) const = default;
};

struct ClueTemplate {
  ClueId id = ClueId::kOrAndOther;
  SlotSide hyponym_slot = SlotSide::kBefore;
  std::vector<FixedItem> fixed_material;

  bool operator==(const ClueTemplate &) const = default;
};

// The four built-in clues.
std::vector<ClueTemplate> DefaultTemplates();

// Template config: one clue per line,
//   CLUE_ID <TAB> before|after <TAB> item item ...
// where each item is "alt1|alt2" optionally followed by "/POSPREFIX".
// Blank lines and '#' comments are ignored.
std::vector<ClueTemplate> ParseTemplates(std::istream &input);
std::vector<ClueTemplate> LoadTemplates(const std::string &path);

struct MatchOptions {
  std::string noun_pos_prefix = "NN";
  // Longest stretch of tokens a slot scan may cover.
  int max_np_span = 4;
  // Tags (by prefix) that may appear inside a nominal run besides nouns:
  // determiners, adjectives and cardinals.
  std::vector<std::string> modifier_pos_prefixes = {"DT", "PDT", "PRP$",
                                                    "JJ", "CD"};
};

struct ExtractionRecord {
  std::string seed;
  std::string descriptor;
  ClueId clue = ClueId::kOrAndOther;
  std::size_t sentence_index = 0;
  std::string corpus_id;

  bool operator==(const ExtractionRecord &) const = default;
};

// Compiled form of one clue template. Immutable after construction.
class Matcher {
 public:
  explicit Matcher(ClueTemplate clue);

  // True iff the fixed material matches tokens [start, start + length()).
  bool MatchesAt(const Sentence &sentence, std::size_t start) const;

  std::size_t length() const { return clue_.fixed_material.size(); }
  ClueId id() const { return clue_.id; }
  SlotSide hyponym_slot() const { return clue_.hyponym_slot; }
  const ClueTemplate &clue() const { return clue_; }

  // Readable form, e.g. NOUN ("or"|"and") "other" NOUN.
  std::string Describe() const;

 private:
  ClueTemplate clue_;
};

class MatcherSet {
 public:
  MatcherSet() = default;
  MatcherSet(std::vector<Matcher> matchers, MatchOptions options);

  const std::vector<Matcher> &matchers() const { return matchers_; }
  const MatchOptions &options() const { return options_; }
  bool empty() const { return matchers_.empty(); }
  std::size_t size() const { return matchers_.size(); }

 private:
  std::vector<Matcher> matchers_;
  MatchOptions options_;
};

// Throws a config error on duplicate template ids or empty fixed material.
MatcherSet CompileClues(const std::vector<ClueTemplate> &templates,
                        const MatchOptions &options = {});

// Finds the head noun of the nominal run next to `anchor` (exclusive) in the
// given direction. The run may contain only determiners, adjectives,
// cardinals and nouns and spans at most max_np_span tokens. Rightward, the
// head is the last noun of the run. Leftward, a run preceded by "of" and
// another nominal run ("the bank of England") resolves to the noun before
// "of", within the same token budget.
std::optional<std::string> HeadNoun(const Sentence &sentence,
                                    std::size_t anchor, Direction direction,
                                    const MatchOptions &options = {});

using SeedSet = std::set<std::string>;

// Extracts records from one sentence: leftmost-longest, non-overlapping
// matches of the fixed material, in left-to-right order.
std::vector<ExtractionRecord> MatchSentence(const Sentence &sentence,
                                            const MatcherSet &matchers,
                                            const SeedSet &seeds,
                                            std::string_view corpus_id = "");

std::vector<ExtractionRecord> ExtractCorpus(const Corpus &corpus,
                                            const MatcherSet &matchers,
                                            const SeedSet &seeds);

// Records TSV: seed, descriptor, clue_id, corpus_id, sentence_index.
void WriteRecords(std::ostream &output,
                  const std::vector<ExtractionRecord> &records);
std::vector<ExtractionRecord> ReadRecords(std::istream &input,
                                          const std::string &source_name);
void SaveRecords(const std::vector<ExtractionRecord> &records,
                 const std::string &path);
std::vector<ExtractionRecord> LoadRecords(const std::string &path);

}  // namespace qualia

#endif  // QUALIA_PATTERNS_HPP_
