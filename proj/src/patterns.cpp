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

#include "qualia/patterns.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "qualia/error.hpp"
#include "tsv.hpp"

namespace qualia {
namespace {

FixedItem Item(std::initializer_list<const char *> words) {
  FixedItem item;
  for (const char *word : words) item.alternatives.emplace_back(word);
  return item;
}

bool HasPrefix(std::string_view text, std::string_view prefix) {
  return text.compare(0, prefix.size(), prefix) == 0;
}

bool IsNominal(const Token &token, const MatchOptions &options) {
  if (IsNoun(token, options.noun_pos_prefix)) return true;
  for (const std::string &prefix : options.modifier_pos_prefixes) {
    if (HasPrefix(token.pos, prefix)) return true;
  }
  return false;
}

bool ItemMatches(const FixedItem &item, const Token &token) {
  if (!item.pos_prefix.empty() && !HasPrefix(token.pos, item.pos_prefix)) {
    return false;
  }
  // Fixed material is matched on the lemma, falling back to the lowercased
  // surface so that inflected forms listed in a template ("is", "kinds")
  // match corpora whose lemmatizer maps them to "be" or "kind".
  const std::string surface = ToLower(token.surface);
  for (const std::string &alt : item.alternatives) {
    if (alt == token.lemma || alt == surface) return true;
  }
  return false;
}

// Scans one nominal run starting at `from` and moving by `step`. Returns the
// index of the head noun of the run, if any, and leaves `next` at the first
// token outside the run.
std::optional<std::size_t> ScanRun(const Sentence &sentence, long from,
                                   int step, const MatchOptions &options,
                                   int &budget, long &next) {
  const long n = static_cast<long>(sentence.tokens.size());
  std::optional<std::size_t> head;
  long i = from;
  while (i >= 0 && i < n && budget > 0 &&
         IsNominal(sentence.tokens[i], options)) {
    if (IsNoun(sentence.tokens[i], options.noun_pos_prefix)) {
      // Rightward the last noun wins; leftward the first one seen is the
      // last in text order.
      if (step > 0 || !head) head = static_cast<std::size_t>(i);
    }
    i += step;
    --budget;
  }
  next = i;
  return head;
}

}  // namespace

std::string_view ClueName(ClueId id) {
  switch (id) {
    case ClueId::kOrAndOther: return "OR_AND_OTHER";
    case ClueId::kSuchAs: return "SUCH_AS";
    case ClueId::kKindTypeOf: return "KIND_TYPE_OF";
    case ClueId::kAlsoKnownAs: return "ALSO_KNOWN_AS";
  }
  return "OR_AND_OTHER";
}

ClueId ParseClueId(std::string_view name) {
  for (ClueId id : {ClueId::kOrAndOther, ClueId::kSuchAs, ClueId::kKindTypeOf,
                    ClueId::kAlsoKnownAs}) {
    if (ClueName(id) == name) return id;
  }
  throw ConfigError("unknown clue id '" + std::string(name) + "'");
}

std::vector<ClueTemplate> DefaultTemplates() {
  return {
      {ClueId::kOrAndOther, SlotSide::kBefore,
       {Item({"or", "and"}), Item({"other"})}},
      {ClueId::kSuchAs, SlotSide::kAfter, {Item({"such"}), Item({"as"})}},
      {ClueId::kKindTypeOf, SlotSide::kBefore,
       {Item({"is", "are"}), Item({"a", "an", "the"}),
        Item({"kind", "kinds", "type", "types"}), Item({"of"})}},
      {ClueId::kAlsoKnownAs, SlotSide::kBefore,
       {Item({"is", "are"}), Item({"also"}), Item({"known"}), Item({"as"})}},
  };
}

std::vector<ClueTemplate> ParseTemplates(std::istream &input) {
  std::vector<ClueTemplate> templates;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(input, line)) {
    ++line_number;
    std::string_view view = tsv::StripLine(line);
    if (view.empty() || view.front() == '#') continue;
    std::vector<std::string_view> fields = tsv::Split(view);
    if (fields.size() != 3) {
      throw ConfigError("templates line " + std::to_string(line_number) +
                        ": expected 3 tab-separated fields");
    }
    ClueTemplate clue;
    clue.id = ParseClueId(fields[0]);
    std::string side = ToLower(fields[1]);
    if (side == "before") {
      clue.hyponym_slot = SlotSide::kBefore;
    } else if (side == "after") {
      clue.hyponym_slot = SlotSide::kAfter;
    } else {
      throw ConfigError("templates line " + std::to_string(line_number) +
                        ": slot must be 'before' or 'after'");
    }
    std::istringstream items{std::string(fields[2])};
    std::string word;
    while (items >> word) {
      FixedItem item;
      std::size_t slash = word.find('/');
      if (slash != std::string::npos) {
        item.pos_prefix = word.substr(slash + 1);
        word.resize(slash);
      }
      std::size_t start = 0;
      while (start <= word.size()) {
        std::size_t bar = word.find('|', start);
        if (bar == std::string::npos) bar = word.size();
        std::string alt = ToLower(word.substr(start, bar - start));
        if (alt.empty()) {
          throw ConfigError("templates line " + std::to_string(line_number) +
                            ": empty alternative");
        }
        item.alternatives.push_back(std::move(alt));
        start = bar + 1;
      }
      clue.fixed_material.push_back(std::move(item));
    }
    templates.push_back(std::move(clue));
  }
  return templates;
}

std::vector<ClueTemplate> LoadTemplates(const std::string &path) {
  std::ifstream input(path);
  if (!input) throw IoError("cannot open templates file " + path);
  return ParseTemplates(input);
}

Matcher::Matcher(ClueTemplate clue) : clue_(std::move(clue)) {}

bool Matcher::MatchesAt(const Sentence &sentence, std::size_t start) const {
  if (start + length() > sentence.tokens.size()) return false;
  for (std::size_t i = 0; i < length(); ++i) {
    if (!ItemMatches(clue_.fixed_material[i], sentence.tokens[start + i])) {
      return false;
    }
  }
  return true;
}

std::string Matcher::Describe() const {
  std::string out = "NOUN";
  for (const FixedItem &item : clue_.fixed_material) {
    out += ' ';
    if (item.alternatives.size() > 1) out += '(';
    for (std::size_t i = 0; i < item.alternatives.size(); ++i) {
      if (i > 0) out += '|';
      out += '"' + item.alternatives[i] + '"';
    }
    if (item.alternatives.size() > 1) out += ')';
    if (!item.pos_prefix.empty()) out += "/" + item.pos_prefix;
  }
  out += " NOUN";
  return out;
}

MatcherSet::MatcherSet(std::vector<Matcher> matchers, MatchOptions options)
    : matchers_(std::move(matchers)), options_(std::move(options)) {}

MatcherSet CompileClues(const std::vector<ClueTemplate> &templates,
                        const MatchOptions &options) {
  if (options.max_np_span < 1) {
    throw ConfigError("max_np_span must be at least 1");
  }
  std::vector<Matcher> matchers;
  std::set<ClueId> seen;
  for (const ClueTemplate &clue : templates) {
    if (!seen.insert(clue.id).second) {
      throw ConfigError("duplicate clue template " +
                        std::string(ClueName(clue.id)));
    }
    if (clue.fixed_material.empty()) {
      throw ConfigError("clue template " + std::string(ClueName(clue.id)) +
                        " has no fixed material");
    }
    for (const FixedItem &item : clue.fixed_material) {
      if (item.alternatives.empty()) {
        throw ConfigError("clue template " + std::string(ClueName(clue.id)) +
                          " has an item without alternatives");
      }
    }
    matchers.emplace_back(clue);
  }
  return MatcherSet(std::move(matchers), options);
}

std::optional<std::string> HeadNoun(const Sentence &sentence,
                                    std::size_t anchor, Direction direction,
                                    const MatchOptions &options) {
  const long n = static_cast<long>(sentence.tokens.size());
  if (static_cast<long>(anchor) >= n) return std::nullopt;
  int budget = options.max_np_span;
  long next = 0;

  if (direction == Direction::kRightward) {
    auto head = ScanRun(sentence, static_cast<long>(anchor) + 1, +1, options,
                        budget, next);
    if (!head) return std::nullopt;
    return sentence.tokens[*head].lemma;
  }

  auto head = ScanRun(sentence, static_cast<long>(anchor) - 1, -1, options,
                      budget, next);
  if (!head) return std::nullopt;
  // Hop over postnominal "of" complements: the head of "the bank of
  // England" is "bank".
  while (next >= 1 && budget > 1 && sentence.tokens[next].lemma == "of" &&
         IsNominal(sentence.tokens[next - 1], options)) {
    int hop_budget = budget - 1;
    long hop_next = 0;
    auto outer =
        ScanRun(sentence, next - 1, -1, options, hop_budget, hop_next);
    if (!outer) break;
    head = outer;
    budget = hop_budget;
    next = hop_next;
  }
  return sentence.tokens[*head].lemma;
}

std::vector<ExtractionRecord> MatchSentence(const Sentence &sentence,
                                            const MatcherSet &matchers,
                                            const SeedSet &seeds,
                                            std::string_view corpus_id) {
  std::vector<ExtractionRecord> records;
  const std::size_t n = sentence.tokens.size();
  std::size_t i = 0;
  while (i < n) {
    const Matcher *best = nullptr;
    std::string best_left, best_right;
    for (const Matcher &matcher : matchers.matchers()) {
      if (best != nullptr && matcher.length() <= best->length()) continue;
      if (!matcher.MatchesAt(sentence, i)) continue;
      auto left = HeadNoun(sentence, i, Direction::kLeftward,
                           matchers.options());
      if (!left) continue;
      auto right = HeadNoun(sentence, i + matcher.length() - 1,
                            Direction::kRightward, matchers.options());
      if (!right) continue;
      best = &matcher;
      best_left = std::move(*left);
      best_right = std::move(*right);
    }
    if (best == nullptr) {
      ++i;
      continue;
    }
    const bool seed_first = best->hyponym_slot() == SlotSide::kBefore;
    std::string &hyponym = seed_first ? best_left : best_right;
    std::string &hypernym = seed_first ? best_right : best_left;
    if (hyponym != hypernym && seeds.count(hyponym) > 0) {
      records.push_back({hyponym, hypernym, best->id(), sentence.index,
                         std::string(corpus_id)});
    }
    i += best->length();
  }
  return records;
}

std::vector<ExtractionRecord> ExtractCorpus(const Corpus &corpus,
                                            const MatcherSet &matchers,
                                            const SeedSet &seeds) {
  std::vector<ExtractionRecord> records;
  if (matchers.empty()) {
    // Still stream the corpus so I/O and format errors surface.
    corpus.ForEachSentence([](std::string_view, const Sentence &) {});
    return records;
  }
  corpus.ForEachSentence(
      [&](std::string_view corpus_id, const Sentence &sentence) {
        auto found = MatchSentence(sentence, matchers, seeds, corpus_id);
        std::move(found.begin(), found.end(), std::back_inserter(records));
      });
  return records;
}

void WriteRecords(std::ostream &output,
                  const std::vector<ExtractionRecord> &records) {
  for (const ExtractionRecord &record : records) {
    output << record.seed << '\t' << record.descriptor << '\t'
           << ClueName(record.clue) << '\t' << record.corpus_id << '\t'
           << record.sentence_index << '\n';
  }
}

std::vector<ExtractionRecord> ReadRecords(std::istream &input,
                                          const std::string &source_name) {
  std::vector<ExtractionRecord> records;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(input, line)) {
    ++line_number;
    std::string_view view = tsv::StripLine(line);
    if (view.empty() || view.front() == '#') continue;
    std::vector<std::string_view> fields = tsv::Split(view);
    const std::string where = source_name + ":" + std::to_string(line_number);
    if (fields.size() != 5) {
      throw FormatError(where + ": expected 5 tab-separated fields");
    }
    ExtractionRecord record;
    record.seed = ToLower(fields[0]);
    record.descriptor = ToLower(fields[1]);
    try {
      record.clue = ParseClueId(fields[2]);
    } catch (const Error &) {
      throw FormatError(where + ": unknown clue id '" +
                        std::string(fields[2]) + "'");
    }
    record.corpus_id = std::string(fields[3]);
    record.sentence_index = tsv::ParseCount(fields[4], where);
    if (record.seed.empty() || record.descriptor.empty()) {
      throw FormatError(where + ": empty seed or descriptor");
    }
    records.push_back(std::move(record));
  }
  return records;
}

void SaveRecords(const std::vector<ExtractionRecord> &records,
                 const std::string &path) {
  std::ofstream output(path, std::ios::binary);
  if (!output) throw IoError("cannot write records file " + path);
  WriteRecords(output, records);
  if (!output) throw IoError("error writing records file " + path);
}

std::vector<ExtractionRecord> LoadRecords(const std::string &path) {
  std::ifstream input(path, std::ios::binary);
  if (!input) throw IoError("cannot open records file " + path);
  return ReadRecords(input, path);
}

}  // namespace qualia
