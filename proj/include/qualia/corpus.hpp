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

// Streaming reader for PoS-tagged corpora in vertical format: one token per
// line, tab-separated columns, sentences separated by blank lines and/or
// </s> marker lines.

#ifndef QUALIA_CORPUS_HPP_
#define QUALIA_CORPUS_HPP_

#include <cstddef>
#include <functional>
#include <istream>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace qualia {

struct Token {
  std::string surface;
  std::string pos;
  std::string lemma;  // lowercased citation form; used for all matching

  bool operator==(const Token &other) const = default;
};

struct Sentence {
  std::vector<Token> tokens;
  std::size_t index = 0;  // 0-based position within its corpus

  bool operator==(const Sentence &other) const = default;
};

enum class Column { kSurface, kPos, kLemma, kIgnore };

enum class Boundary { kBlank, kMarker, kBoth };

struct CorpusFormat {
  std::vector<Column> columns = {Column::kSurface, Column::kPos,
                                 Column::kLemma};
  std::string noun_pos_prefix = "NN";
  Boundary boundary = Boundary::kBoth;

  // "surface,pos,lemma"; "_" or "ignore" skips a column.
  static std::vector<Column> ParseColumns(std::string_view text);
  // "blank", "marker" or "both".
  static Boundary ParseBoundary(std::string_view text);
  static std::string ColumnsToString(const std::vector<Column> &columns);
  static std::string BoundaryToString(Boundary boundary);
};

// Pulls sentences one at a time from a stream. Only the current sentence is
// held in memory.
class SentenceReader {
 public:
  SentenceReader(std::istream &input, CorpusFormat format,
                 std::string source_name = "<stream>");

  // Returns the next sentence, or nullopt at end of input. Throws a format
  // error naming the line number for short token lines.
  std::optional<Sentence> Next();

  const CorpusFormat &format() const { return format_; }

 private:
  Token ParseToken(const std::string &line) const;

  std::istream &input_;
  CorpusFormat format_;
  std::string source_name_;
  std::size_t line_number_ = 0;
  std::size_t next_index_ = 0;
  std::size_t required_columns_ = 0;
  bool done_ = false;
};

// A sentence stream that owns its file.
class CorpusStream {
 public:
  CorpusStream(CorpusStream &&) noexcept;
  CorpusStream &operator=(CorpusStream &&) noexcept;
  ~CorpusStream();

  std::optional<Sentence> Next();

 private:
  friend CorpusStream OpenCorpus(const std::string &path,
                                 const CorpusFormat &format);
  struct Impl;
  explicit CorpusStream(std::unique_ptr<Impl> impl);
  std::unique_ptr<Impl> impl_;
};

// Opens a vertical corpus file. Throws an I/O error if it cannot be read.
CorpusStream OpenCorpus(const std::string &path, const CorpusFormat &format);

// True iff the token's tag starts with the noun prefix.
bool IsNoun(const Token &token, std::string_view noun_prefix = "NN");

// Writes a sentence back in vertical format, terminated by a blank line.
void WriteSentence(std::ostream &output, const Sentence &sentence,
                   const CorpusFormat &format);

std::string ToLower(std::string_view text);

// A re-readable collection of corpora. Each traversal streams the sources
// again from the start, so a corpus can be scanned once for extraction and
// again for bootstrapping.
class Corpus {
 public:
  using Visitor =
      std::function<void(std::string_view corpus_id, const Sentence &)>;

  static Corpus FromFiles(std::vector<std::string> paths, CorpusFormat format);
  static Corpus FromText(std::string corpus_id, std::string text,
                         CorpusFormat format);

  void ForEachSentence(const Visitor &visit) const;

  const CorpusFormat &format() const { return format_; }

 private:
  struct Source {
    std::string id;
    std::string path;  // empty for in-memory text
    std::string text;
  };

  std::vector<Source> sources_;
  CorpusFormat format_;
};

// Corpus id used in records: the file name without directories.
std::string CorpusIdForPath(const std::string &path);

}  // namespace qualia

#endif  // QUALIA_CORPUS_HPP_
