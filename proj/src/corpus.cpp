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

#include "qualia/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "qualia/error.hpp"

namespace qualia {
namespace {

std::vector<std::string_view> SplitTabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return fields;
}

bool IsMarkup(std::string_view line) {
  return line.size() >= 2 && line.front() == '<' && line.back() == '>';
}

bool IsSentenceEndMarker(std::string_view line) { return line == "</s>"; }

bool IsBlank(std::string_view line) {
  return std::all_of(line.begin(), line.end(), [](unsigned char c) {
    return std::isspace(c) != 0;
  });
}

}  // namespace

std::string ToLower(std::string_view text) {
  std::string out(text);
  for (char &c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

std::vector<Column> CorpusFormat::ParseColumns(std::string_view text) {
  std::vector<Column> columns;
  bool has_surface = false, has_pos = false, has_lemma = false;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    std::string name = ToLower(text.substr(start, comma - start));
    if (name == "surface" || name == "word") {
      columns.push_back(Column::kSurface);
      has_surface = true;
    } else if (name == "pos" || name == "tag") {
      columns.push_back(Column::kPos);
      has_pos = true;
    } else if (name == "lemma") {
      columns.push_back(Column::kLemma);
      has_lemma = true;
    } else if (name == "_" || name == "ignore") {
      columns.push_back(Column::kIgnore);
    } else {
      throw ConfigError("unknown corpus column '" + name + "'");
    }
    start = comma + 1;
  }
  if (!has_surface || !has_pos || !has_lemma) {
    throw ConfigError("corpus columns must name surface, pos and lemma: '" +
                      std::string(text) + "'");
  }
  return columns;
}

Boundary CorpusFormat::ParseBoundary(std::string_view text) {
  std::string name = ToLower(text);
  if (name == "blank") return Boundary::kBlank;
  if (name == "marker") return Boundary::kMarker;
  if (name == "both") return Boundary::kBoth;
  throw ConfigError("unknown sentence boundary '" + name +
                    "' (expected blank, marker or both)");
}

std::string CorpusFormat::ColumnsToString(const std::vector<Column> &columns) {
  std::string out;
  for (Column column : columns) {
    if (!out.empty()) out += ',';
    switch (column) {
      case Column::kSurface: out += "surface"; break;
      case Column::kPos: out += "pos"; break;
      case Column::kLemma: out += "lemma"; break;
      case Column::kIgnore: out += "_"; break;
    }
  }
  return out;
}

std::string CorpusFormat::BoundaryToString(Boundary boundary) {
  switch (boundary) {
    case Boundary::kBlank: return "blank";
    case Boundary::kMarker: return "marker";
    case Boundary::kBoth: return "both";
  }
  return "both";
}

SentenceReader::SentenceReader(std::istream &input, CorpusFormat format,
                               std::string source_name)
    : input_(input),
      format_(std::move(format)),
      source_name_(std::move(source_name)) {
  // Trailing ignored columns need not be present.
  required_columns_ = format_.columns.size();
  while (required_columns_ > 0 &&
         format_.columns[required_columns_ - 1] == Column::kIgnore) {
    --required_columns_;
  }
}

Token SentenceReader::ParseToken(const std::string &line) const {
  std::vector<std::string_view> fields = SplitTabs(line);
  if (fields.size() < required_columns_) {
    throw FormatError(source_name_ + ":" + std::to_string(line_number_) +
                      ": expected " + std::to_string(required_columns_) +
                      " tab-separated columns, found " +
                      std::to_string(fields.size()));
  }
  Token token;
  for (std::size_t i = 0; i < format_.columns.size() && i < fields.size();
       ++i) {
    switch (format_.columns[i]) {
      case Column::kSurface: token.surface = fields[i]; break;
      case Column::kPos: token.pos = fields[i]; break;
      case Column::kLemma: token.lemma = ToLower(fields[i]); break;
      case Column::kIgnore: break;
    }
  }
  if (token.surface.empty() || token.pos.empty() || token.lemma.empty()) {
    throw FormatError(source_name_ + ":" + std::to_string(line_number_) +
                      ": empty surface, pos or lemma field");
  }
  return token;
}

std::optional<Sentence> SentenceReader::Next() {
  if (done_) return std::nullopt;
  const bool blank_ends = format_.boundary != Boundary::kMarker;
  const bool marker_ends = format_.boundary != Boundary::kBlank;

  Sentence sentence;
  std::string line;
  while (std::getline(input_, line)) {
    ++line_number_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (IsBlank(line)) {
      if (blank_ends && !sentence.tokens.empty()) break;
      continue;
    }
    if (IsMarkup(line)) {
      if (marker_ends && IsSentenceEndMarker(line) &&
          !sentence.tokens.empty()) {
        break;
      }
      continue;
    }
    sentence.tokens.push_back(ParseToken(line));
  }
  if (input_.bad()) {
    throw IoError(source_name_ + ": read error after line " +
                  std::to_string(line_number_));
  }
  if (sentence.tokens.empty()) {
    done_ = true;
    return std::nullopt;
  }
  sentence.index = next_index_++;
  return sentence;
}

struct CorpusStream::Impl {
  std::ifstream file;
  std::unique_ptr<SentenceReader> reader;
};

CorpusStream::CorpusStream(std::unique_ptr<Impl> impl)
    : impl_(std::move(impl)) {}
CorpusStream::CorpusStream(CorpusStream &&) noexcept = default;
CorpusStream &CorpusStream::operator=(CorpusStream &&) noexcept = default;
CorpusStream::~CorpusStream() = default;

std::optional<Sentence> CorpusStream::Next() { return impl_->reader->Next(); }

CorpusStream OpenCorpus(const std::string &path, const CorpusFormat &format) {
  auto impl = std::make_unique<CorpusStream::Impl>();
  impl->file.open(path, std::ios::binary);
  if (!impl->file) throw IoError("cannot open corpus file " + path);
  impl->reader = std::make_unique<SentenceReader>(impl->file, format, path);
  return CorpusStream(std::move(impl));
}

bool IsNoun(const Token &token, std::string_view noun_prefix) {
  return token.pos.compare(0, noun_prefix.size(), noun_prefix) == 0;
}

void WriteSentence(std::ostream &output, const Sentence &sentence,
                   const CorpusFormat &format) {
  for (const Token &token : sentence.tokens) {
    for (std::size_t i = 0; i < format.columns.size(); ++i) {
      if (i > 0) output << '\t';
      switch (format.columns[i]) {
        case Column::kSurface: output << token.surface; break;
        case Column::kPos: output << token.pos; break;
        case Column::kLemma: output << token.lemma; break;
        case Column::kIgnore: output << '_'; break;
      }
    }
    output << '\n';
  }
  output << (format.boundary == Boundary::kMarker ? "</s>\n" : "\n");
}

Corpus Corpus::FromFiles(std::vector<std::string> paths, CorpusFormat format) {
  Corpus corpus;
  corpus.format_ = std::move(format);
  for (std::string &path : paths) {
    corpus.sources_.push_back({CorpusIdForPath(path), std::move(path), {}});
  }
  return corpus;
}

Corpus Corpus::FromText(std::string corpus_id, std::string text,
                        CorpusFormat format) {
  Corpus corpus;
  corpus.format_ = std::move(format);
  corpus.sources_.push_back({std::move(corpus_id), {}, std::move(text)});
  return corpus;
}

void Corpus::ForEachSentence(const Visitor &visit) const {
  for (const Source &source : sources_) {
    if (source.path.empty()) {
      std::istringstream input(source.text);
      SentenceReader reader(input, format_, source.id);
      while (auto sentence = reader.Next()) visit(source.id, *sentence);
    } else {
      CorpusStream stream = OpenCorpus(source.path, format_);
      while (auto sentence = stream.Next()) visit(source.id, *sentence);
    }
  }
}

std::string CorpusIdForPath(const std::string &path) {
  std::size_t slash = path.find_last_of('/');
  return slash == std::string::npos ? path : path.substr(slash + 1);
}

}  // namespace qualia
