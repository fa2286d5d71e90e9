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

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "qualia/corpus.hpp"
#include "qualia/error.hpp"

using qualia::Boundary;
using qualia::CorpusFormat;
using qualia::Sentence;
using qualia::SentenceReader;
using qualia::Token;

namespace {

std::vector<Sentence> ReadAll(const std::string &text,
                              const CorpusFormat &format = {}) {
  std::istringstream input(text);
  SentenceReader reader(input, format, "test.vert");
  std::vector<Sentence> sentences;
  while (auto sentence = reader.Next()) sentences.push_back(*sentence);
  return sentences;
}

}  // namespace

TEST_SUITE("corpus") {
  TEST_CASE("one block parses into one sentence") {
    auto sentences = ReadAll("A\tDT\ta\nzebra\tNN\tzebra\ngrazes\tVBZ\tgraze\n\n");
    REQUIRE(sentences.size() == 1);
    CHECK(sentences[0].index == 0);
    REQUIRE(sentences[0].tokens.size() == 3);
    CHECK(sentences[0].tokens[1] == Token{"zebra", "NN", "zebra"});
  }

  TEST_CASE("empty input yields nothing") {
    CHECK(ReadAll("").empty());
    CHECK(ReadAll("\n\n  \n").empty());
  }

  TEST_CASE("blank-separated blocks get consecutive indices") {
    auto sentences = ReadAll("a\tDT\ta\n\nb\tNN\tb\n");
    REQUIRE(sentences.size() == 2);
    CHECK(sentences[0].index == 0);
    CHECK(sentences[1].index == 1);
  }

  TEST_CASE("markup lines are skipped and </s> ends a sentence") {
    auto sentences = ReadAll(
        "<text id=\"t\">\n<s>\nA\tDT\ta\n</s>\n<s>\nB\tNN\tb\n</s>\n</text>\n");
    REQUIRE(sentences.size() == 2);
    CHECK(sentences[0].tokens.size() == 1);
    CHECK(sentences[1].tokens[0].lemma == "b");
  }

  TEST_CASE("boundary conventions") {
    const std::string text = "a\tDT\ta\n\nb\tNN\tb\n</s>\nc\tNN\tc\n";
    CorpusFormat format;
    format.boundary = Boundary::kMarker;
    CHECK(ReadAll(text, format).size() == 2);
    format.boundary = Boundary::kBlank;
    CHECK(ReadAll(text, format).size() == 2);
    format.boundary = Boundary::kBoth;
    CHECK(ReadAll(text, format).size() == 3);
  }

  TEST_CASE("lemmas are lowercased and CRLF is accepted") {
    auto sentences = ReadAll("England\tNNP\tEngland\r\n\r\n");
    REQUIRE(sentences.size() == 1);
    CHECK(sentences[0].tokens[0].lemma == "england");
    CHECK(sentences[0].tokens[0].surface == "England");
    CHECK(sentences[0].tokens[0].pos == "NNP");
  }

  TEST_CASE("short token line is a format error naming the line") {
    try {
      ReadAll("a\tDT\ta\nbroken\tNN\n");
      FAIL("expected a format error");
    } catch (const qualia::Error &error) {
      CHECK(error.kind() == qualia::ErrorKind::kFormat);
      CHECK(std::string(error.what()).find("test.vert:2") != std::string::npos);
    }
  }

  TEST_CASE("empty field is a format error") {
    CHECK_THROWS_AS(ReadAll("a\t\ta\n"), qualia::Error);
  }

  TEST_CASE("column order is configurable") {
    CorpusFormat format;
    format.columns = CorpusFormat::ParseColumns("lemma,_,pos,surface");
    auto sentences = ReadAll("zebra\tx\tNNS\tZebras\n", format);
    REQUIRE(sentences.size() == 1);
    CHECK(sentences[0].tokens[0] == Token{"Zebras", "NNS", "zebra"});
    CHECK(CorpusFormat::ColumnsToString(format.columns) ==
          "lemma,_,pos,surface");
  }

  TEST_CASE("trailing ignored columns are optional") {
    CorpusFormat format;
    format.columns = CorpusFormat::ParseColumns("surface,pos,lemma,_");
    CHECK(ReadAll("a\tDT\ta\n", format).size() == 1);
  }

  TEST_CASE("bad format settings are configuration errors") {
    CHECK_THROWS_AS(CorpusFormat::ParseColumns("surface,pos"), qualia::Error);
    CHECK_THROWS_AS(CorpusFormat::ParseColumns("surface,pos,lemma,foo"),
                    qualia::Error);
    CHECK_THROWS_AS(CorpusFormat::ParseBoundary("newline"), qualia::Error);
    CHECK(CorpusFormat::ParseBoundary("MARKER") == Boundary::kMarker);
  }

  TEST_CASE("is_noun uses the tag prefix") {
    CHECK(qualia::IsNoun({"x", "NNS", "x"}));
    CHECK_FALSE(qualia::IsNoun({"x", "VBZ", "x"}));
    CHECK(qualia::IsNoun({"x", "NNP", "x"}, "NN"));
    CHECK_FALSE(qualia::IsNoun({"x", "N", "x"}, "NN"));
    CHECK(qualia::IsNoun({"x", "NOUN", "x"}, "NOUN"));
  }

  TEST_CASE("missing corpus file is an I/O error") {
    try {
      qualia::OpenCorpus("/nonexistent/corpus.vert", CorpusFormat{});
      FAIL("expected an I/O error");
    } catch (const qualia::Error &error) {
      CHECK(error.kind() == qualia::ErrorKind::kIo);
    }
  }

  TEST_CASE("write then read round-trips random sentences") {
    std::mt19937_64 rng(7);
    const std::vector<std::string> words = {"zebra", "the", "Of", "x1", "<",
                                            "such", "mammal", "2", "."};
    const std::vector<std::string> tags = {"NN", "NNS", "DT", "IN", "SENT",
                                           "CD", "JJ", "PRP$"};
    for (Boundary boundary :
         {Boundary::kBlank, Boundary::kMarker, Boundary::kBoth}) {
      for (const char *columns : {"surface,pos,lemma", "pos,_,lemma,surface"}) {
        CorpusFormat format;
        format.boundary = boundary;
        format.columns = CorpusFormat::ParseColumns(columns);
        std::vector<Sentence> sentences;
        for (std::size_t s = 0; s < 50; ++s) {
          Sentence sentence;
          sentence.index = s;
          const std::size_t length = 1 + rng() % 12;
          for (std::size_t t = 0; t < length; ++t) {
            const std::string &word = words[rng() % words.size()];
            sentence.tokens.push_back(
                {word, tags[rng() % tags.size()], qualia::ToLower(word)});
          }
          sentences.push_back(std::move(sentence));
        }
        std::ostringstream out;
        for (const Sentence &sentence : sentences) {
          qualia::WriteSentence(out, sentence, format);
        }
        CHECK(ReadAll(out.str(), format) == sentences);
      }
    }
  }

  TEST_CASE("corpus sources re-stream on every pass") {
    auto corpus = qualia::Corpus::FromText("mem", "a\tNN\ta\n\nb\tNN\tb\n",
                                           CorpusFormat{});
    for (int pass = 0; pass < 2; ++pass) {
      std::vector<std::size_t> seen;
      corpus.ForEachSentence([&](std::string_view id, const Sentence &s) {
        CHECK(id == "mem");
        seen.push_back(s.index);
      });
      CHECK(seen == std::vector<std::size_t>{0, 1});
    }
    CHECK(qualia::CorpusIdForPath("/a/b/part1.vert") == "part1.vert");
  }
}
