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

// Streams a generated million-sentence corpus through the reader and the
// clue matchers and checks that peak memory stays flat.

#include <cstdio>
#include <cstring>
#include <fstream>
#include <istream>
#include <streambuf>
#include <string>

#include "qualia/corpus.hpp"
#include "qualia/patterns.hpp"

namespace {

constexpr std::size_t kSentences = 1000000;
constexpr long kBudgetKb = 64 * 1024;

// Produces the vertical text of kSentences sentences on demand.
class GeneratingBuf : public std::streambuf {
 public:
  GeneratingBuf() { Refill(); }

 protected:
  int_type underflow() override {
    if (gptr() < egptr()) return traits_type::to_int_type(*gptr());
    if (!Refill()) return traits_type::eof();
    return traits_type::to_int_type(*gptr());
  }

 private:
  bool Refill() {
    if (produced_ == kSentences) return false;
    const std::size_t n = produced_;
    ++produced_;
    if (n % 2 == 0) {
      block_ = "wine" + std::to_string(n % 97) +
               "\tNNS\twine\nand\tCC\tand\nother\tJJ\tother\n"
               "drinks\tNNS\tdrink\nwere\tVBD\tbe\nserved\tVBN\tserve\n"
               ".\tSENT\t.\n\n";
    } else {
      block_ = "The\tDT\tthe\nbig\tJJ\tbig\nhouse\tNN\thouse\n"
               "stood\tVBD\tstand\nthere\tRB\tthere\n.\tSENT\t.\n</s>\n";
    }
    char *begin = block_.data();
    setg(begin, begin, begin + block_.size());
    return true;
  }

  std::string block_;
  std::size_t produced_ = 0;
};

long StatusKb(const char *field) {
  std::ifstream status("/proc/self/status");
  std::string line;
  const std::size_t length = std::strlen(field);
  while (std::getline(status, line)) {
    if (line.compare(0, length, field) == 0) {
      return std::stol(line.substr(length + 1));
    }
  }
  return -1;
}

}  // namespace

int main() {
  const long before = StatusKb("VmHWM");
  GeneratingBuf buffer;
  std::istream input(&buffer);
  qualia::CorpusFormat format;
  format.boundary = qualia::Boundary::kBoth;
  qualia::SentenceReader reader(input, format, "generated");
  const qualia::MatcherSet matchers =
      qualia::CompileClues(qualia::DefaultTemplates());
  const qualia::SeedSet seeds = {"wine"};

  std::size_t sentences = 0, records = 0;
  while (auto sentence = reader.Next()) {
    ++sentences;
    records += qualia::MatchSentence(*sentence, matchers, seeds).size();
  }
  const long after = StatusKb("VmHWM");
  const long growth = after - before;
  std::printf("sentences=%zu records=%zu peak_growth_kb=%ld\n", sentences,
              records, growth);

  bool ok = true;
  if (sentences != kSentences) {
    std::printf("FAIL: expected %zu sentences\n", kSentences);
    ok = false;
  }
  if (records != kSentences / 2) {
    std::printf("FAIL: expected %zu records\n", kSentences / 2);
    ok = false;
  }
  if (before < 0 || after < 0) {
    std::printf("FAIL: /proc/self/status unavailable\n");
    ok = false;
  } else if (growth > kBudgetKb) {
    std::printf("FAIL: peak memory grew by %ld kB\n", growth);
    ok = false;
  }
  std::printf("%s\n", ok ? "PASS" : "FAIL");
  return ok ? 0 : 1;
}
