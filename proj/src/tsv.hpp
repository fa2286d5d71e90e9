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

// Small helpers shared by the TSV readers. Internal to the library.

#ifndef QUALIA_SRC_TSV_HPP_
#define QUALIA_SRC_TSV_HPP_

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qualia/error.hpp"

namespace qualia::tsv {

// Drops a trailing carriage return.
inline std::string_view StripLine(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

inline std::vector<std::string_view> Split(std::string_view line,
                                           char separator = '\t') {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t end = line.find(separator, start);
    if (end == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, end - start));
    start = end + 1;
  }
}

inline std::uint64_t ParseCount(std::string_view text,
                                const std::string &where) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(),
                                   value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw FormatError(where + ": expected a non-negative integer, got '" +
                      std::string(text) + "'");
  }
  return value;
}

inline std::int64_t ParseSigned(std::string_view text,
                                const std::string &where) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(),
                                   value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw FormatError(where + ": expected an integer, got '" +
                      std::string(text) + "'");
  }
  return value;
}

}  // namespace qualia::tsv

#endif  // QUALIA_SRC_TSV_HPP_
