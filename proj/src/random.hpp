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

// Portable random helpers on top of std::mt19937_64. The standard
// distributions are implementation-defined, so sampling is done here to keep
// seeded runs identical across standard libraries.

#ifndef QUALIA_SRC_RANDOM_HPP_
#define QUALIA_SRC_RANDOM_HPP_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <utility>
#include <vector>

namespace qualia::random {

inline std::uint64_t SplitMix64(std::uint64_t &state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Uniform in [0, n), n > 0.
inline std::size_t UniformIndex(std::mt19937_64 &rng, std::size_t n) {
  const std::uint64_t range = static_cast<std::uint64_t>(n);
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - max % range;
  std::uint64_t value;
  do {
    value = rng();
  } while (value >= limit);
  return static_cast<std::size_t>(value % range);
}

// Uniform in [lo, hi].
inline int UniformInt(std::mt19937_64 &rng, int lo, int hi) {
  return lo + static_cast<int>(
                  UniformIndex(rng, static_cast<std::size_t>(hi - lo + 1)));
}

// Uniform in [0, 1).
inline double UniformReal(std::mt19937_64 &rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

template <typename T>
void Shuffle(std::vector<T> &items, std::mt19937_64 &rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    using std::swap;
    swap(items[i - 1], items[UniformIndex(rng, i)]);
  }
}

}  // namespace qualia::random

#endif  // QUALIA_SRC_RANDOM_HPP_
