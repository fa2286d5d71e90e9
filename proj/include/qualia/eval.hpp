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

#ifndef QUALIA_EVAL_HPP_
#define QUALIA_EVAL_HPP_

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "qualia/features.hpp"
#include "qualia/sib.hpp"

namespace qualia {

struct ClusterColumn {
  int cluster_id = 0;
  std::size_t member_count = 0;
  std::vector<std::size_t> class_counts;  // parallel to table classes
  std::vector<double> proportions;
};

// Per-cluster class proportions. Clusters without members are left out.
struct DistributionTable {
  std::vector<std::string> classes;
  std::vector<ClusterColumn> clusters;
};

// Throws kEvaluation naming the first assigned noun missing from `gold`.
DistributionTable BuildDistributionTable(const ClusterAssignment &assignment,
                                         const SeedLexicon &gold);

// Fraction of assigned nouns that belong to their cluster's majority class.
double Purity(const ClusterAssignment &assignment, const SeedLexicon &gold);

// Four decimals with trailing zeros dropped: 0.3913, 0.9, 0, 1.
std::string FormatProportion(double value);

// Aligned text table: one column per cluster, one row per class and a
// member-count row.
std::string RenderTableText(const DistributionTable &table);
// cluster<TAB>class<TAB>proportion<TAB>count, with a TOTAL row per cluster.
std::string RenderTableTsv(const DistributionTable &table);

// Per-class descriptor listing with counts and provenance, for manual
// accuracy review. The summary block gives distinct descriptors and
// occurrences per class; nouns missing from `gold` are listed under
// UNLABELED.
void WriteDescriptorReview(std::ostream &output, const FeatureMatrix &matrix,
                           const SeedLexicon &gold);
void SaveDescriptorReview(const FeatureMatrix &matrix, const SeedLexicon &gold,
                          const std::string &path);

}  // namespace qualia

#endif  // QUALIA_EVAL_HPP_
