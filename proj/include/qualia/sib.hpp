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

// Sequential Information Bottleneck clustering.
//
// Nouns are points x with conditional distributions p(y|x) over descriptors
// and a prior p(x). A hard partition T is improved by repeatedly drawing a
// noun out of its cluster and merging it into the cluster t with the
// smallest merge cost
//
//   d(x, t) = (p(x) + p(t)) * JS_pi(p(y|x), p(y|t)),
//   pi = (p(x), p(t)) / (p(x) + p(t)),
//
// which is exactly the loss in I(T;Y) caused by the merge. Every draw
// therefore leaves I(T;Y) unchanged or larger. All logarithms are base 2.

#ifndef QUALIA_SIB_HPP_
#define QUALIA_SIB_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qualia/features.hpp"

namespace qualia {

enum class Prior { kMass, kUniform };

std::string_view PriorName(Prior prior);
Prior ParsePrior(std::string_view name);

// Weighted Jensen-Shannon divergence in bits over aligned dense vectors.
// Throws an argument error unless pi1, pi2 >= 0 and pi1 + pi2 == 1.
double JsDivergence(std::span<const double> p, std::span<const double> q,
                    double pi1, double pi2);
// Same over sparse distributions keyed by descriptor.
double JsDivergence(const Distribution &p, const Distribution &q, double pi1,
                    double pi2);

struct SibOptions {
  int k = 3;
  int restarts = 10;
  std::uint64_t rng_seed = 42;
  int max_passes = 100;
  Prior prior = Prior::kMass;
  // Called after every draw-and-merge step with I(T;Y) before and after.
  // Setting it turns on step-level objective tracking.
  std::function<void(double before, double after)> step_observer;
};

struct ClusterAssignment {
  std::map<std::string, int> assignment;
  int k = 0;
  double objective = 0.0;  // I(T;Y) in bits
  std::vector<std::string> excluded;  // nouns without features
  std::uint64_t rng_seed = 0;
  int restarts_used = 0;

  std::vector<std::string> Members(int cluster) const;
  std::optional<int> ClusterOf(const std::string &noun) const;
};

// The clustering problem derived from a feature matrix.
class SibModel {
 public:
  // A cluster as the merge of its members: p(t) and p(t, y) over all
  // features.
  struct Cluster {
    double mass = 0.0;
    std::vector<double> joint;
  };

  // Uses every non-empty row of the matrix, or only the rows named in
  // `subset`. Feature-less rows are set aside as excluded.
  explicit SibModel(const FeatureMatrix &matrix, Prior prior = Prior::kMass,
                    const std::vector<std::string> *subset = nullptr);

  std::size_t num_nouns() const { return nouns_.size(); }
  std::size_t num_features() const { return features_.size(); }
  const std::vector<std::string> &nouns() const { return nouns_; }
  const std::vector<std::string> &features() const { return features_; }
  const std::vector<std::string> &excluded() const { return excluded_; }
  double prior(std::size_t x) const { return prior_[x]; }
  // p(y|x) as a dense vector over features().
  std::vector<double> Conditional(std::size_t x) const;

  Cluster MakeCluster(std::span<const std::size_t> members) const;
  // Merge cost of noun x into cluster t (x must not be a member). An empty
  // cluster costs 0.
  double MergeCost(std::size_t x, const Cluster &t) const;
  // I(T;Y) of a labeling with labels in [0, k).
  double Objective(std::span<const int> labels, int k) const;
  double Objective(std::span<const Cluster> clusters) const;
  // I(X;Y), the value reached by the all-singletons partition.
  double InputInformation() const;

 private:
  struct Entry {
    std::size_t feature;
    double prob;
  };

  std::vector<std::string> nouns_;
  std::vector<std::string> excluded_;
  std::vector<std::string> features_;
  std::vector<double> prior_;
  std::vector<std::vector<Entry>> rows_;
  std::vector<double> marginal_;  // p(y)
};

// Best-of-restarts sIB. Throws an argument error when fewer than k nouns
// have features.
ClusterAssignment SibRun(const FeatureMatrix &matrix,
                         const SibOptions &options);

// Re-clusters the members of one cluster into options.k groups using their
// original rows.
ClusterAssignment Subcluster(const FeatureMatrix &matrix,
                             const ClusterAssignment &assignment,
                             int cluster_id, const SibOptions &options);

// Assignment TSV: a "# K=<k> objective_bits=<v> seed=<s>" header, then
// noun<TAB>cluster_id sorted by noun; excluded nouns carry "-".
void WriteAssignment(std::ostream &output,
                     const ClusterAssignment &assignment);
ClusterAssignment ReadAssignment(std::istream &input,
                                 const std::string &source_name);
void SaveAssignment(const ClusterAssignment &assignment,
                    const std::string &path);
ClusterAssignment LoadAssignment(const std::string &path);

}  // namespace qualia

#endif  // QUALIA_SIB_HPP_
