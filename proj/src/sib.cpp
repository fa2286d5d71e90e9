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

#include "qualia/sib.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>

#include "qualia/error.hpp"
#include "random.hpp"
#include "tsv.hpp"

namespace qualia {
namespace {

// p * log2(p / q), with the 0 log 0 = 0 convention.
inline double PlogPq(double p, double q) {
  return p > 0.0 ? p * std::log2(p / q) : 0.0;
}

void CheckWeights(double pi1, double pi2) {
  if (!(pi1 >= 0.0) || !(pi2 >= 0.0) || std::fabs(pi1 + pi2 - 1.0) > 1e-12) {
    throw ArgumentError("JS weights must be non-negative and sum to 1");
  }
}

struct RestartResult {
  std::vector<int> labels;
  double objective = 0.0;
};

class SequentialClusterer {
 public:
  SequentialClusterer(const SibModel &model, const SibOptions &options,
                      std::uint64_t seed)
      : model_(model), options_(options), rng_(seed) {}

  RestartResult Run() {
    const std::size_t n = model_.num_nouns();
    const int k = options_.k;
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    random::Shuffle(order, rng_);
    labels_.assign(n, 0);
    members_.assign(k, {});
    for (std::size_t i = 0; i < n; ++i) {
      labels_[order[i]] = static_cast<int>(i % k);
    }
    for (std::size_t x = 0; x < n; ++x) members_[labels_[x]].push_back(x);
    clusters_.clear();
    for (int t = 0; t < k; ++t) clusters_.push_back(Rebuild(t));

    const bool observe = static_cast<bool>(options_.step_observer);
    for (int pass = 0; pass < options_.max_passes; ++pass) {
      random::Shuffle(order, rng_);
      int changes = 0;
      for (std::size_t x : order) {
        const double before = observe ? model_.Objective(clusters_) : 0.0;
        const int from = labels_[x];
        Remove(x);
        int best = 0;
        double best_cost = model_.MergeCost(x, clusters_[0]);
        for (int t = 1; t < k; ++t) {
          const double cost = model_.MergeCost(x, clusters_[t]);
          if (cost < best_cost) {
            best_cost = cost;
            best = t;
          }
        }
        Insert(x, best);
        if (best != from) ++changes;
        if (observe) options_.step_observer(before, model_.Objective(clusters_));
      }
      if (changes == 0) break;
    }
    return {labels_, model_.Objective(clusters_)};
  }

 private:
  SibModel::Cluster Rebuild(int t) {
    std::vector<std::size_t> &m = members_[t];
    std::sort(m.begin(), m.end());
    return model_.MakeCluster(m);
  }

  void Remove(std::size_t x) {
    const int t = labels_[x];
    auto &m = members_[t];
    m.erase(std::find(m.begin(), m.end(), x));
    clusters_[t] = Rebuild(t);
  }

  void Insert(std::size_t x, int t) {
    labels_[x] = t;
    members_[t].push_back(x);
    clusters_[t] = Rebuild(t);
  }

  const SibModel &model_;
  const SibOptions &options_;
  std::mt19937_64 rng_;
  std::vector<int> labels_;
  std::vector<std::vector<std::size_t>> members_;
  std::vector<SibModel::Cluster> clusters_;
};

ClusterAssignment RunModel(const SibModel &model, const SibOptions &options) {
  if (options.k < 1) throw ArgumentError("sib-cluster: K must be at least 1");
  if (options.restarts < 1) {
    throw ArgumentError("sib-cluster: restarts must be at least 1");
  }
  if (options.max_passes < 1) {
    throw ArgumentError("sib-cluster: max_passes must be at least 1");
  }
  if (model.num_nouns() < static_cast<std::size_t>(options.k)) {
    throw ArgumentError("sib-cluster: " + std::to_string(model.num_nouns()) +
                        " nouns with features cannot fill K=" +
                        std::to_string(options.k) + " clusters");
  }

  std::uint64_t seed_state = options.rng_seed;
  RestartResult best;
  std::uint64_t best_seed = 0;
  bool have_best = false;
  for (int r = 0; r < options.restarts; ++r) {
    const std::uint64_t sub_seed = random::SplitMix64(seed_state);
    SequentialClusterer clusterer(model, options, sub_seed);
    RestartResult result = clusterer.Run();
    if (!have_best || result.objective > best.objective ||
        (result.objective == best.objective && sub_seed < best_seed)) {
      best = std::move(result);
      best_seed = sub_seed;
      have_best = true;
    }
  }

  ClusterAssignment assignment;
  assignment.k = options.k;
  assignment.objective = best.objective;
  assignment.excluded = model.excluded();
  assignment.rng_seed = options.rng_seed;
  assignment.restarts_used = options.restarts;
  for (std::size_t x = 0; x < model.num_nouns(); ++x) {
    assignment.assignment[model.nouns()[x]] = best.labels[x];
  }
  return assignment;
}

}  // namespace

std::string_view PriorName(Prior prior) {
  return prior == Prior::kMass ? "mass" : "uniform";
}

Prior ParsePrior(std::string_view name) {
  if (name == "mass") return Prior::kMass;
  if (name == "uniform") return Prior::kUniform;
  throw ConfigError("unknown prior '" + std::string(name) +
                    "' (expected mass or uniform)");
}

double JsDivergence(std::span<const double> p, std::span<const double> q,
                    double pi1, double pi2) {
  CheckWeights(pi1, pi2);
  if (p.size() != q.size()) {
    throw ArgumentError("JS divergence over vectors of different length");
  }
  double kl_p = 0.0, kl_q = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double m = pi1 * p[i] + pi2 * q[i];
    if (pi1 > 0.0) kl_p += PlogPq(p[i], m);
    if (pi2 > 0.0) kl_q += PlogPq(q[i], m);
  }
  return std::max(0.0, pi1 * kl_p + pi2 * kl_q);
}

double JsDivergence(const Distribution &p, const Distribution &q, double pi1,
                    double pi2) {
  std::map<std::string, std::pair<double, double>> joint;
  for (std::size_t i = 0; i < p.support.size(); ++i) {
    joint[p.support[i]].first += p.probs[i];
  }
  for (std::size_t i = 0; i < q.support.size(); ++i) {
    joint[q.support[i]].second += q.probs[i];
  }
  std::vector<double> dense_p, dense_q;
  for (const auto &[label, pair] : joint) {
    dense_p.push_back(pair.first);
    dense_q.push_back(pair.second);
  }
  return JsDivergence(dense_p, dense_q, pi1, pi2);
}

std::vector<std::string> ClusterAssignment::Members(int cluster) const {
  std::vector<std::string> members;
  for (const auto &[noun, label] : assignment) {
    if (label == cluster) members.push_back(noun);
  }
  return members;
}

std::optional<int> ClusterAssignment::ClusterOf(
    const std::string &noun) const {
  auto it = assignment.find(noun);
  if (it == assignment.end()) return std::nullopt;
  return it->second;
}

SibModel::SibModel(const FeatureMatrix &matrix, Prior prior,
                   const std::vector<std::string> *subset) {
  std::vector<std::string> candidates;
  if (subset != nullptr) {
    std::set<std::string> unique(subset->begin(), subset->end());
    candidates.assign(unique.begin(), unique.end());
  } else {
    for (const auto &[noun, row] : matrix.rows()) candidates.push_back(noun);
  }

  std::map<std::string, std::size_t> feature_index;
  for (const std::string &noun : candidates) {
    const FeatureMatrix::Row *row = matrix.FindRow(noun);
    if (row == nullptr || row->empty()) {
      excluded_.push_back(noun);
      continue;
    }
    nouns_.push_back(noun);
    for (const auto &[descriptor, count] : *row) {
      feature_index.emplace(descriptor, 0);
    }
  }
  std::size_t next = 0;
  for (auto &[descriptor, index] : feature_index) {
    index = next++;
    features_.push_back(descriptor);
  }

  double total_mass = 0.0;
  std::vector<double> masses;
  for (const std::string &noun : nouns_) {
    const FeatureMatrix::Row &row = *matrix.FindRow(noun);
    const double mass = static_cast<double>(matrix.RowMass(noun));
    masses.push_back(mass);
    total_mass += mass;
    std::vector<Entry> entries;
    for (const auto &[descriptor, count] : row) {
      entries.push_back(
          {feature_index.at(descriptor), static_cast<double>(count) / mass});
    }
    rows_.push_back(std::move(entries));
  }
  for (double mass : masses) {
    prior_.push_back(prior == Prior::kMass
                         ? mass / total_mass
                         : 1.0 / static_cast<double>(nouns_.size()));
  }
  marginal_.assign(features_.size(), 0.0);
  for (std::size_t x = 0; x < nouns_.size(); ++x) {
    for (const Entry &entry : rows_[x]) {
      marginal_[entry.feature] += prior_[x] * entry.prob;
    }
  }
}

std::vector<double> SibModel::Conditional(std::size_t x) const {
  std::vector<double> dense(features_.size(), 0.0);
  for (const Entry &entry : rows_[x]) dense[entry.feature] = entry.prob;
  return dense;
}

SibModel::Cluster SibModel::MakeCluster(
    std::span<const std::size_t> members) const {
  Cluster cluster;
  cluster.joint.assign(features_.size(), 0.0);
  for (std::size_t x : members) {
    cluster.mass += prior_[x];
    for (const Entry &entry : rows_[x]) {
      cluster.joint[entry.feature] += prior_[x] * entry.prob;
    }
  }
  return cluster;
}

double SibModel::MergeCost(std::size_t x, const Cluster &t) const {
  if (t.mass <= 0.0) return 0.0;
  // Sum of p(x,y) log(p(y|x)/m_y) + p(t,y) log(p(y|t)/m_y), where
  // m_y = (p(x,y) + p(t,y)) / (p(x) + p(t)). Features outside x's support
  // all share the ratio (p(x) + p(t)) / p(t), so only x's support is
  // visited.
  const double px = prior_[x];
  const double merged = px + t.mass;
  double cost = 0.0;
  double covered = 0.0;
  for (const Entry &entry : rows_[x]) {
    const double a = px * entry.prob;
    const double b = t.joint[entry.feature];
    const double m = (a + b) / merged;
    cost += PlogPq(a, px * m);
    cost += PlogPq(b, t.mass * m);
    covered += b;
  }
  const double rest = t.mass - covered;
  if (rest > 0.0) cost += rest * std::log2(merged / t.mass);
  return std::max(0.0, cost);
}

double SibModel::Objective(std::span<const Cluster> clusters) const {
  double information = 0.0;
  for (const Cluster &cluster : clusters) {
    if (cluster.mass <= 0.0) continue;
    for (std::size_t y = 0; y < features_.size(); ++y) {
      const double joint = cluster.joint[y];
      if (joint > 0.0) {
        information += joint * std::log2(joint / (cluster.mass * marginal_[y]));
      }
    }
  }
  return std::max(0.0, information);
}

double SibModel::Objective(std::span<const int> labels, int k) const {
  std::vector<std::vector<std::size_t>> members(k);
  for (std::size_t x = 0; x < labels.size(); ++x) {
    if (labels[x] < 0 || labels[x] >= k) {
      throw ArgumentError("cluster label out of range");
    }
    members[labels[x]].push_back(x);
  }
  std::vector<Cluster> clusters;
  for (const auto &m : members) clusters.push_back(MakeCluster(m));
  return Objective(clusters);
}

double SibModel::InputInformation() const {
  std::vector<int> labels(nouns_.size());
  std::iota(labels.begin(), labels.end(), 0);
  return Objective(labels, static_cast<int>(nouns_.size()));
}

ClusterAssignment SibRun(const FeatureMatrix &matrix,
                         const SibOptions &options) {
  SibModel model(matrix, options.prior);
  return RunModel(model, options);
}

ClusterAssignment Subcluster(const FeatureMatrix &matrix,
                             const ClusterAssignment &assignment,
                             int cluster_id, const SibOptions &options) {
  if (cluster_id < 0 || cluster_id >= assignment.k) {
    throw ArgumentError("cluster id " + std::to_string(cluster_id) +
                        " is outside [0, " + std::to_string(assignment.k) +
                        ")");
  }
  std::vector<std::string> members = assignment.Members(cluster_id);
  if (members.size() < static_cast<std::size_t>(std::max(options.k, 1))) {
    throw ArgumentError("cluster " + std::to_string(cluster_id) + " has " +
                        std::to_string(members.size()) +
                        " members, too few for K=" +
                        std::to_string(options.k));
  }
  SibModel model(matrix, options.prior, &members);
  return RunModel(model, options);
}

void WriteAssignment(std::ostream &output,
                     const ClusterAssignment &assignment) {
  char objective[64];
  std::snprintf(objective, sizeof(objective), "%.12f", assignment.objective);
  output << "# K=" << assignment.k << " objective_bits=" << objective
         << " seed=" << assignment.rng_seed << '\n';
  std::map<std::string, std::string> lines;
  for (const auto &[noun, label] : assignment.assignment) {
    lines[noun] = std::to_string(label);
  }
  for (const std::string &noun : assignment.excluded) lines[noun] = "-";
  for (const auto &[noun, label] : lines) {
    output << noun << '\t' << label << '\n';
  }
}

ClusterAssignment ReadAssignment(std::istream &input,
                                 const std::string &source_name) {
  ClusterAssignment assignment;
  std::string line;
  std::size_t line_number = 0;
  bool have_header = false;
  while (std::getline(input, line)) {
    ++line_number;
    std::string_view view = tsv::StripLine(line);
    const std::string where = source_name + ":" + std::to_string(line_number);
    if (view.empty()) continue;
    if (view.front() == '#') {
      if (have_header) continue;
      view.remove_prefix(1);
      for (std::string_view field : tsv::Split(view, ' ')) {
        if (field.empty()) continue;
        std::size_t eq = field.find('=');
        if (eq == std::string_view::npos) continue;
        std::string_view key = field.substr(0, eq);
        std::string value(field.substr(eq + 1));
        if (key == "K") {
          assignment.k = static_cast<int>(tsv::ParseCount(value, where));
        } else if (key == "objective_bits") {
          char *end = nullptr;
          assignment.objective = std::strtod(value.c_str(), &end);
          if (end == value.c_str() || *end != '\0') {
            throw FormatError(where + ": bad objective '" + value + "'");
          }
        } else if (key == "seed") {
          assignment.rng_seed = tsv::ParseCount(value, where);
        }
      }
      have_header = true;
      continue;
    }
    if (!have_header || assignment.k < 1) {
      throw FormatError(where + ": missing '# K=<k> ...' header");
    }
    std::vector<std::string_view> fields = tsv::Split(view);
    if (fields.size() != 2 || fields[0].empty()) {
      throw FormatError(where + ": expected noun<TAB>cluster_id");
    }
    std::string noun(fields[0]);
    if (assignment.assignment.count(noun) > 0 ||
        std::find(assignment.excluded.begin(), assignment.excluded.end(),
                  noun) != assignment.excluded.end()) {
      throw FormatError(where + ": noun '" + noun + "' listed twice");
    }
    if (fields[1] == "-") {
      assignment.excluded.push_back(noun);
      continue;
    }
    const std::int64_t label = tsv::ParseSigned(fields[1], where);
    if (label < 0 || label >= assignment.k) {
      throw FormatError(where + ": cluster id " + std::to_string(label) +
                        " outside [0, " + std::to_string(assignment.k) + ")");
    }
    assignment.assignment[noun] = static_cast<int>(label);
  }
  if (!have_header) {
    throw FormatError(source_name + ": missing '# K=<k> ...' header");
  }
  return assignment;
}

void SaveAssignment(const ClusterAssignment &assignment,
                    const std::string &path) {
  std::ofstream output(path, std::ios::binary);
  if (!output) throw IoError("cannot write assignment file " + path);
  WriteAssignment(output, assignment);
  if (!output) throw IoError("error writing assignment file " + path);
}

ClusterAssignment LoadAssignment(const std::string &path) {
  std::ifstream input(path, std::ios::binary);
  if (!input) throw IoError("cannot open assignment file " + path);
  return ReadAssignment(input, path);
}

}  // namespace qualia
