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

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "oracles.hpp"
#include "qualia/error.hpp"
#include "qualia/eval.hpp"
#include "qualia/pipeline.hpp"
#include "test_util.hpp"

#ifndef QUALIA_TEST_DATA
#error "QUALIA_TEST_DATA must point at tests/data"
#endif

namespace fs = std::filesystem;

namespace {

const std::string kData = QUALIA_TEST_DATA;

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Step-level monotonicity tally shared by criteria 5, 6 and 7.
struct StepLog {
  long steps = 0;
  long decreases = 0;
  double worst = 0.0;

  std::function<void(double, double)> Observer() {
    return [this](double before, double after) {
      ++steps;
      if (after < before - 1e-12) {
        ++decreases;
        worst = std::max(worst, before - after);
      }
    };
  }
};

StepLog g_steps;

struct Outcome {
  bool pass = false;
  std::string detail;
};

using RecordKey = std::tuple<std::string, std::string, int, std::size_t,
                             std::string>;

std::set<RecordKey> Keys(const std::vector<qualia::ExtractionRecord> &records) {
  std::set<RecordKey> keys;
  for (const auto &r : records) {
    keys.insert({r.seed, r.descriptor, static_cast<int>(r.clue),
                 r.sentence_index, r.corpus_id});
  }
  return keys;
}

std::string Format(const char *format, double a, double b = 0, double c = 0,
                   double d = 0) {
  char buffer[256];
  std::snprintf(buffer, sizeof(buffer), format, a, b, c, d);
  return buffer;
}

Outcome PatternFidelity() {
  const auto start = Clock::now();
  const auto corpus = qualia::Corpus::FromFiles({kData + "/mini.vert"},
                                                qualia::CorpusFormat{});
  const auto lexicon = qualia::LoadSeedLexicon(kData + "/mini.seeds.tsv");
  const auto extracted = qualia::ExtractCorpus(
      corpus, qualia::CompileClues(qualia::DefaultTemplates()),
      lexicon.Seeds());
  const double elapsed = Seconds(start);
  const auto gold = Keys(qualia::LoadRecords(kData + "/mini.gold.tsv"));
  const auto found = Keys(extracted);
  std::size_t hits = 0;
  for (const auto &key : found) hits += gold.count(key);
  const double precision =
      found.empty() ? 0.0 : static_cast<double>(hits) / found.size();
  const double recall =
      gold.empty() ? 0.0 : static_cast<double>(hits) / gold.size();
  std::set<int> clues;
  for (const auto &key : gold) clues.insert(std::get<2>(key));
  Outcome outcome;
  outcome.pass = precision == 1.0 && recall == 1.0 &&
                 extracted.size() == found.size() && clues.size() == 4 &&
                 elapsed < 1.0;
  outcome.detail = Format("precision=%.4f recall=%.4f gold=%.0f time=%.3fs",
                          precision, recall, gold.size(), elapsed);
  return outcome;
}

Outcome FilterContract() {
  std::mt19937_64 rng(2026);
  int violations = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int rows = 1 + static_cast<int>(rng() % 100);
    const int columns = 1 + static_cast<int>(rng() % 500);
    const double density = 0.001 + (rng() % 1000) / 20000.0;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    qualia::FeatureMatrix matrix;
    std::map<std::string, std::map<std::string, std::int64_t>> plain;
    for (int r = 0; r < rows; ++r) {
      const std::string noun = "n" + std::to_string(r);
      matrix.EnsureRow(noun);
      plain[noun];
      for (int c = 0; c < columns; ++c) {
        if (unit(rng) < density) {
          const std::string column = "d" + std::to_string(c);
          const std::int64_t count = 1 + static_cast<std::int64_t>(rng() % 9);
          matrix.Add(noun, column, count);
          plain[noun][column] = count;
        }
      }
    }
    const auto once = qualia::FilterShared(matrix);
    const auto twice = qualia::FilterShared(once);
    bool ok = twice.SameRows(once) && once.num_rows() == matrix.num_rows();
    for (const auto &[column, sharers] : once.ColumnSharers()) {
      if (sharers < 2) ok = false;
    }
    ok = ok && once.Columns() == oracle::SharedColumns(plain, 2);
    for (const auto &[noun, row] : once.rows()) {
      for (const auto &[column, count] : row) {
        if (plain[noun][column] != count) ok = false;
      }
    }
    if (!ok) ++violations;
  }
  return {violations == 0, "matrices=1000 violations=" +
                               std::to_string(violations)};
}

std::set<std::string> BootstrappedRow(const std::string &fixture,
                                      const std::string &noun,
                                      const testutil::TempDir &dir) {
  qualia::PipelineConfig config;
  config.corpus = {kData + "/" + fixture + ".vert"};
  config.seeds = kData + "/" + fixture + ".seeds.tsv";
  config.out = dir / fixture;
  qualia::RunExtract(config);
  qualia::RunBuild(config);
  qualia::RunFilter(config);
  qualia::RunBootstrap(config);
  std::set<std::string> row;
  const auto matrix = qualia::LoadMatrix(dir / (fixture + "/matrix.tsv"));
  if (const auto *found = matrix.FindRow(noun)) {
    for (const auto &entry : *found) row.insert(entry.first);
  }
  return row;
}

std::string Join(const std::set<std::string> &items) {
  std::string text;
  for (const auto &item : items) text += (text.empty() ? "" : ",") + item;
  return "{" + text + "}";
}

Outcome BootstrapInference() {
  testutil::TempDir dir("accept-boot");
  const auto zebra = BootstrappedRow("zebra", "zebra", dir);
  const auto treasurer = BootstrappedRow("treasurer", "treasurer", dir);
  Outcome outcome;
  outcome.pass =
      zebra == std::set<std::string>{"mammal", "animal"} &&
      treasurer == std::set<std::string>{"officer", "person", "employee"};
  outcome.detail = "zebra=" + Join(zebra) + " treasurer=" + Join(treasurer);
  return outcome;
}

Outcome JsCorrectness() {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t size = 1 + rng() % 50;
    const auto p = oracle::RandomDistribution(rng, size, 0.3);
    const auto q = oracle::RandomDistribution(rng, size, 0.3);
    const double pi1 = unit(rng);
    const double value = qualia::JsDivergence(p, q, pi1, 1.0 - pi1);
    worst = std::max(worst, std::abs(value - oracle::Js(p, q, pi1, 1.0 - pi1)));
  }
  double identical = 0.0, disjoint_error = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t size = 2 + rng() % 20;
    const auto p = oracle::RandomDistribution(rng, size, 0.2);
    identical = std::max(identical,
                         std::abs(qualia::JsDivergence(p, p, 0.5, 0.5)));
    std::vector<double> a(2 * size, 0.0), b(2 * size, 0.0);
    for (std::size_t i = 0; i < size; ++i) {
      a[i] = p[i];
      b[size + i] = p[i];
    }
    disjoint_error = std::max(
        disjoint_error, std::abs(qualia::JsDivergence(a, b, 0.5, 0.5) - 1.0));
  }
  Outcome outcome;
  outcome.pass = worst <= 1e-10 && identical <= 1e-12 &&
                 disjoint_error <= 1e-12;
  outcome.detail = Format("pairs=10000 max_error=%.3g identical=%.3g "
                          "disjoint_error=%.3g",
                          worst, identical, disjoint_error);
  return outcome;
}

qualia::FeatureMatrix FromCounts(const oracle::Counts &counts) {
  qualia::FeatureMatrix matrix;
  for (std::size_t x = 0; x < counts.size(); ++x) {
    const std::string noun = "n" + std::to_string(100 + x);
    matrix.EnsureRow(noun);
    for (std::size_t y = 0; y < counts[x].size(); ++y) {
      if (counts[x][y] > 0) {
        matrix.Add(noun, "f" + std::to_string(100 + y),
                   static_cast<std::int64_t>(counts[x][y]));
      }
    }
  }
  return matrix;
}

Outcome SibOptimality() {
  std::mt19937_64 rng(5);
  const auto start = Clock::now();
  int optimal = 0, above = 0;
  double brute_time = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int nouns = 4 + static_cast<int>(rng() % 9);       // 4..12
    const int features = 3 + static_cast<int>(rng() % 18);   // 3..20
    const int k = 2 + trial % 2;
    oracle::Counts counts(nouns, std::vector<double>(features, 0.0));
    for (auto &row : counts) {
      for (double &c : row) {
        if (rng() % 4 == 0) c = static_cast<double>(1 + rng() % 8);
      }
      row[rng() % features] += 1.0;
    }
    qualia::SibOptions options;
    options.k = k;
    options.restarts = 20;
    options.rng_seed = 1000 + trial;
    options.step_observer = g_steps.Observer();
    const auto assignment = qualia::SibRun(FromCounts(counts), options);
    const auto brute_start = Clock::now();
    const double best = oracle::BruteForceMaximum(counts, k);
    brute_time += Seconds(brute_start);
    if (assignment.objective > best + 1e-9) ++above;
    if (std::abs(assignment.objective - best) <= 1e-9) ++optimal;
  }
  const double sib_time = Seconds(start) - brute_time;
  Outcome outcome;
  outcome.pass = optimal >= 95 && above == 0 && sib_time < 60.0;
  outcome.detail = Format("optimal=%.0f/100 above=%.0f sib_time=%.2fs "
                          "oracle_time=%.2fs",
                          optimal, above, sib_time, brute_time);
  return outcome;
}

double Median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

struct ShapeResult {
  double pure_clusters = 0;  // non-low-info clusters with majority >= 0.85
  double low_info = 0;       // low-info nouns in the low-info cluster
  double dots = 0;           // dot objects in the dot-majority subcluster
};

ShapeResult SyntheticShape(std::uint64_t seed, const testutil::TempDir &dir) {
  qualia::PipelineConfig config;
  config.synthetic.classes = 3;
  config.synthetic.nouns = 60;
  config.synthetic.low_info = 7;
  config.synthetic.dot_objects = 6;
  config.synthetic.seed = seed;
  const std::string base = dir / ("seed" + std::to_string(seed));
  config.out = base + "/synthetic";
  qualia::RunGenSynthetic(config);
  const auto data = qualia::GenerateSynthetic(config.synthetic);

  config.corpus = {base + "/synthetic/corpus.vert"};
  config.seeds = base + "/synthetic/seeds.tsv";
  config.out = base + "/run";
  config.k = {4};
  config.seed = seed;
  qualia::RunPipeline(config);

  const auto matrix = qualia::LoadMatrix(base + "/run/matrix.tsv");
  const auto assignment = qualia::LoadAssignment(base + "/run/assignment.k4.tsv");
  // Rerun with step tracking: same result, and every step is monotone.
  qualia::SibOptions options = qualia::MakeSibOptions(config, 4);
  options.step_observer = g_steps.Observer();
  const auto tracked = qualia::SibRun(matrix, options);
  if (tracked.assignment != assignment.assignment) {
    throw qualia::Error(qualia::ErrorKind::kArgument,
                        "tracked rerun differs from the pipeline result");
  }

  const std::set<std::string> low(data.low_info_nouns.begin(),
                                  data.low_info_nouns.end());
  const std::set<std::string> dots(data.dot_object_nouns.begin(),
                                   data.dot_object_nouns.end());
  const std::string first_class = data.lexicon.classes().front();

  ShapeResult result;
  int low_cluster = -1;
  for (int c = 0; c < assignment.k; ++c) {
    const auto members = assignment.Members(c);
    const int count = static_cast<int>(std::count_if(
        members.begin(), members.end(),
        [&](const std::string &n) { return low.count(n) > 0; }));
    if (count > result.low_info) {
      result.low_info = count;
      low_cluster = c;
    }
  }
  int human_cluster = -1;
  double human_purity = -1.0;
  for (int c = 0; c < assignment.k; ++c) {
    if (c == low_cluster) continue;
    const auto members = assignment.Members(c);
    if (members.empty()) continue;
    std::map<std::string, int> classes;
    for (const auto &noun : members) ++classes[*data.lexicon.ClassOf(noun)];
    const auto majority = std::max_element(
        classes.begin(), classes.end(),
        [](const auto &a, const auto &b) { return a.second < b.second; });
    const double purity =
        static_cast<double>(majority->second) / members.size();
    if (purity >= 0.85) ++result.pure_clusters;
    if (majority->first == first_class && purity > human_purity) {
      human_purity = purity;
      human_cluster = c;
    }
  }
  if (human_cluster >= 0) {
    config.cluster_id = human_cluster;
    config.k2 = 2;
    config.assignment = base + "/run/assignment.k4.tsv";
    qualia::RunSubcluster(config);
    qualia::SibOptions sub_options = qualia::MakeSibOptions(config, 2);
    sub_options.step_observer = g_steps.Observer();
    const auto sub =
        qualia::Subcluster(matrix, assignment, human_cluster, sub_options);
    for (int c = 0; c < sub.k; ++c) {
      const auto members = sub.Members(c);
      const double count = static_cast<double>(std::count_if(
          members.begin(), members.end(),
          [&](const std::string &n) { return dots.count(n) > 0; }));
      result.dots = std::max(result.dots, count);
    }
  }
  return result;
}

Outcome ShapeOnSynthetic() {
  testutil::TempDir dir("accept-shape");
  const auto start = Clock::now();
  std::vector<double> pure, low, dots;
  std::string per_seed;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const ShapeResult result = SyntheticShape(seed, dir);
    pure.push_back(result.pure_clusters);
    low.push_back(result.low_info);
    dots.push_back(result.dots);
    per_seed += " " + std::to_string(static_cast<int>(result.pure_clusters)) +
                "/" + std::to_string(static_cast<int>(result.low_info)) + "/" +
                std::to_string(static_cast<int>(result.dots));
  }
  const double elapsed = Seconds(start);
  Outcome outcome;
  outcome.pass = Median(pure) >= 3 && Median(low) >= 5 && Median(dots) >= 5 &&
                 elapsed < 30.0;
  outcome.detail =
      Format("median pure_clusters=%.1f low_info=%.1f/7 dots=%.1f/6 "
             "time=%.2fs",
             Median(pure), Median(low), Median(dots), elapsed) +
      " per-seed(pure/low/dots):" + per_seed;
  return outcome;
}

Outcome Monotonicity() {
  Outcome outcome;
  outcome.pass = g_steps.steps > 0 && g_steps.decreases == 0;
  outcome.detail = "steps=" + std::to_string(g_steps.steps) +
                   " decreases=" + std::to_string(g_steps.decreases) +
                   Format(" worst_drop=%.3g", g_steps.worst);
  return outcome;
}

Outcome TableRendering() {
  const auto assignment =
      qualia::LoadAssignment(kData + "/table4.assignment.tsv");
  const auto gold = qualia::LoadSeedLexicon(kData + "/tables.gold.tsv");
  const std::string text =
      qualia::RenderTableText(qualia::BuildDistributionTable(assignment, gold));
  std::printf("%s", text.c_str());
  Outcome outcome;
  outcome.pass = text.find("0.3913") != std::string::npos &&
                 text.find("0.6087") != std::string::npos;
  outcome.detail = outcome.pass ? "rendered 0.3913 and 0.6087"
                                : "missing 0.3913 or 0.6087";
  return outcome;
}

std::map<std::string, std::string> Snapshot(const std::string &directory) {
  std::map<std::string, std::string> files;
  for (const auto &entry : fs::directory_iterator(directory)) {
    files[entry.path().filename().string()] =
        testutil::ReadFile(entry.path().string());
  }
  return files;
}

Outcome Determinism() {
  testutil::TempDir dir("accept-determinism");
  qualia::PipelineConfig config;
  config.synthetic.seed = 7;
  config.out = dir / "synthetic";
  qualia::RunGenSynthetic(config);
  config.corpus = {dir / "synthetic/corpus.vert"};
  config.seeds = dir / "synthetic/seeds.tsv";
  config.k = {3, 4};

  config.out = dir / "a";
  qualia::RunPipeline(config);
  const auto first = Snapshot(config.out);
  qualia::RunPipeline(config);
  const auto rerun = Snapshot(config.out);
  config.out = dir / "b";
  qualia::RunPipeline(config);
  auto other = Snapshot(config.out);

  int compared = 0, differing = 0;
  for (const auto &[name, text] : first) {
    const bool tracked = name.rfind("matrix", 0) == 0 ||
                         name.rfind("assignment", 0) == 0 ||
                         name.rfind("table", 0) == 0;
    ++compared;
    if (rerun.at(name) != text) ++differing;
    // The manifest records the run directory itself.
    if (name != "manifest.txt" && other[name] != text) ++differing;
    if (tracked && other[name].empty()) ++differing;
  }
  Outcome outcome;
  outcome.pass = differing == 0 && first.size() == rerun.size() &&
                 first.size() == other.size() && first.count("matrix.tsv") &&
                 first.count("assignment.k4.tsv") && first.count("table.k4.txt");
  outcome.detail = "files=" + std::to_string(compared) +
                   " differing=" + std::to_string(differing);
  return outcome;
}

}  // namespace

int main() {
  struct Criterion {
    int number;
    const char *name;
    std::function<Outcome()> run;
  };
  // Criterion 6 runs last: it reads the step log of criteria 5 and 7.
  const std::vector<Criterion> criteria = {
      {1, "pattern-engine fidelity", PatternFidelity},
      {2, "filter contract", FilterContract},
      {3, "bootstrap inference", BootstrapInference},
      {4, "js correctness", JsCorrectness},
      {5, "sib optimality", SibOptimality},
      {7, "synthetic shape", ShapeOnSynthetic},
      {8, "table rendering", TableRendering},
      {9, "determinism", Determinism},
      {6, "sib monotonicity", Monotonicity},
  };
  std::map<int, std::string> lines;
  int failures = 0;
  for (const Criterion &criterion : criteria) {
    Outcome outcome;
    try {
      outcome = criterion.run();
    } catch (const std::exception &error) {
      outcome = {false, std::string("exception: ") + error.what()};
    }
    if (!outcome.pass) ++failures;
    lines[criterion.number] = std::string(outcome.pass ? "PASS" : "FAIL") +
                              " criterion " +
                              std::to_string(criterion.number) + " (" +
                              criterion.name + "): " + outcome.detail;
    std::fflush(stdout);
  }
  for (const auto &[number, line] : lines) std::printf("%s\n", line.c_str());
  std::printf("%d of %zu criteria passed\n",
              static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
