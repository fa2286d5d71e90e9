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

#include "qualia/pipeline.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "qualia/error.hpp"
#include "qualia/eval.hpp"
#include "qualia/features.hpp"
#include "tsv.hpp"

namespace qualia {
namespace fs = std::filesystem;
namespace {

std::string Trim(std::string_view text) {
  const char *space = " \t\r\n";
  const auto begin = text.find_first_not_of(space);
  if (begin == std::string_view::npos) return {};
  const auto end = text.find_last_not_of(space);
  return std::string(text.substr(begin, end - begin + 1));
}

std::string NormalizeKey(std::string_view key) {
  std::string normalized = Trim(key);
  for (char &c : normalized) {
    if (c == '-') c = '_';
  }
  return normalized;
}

template <typename T>
T ParseInteger(std::string_view key, std::string_view value) {
  const std::string text = Trim(value);
  T parsed{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(),
                                   parsed);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError("invalid integer for '" + std::string(key) + "': '" +
                      std::string(value) + "'");
  }
  return parsed;
}

int ParseAtLeast(std::string_view key, std::string_view value, int minimum) {
  const int parsed = ParseInteger<int>(key, value);
  if (parsed < minimum) {
    throw ConfigError("'" + std::string(key) + "' must be at least " +
                      std::to_string(minimum));
  }
  return parsed;
}

double ParseDouble(std::string_view key, std::string_view value) {
  const std::string text = Trim(value);
  char *end = nullptr;
  const double parsed = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size()) {
    throw ConfigError("invalid number for '" + std::string(key) + "': '" +
                      std::string(value) + "'");
  }
  return parsed;
}

std::vector<std::string> SplitList(std::string_view value) {
  std::vector<std::string> items;
  for (std::string_view field : tsv::Split(value, ',')) {
    std::string item = Trim(field);
    if (!item.empty()) items.push_back(std::move(item));
  }
  return items;
}

std::string JoinInts(const std::vector<int> &values) {
  std::string text;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) text += ',';
    text += std::to_string(values[i]);
  }
  return text;
}

std::string JoinStrings(const std::vector<std::string> &values) {
  std::string text;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) text += ',';
    text += values[i];
  }
  return text;
}

std::string FormatBits(double value) {
  char buffer[48];
  std::snprintf(buffer, sizeof(buffer), "%.6f", value);
  return buffer;
}

// Names a required input and checks that it can be opened.
const std::string &RequireFile(const std::string &path, const char *key) {
  if (path.empty()) {
    throw ConfigError(std::string("missing required setting '") + key + "'");
  }
  std::ifstream probe(path);
  if (!probe) {
    throw ConfigError(std::string("cannot read ") + key + " file '" + path +
                      "'");
  }
  return path;
}

void RequireCorpus(const PipelineConfig &config) {
  if (config.corpus.empty()) {
    throw ConfigError("missing required setting 'corpus'");
  }
  for (const std::string &path : config.corpus) RequireFile(path, "corpus");
}

void EnsureDirectory(const std::string &directory) {
  if (directory.empty()) return;
  std::error_code ec;
  fs::create_directories(directory, ec);
  if (ec) {
    throw IoError("cannot create directory '" + directory +
                  "': " + ec.message());
  }
}

std::string InOut(const PipelineConfig &config, const std::string &name) {
  return (fs::path(config.out) / name).string();
}

// The explicit `output` setting, or `name` inside the run directory.
std::string OutputPath(const PipelineConfig &config, const std::string &name) {
  std::string path = config.output.empty() ? InOut(config, name)
                                           : config.output;
  EnsureDirectory(fs::path(path).parent_path().string());
  return path;
}

std::string InputPath(const std::string &explicit_path,
                      const PipelineConfig &config, const std::string &name) {
  return explicit_path.empty() ? InOut(config, name) : explicit_path;
}

void WriteText(const std::string &path, const std::string &text) {
  std::ofstream output(path, std::ios::binary);
  if (!output) throw IoError("cannot write " + path);
  output << text;
  if (!output) throw IoError("error writing " + path);
}

template <typename F>
auto RunStage(const std::string &stage, F &&body) -> decltype(body()) {
  try {
    return body();
  } catch (const Error &error) {
    const std::string message = error.what();
    if (message.rfind(stage + ":", 0) == 0) throw;
    throw Error(error.kind(), stage + ": " + message);
  }
}

ExtractStats ComputeStats(const std::vector<ExtractionRecord> &records,
                          std::size_t seeds_total) {
  std::set<std::string> seeds, descriptors;
  for (const ExtractionRecord &record : records) {
    seeds.insert(record.seed);
    descriptors.insert(record.descriptor);
  }
  ExtractStats stats;
  stats.seeds_total = seeds_total;
  stats.seeds_covered = seeds.size();
  stats.descriptors = descriptors.size();
  stats.occurrences = records.size();
  return stats;
}

std::string MatrixLine(const char *label, const FeatureMatrix &matrix) {
  return std::string(label) + ": " + std::to_string(matrix.num_rows()) +
         " nouns, " + std::to_string(matrix.Columns().size()) +
         " descriptors, " + std::to_string(matrix.num_entries()) +
         " entries, mass " + std::to_string(matrix.TotalMass());
}

void WriteTables(const ClusterAssignment &assignment, const SeedLexicon &gold,
                 const std::string &stem) {
  const DistributionTable table = BuildDistributionTable(assignment, gold);
  WriteText(stem + ".txt", RenderTableText(table));
  WriteText(stem + ".tsv", RenderTableTsv(table));
}

std::string AssignmentSummary(const ClusterAssignment &assignment) {
  std::string text = "K=" + std::to_string(assignment.k) +
                     " objective_bits=" + FormatBits(assignment.objective) +
                     " sizes=";
  for (int c = 0; c < assignment.k; ++c) {
    if (c > 0) text += '/';
    text += std::to_string(assignment.Members(c).size());
  }
  if (!assignment.excluded.empty()) {
    text += " excluded=" + std::to_string(assignment.excluded.size());
  }
  return text;
}

FeatureMatrix LoadMatrixWithProvenance(const std::string &matrix_path,
                                       const std::string &provenance_path) {
  FeatureMatrix matrix = LoadMatrix(RequireFile(matrix_path, "matrix"));
  if (!provenance_path.empty()) {
    LoadProvenance(RequireFile(provenance_path, "provenance"), matrix);
  }
  return matrix;
}

// The explicit provenance setting, or the first of `names` present in the
// run directory, or "" when there is none.
std::string ProvenancePath(const PipelineConfig &config,
                           std::initializer_list<const char *> names) {
  if (!config.provenance.empty()) return config.provenance;
  for (const char *name : names) {
    const std::string path = InOut(config, name);
    if (fs::exists(path)) return path;
  }
  return {};
}

}  // namespace

void PipelineConfig::Set(std::string_view raw_key, std::string_view value) {
  const std::string key = NormalizeKey(raw_key);
  const std::string text = Trim(value);
  auto positive = [&](int minimum) { return ParseAtLeast(key, text, minimum); };
  auto probability = [&] {
    const double p = ParseDouble(key, text);
    if (p < 0.0 || p > 1.0) {
      throw ConfigError("'" + key + "' must be in [0, 1]");
    }
    return p;
  };

  try {
    if (key == "corpus") {
      corpus = SplitList(text);
    } else if (key == "seeds") {
      seeds = text;
    } else if (key == "templates") {
      templates = text;
    } else if (key == "out") {
      if (text.empty()) throw ConfigError("'out' must not be empty");
      out = text;
    } else if (key == "columns") {
      format.columns = CorpusFormat::ParseColumns(text);
    } else if (key == "noun_pos_prefix") {
      if (text.empty()) throw ConfigError("'noun_pos_prefix' must not be empty");
      format.noun_pos_prefix = text;
    } else if (key == "boundary") {
      format.boundary = CorpusFormat::ParseBoundary(text);
    } else if (key == "max_np_span") {
      max_np_span = positive(1);
    } else if (key == "min_sharers") {
      min_sharers = positive(1);
    } else if (key == "bootstrap_iters") {
      bootstrap_iters = positive(0);
    } else if (key == "bootstrap_seed_source") {
      if (text == "prefilter") {
        bootstrap_seed_source = SeedSource::kPrefilter;
      } else if (text == "postfilter") {
        bootstrap_seed_source = SeedSource::kPostfilter;
      } else {
        throw ConfigError("bootstrap_seed_source must be prefilter or "
                          "postfilter, got '" + text + "'");
      }
    } else if (key == "k") {
      std::vector<int> values;
      for (const std::string &item : SplitList(text)) {
        values.push_back(ParseAtLeast(key, item, 1));
      }
      if (values.empty()) throw ConfigError("'k' needs at least one value");
      k = std::move(values);
    } else if (key == "restarts") {
      restarts = positive(1);
    } else if (key == "seed") {
      seed = ParseInteger<std::uint64_t>(key, text);
    } else if (key == "prior") {
      prior = ParsePrior(text);
    } else if (key == "max_passes") {
      max_passes = positive(1);
    } else if (key == "records") {
      records = text;
    } else if (key == "matrix") {
      matrix = text;
    } else if (key == "seed_matrix") {
      seed_matrix = text;
    } else if (key == "provenance") {
      provenance = text;
    } else if (key == "assignment") {
      assignment = text;
    } else if (key == "gold") {
      gold = text;
    } else if (key == "output") {
      output = text;
    } else if (key == "cluster_id") {
      cluster_id = ParseInteger<int>(key, text);
    } else if (key == "k2") {
      k2 = positive(1);
    } else if (key == "synth_classes") {
      synthetic.classes = positive(1);
    } else if (key == "synth_nouns") {
      synthetic.nouns = positive(1);
    } else if (key == "synth_low_info") {
      synthetic.low_info = positive(0);
    } else if (key == "synth_dot_objects") {
      synthetic.dot_objects = positive(0);
    } else if (key == "synth_dot_share") {
      synthetic.dot_share = probability();
    } else if (key == "synth_noise") {
      synthetic.noise = probability();
    } else if (key == "synth_mentions_min") {
      synthetic.mentions_min = positive(1);
    } else if (key == "synth_mentions_max") {
      synthetic.mentions_max = positive(1);
    } else if (key == "synth_low_info_mentions_min") {
      synthetic.low_info_mentions_min = positive(1);
    } else if (key == "synth_low_info_mentions_max") {
      synthetic.low_info_mentions_max = positive(1);
    } else if (key == "synth_descriptors_per_noun") {
      synthetic.descriptors_per_noun = positive(1);
    } else if (key == "synth_parent_mentions") {
      synthetic.parent_mentions = positive(0);
    } else if (key == "synth_filler") {
      synthetic.filler = positive(0);
    } else if (key == "synth_seed") {
      synthetic.seed = ParseInteger<std::uint64_t>(key, text);
    } else {
      throw ConfigError("unknown configuration key '" + std::string(raw_key) +
                        "'");
    }
  } catch (const Error &error) {
    if (error.kind() == ErrorKind::kConfig) throw;
    throw ConfigError(error.what());
  }
}

void PipelineConfig::Append(std::string_view raw_key, std::string_view value) {
  if (NormalizeKey(raw_key) == "corpus") {
    for (std::string &path : SplitList(value)) corpus.push_back(std::move(path));
    return;
  }
  Set(raw_key, value);
}

void PipelineConfig::LoadFile(const std::string &path) {
  std::ifstream input(path);
  if (!input) throw ConfigError("cannot read config file '" + path + "'");
  std::string line;
  std::size_t line_number = 0;
  bool corpus_seen = false;
  while (std::getline(input, line)) {
    ++line_number;
    const std::string text = Trim(line);
    if (text.empty() || text[0] == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(line_number) +
                        ": expected key=value");
    }
    const std::string key = NormalizeKey(text.substr(0, eq));
    const std::string value = text.substr(eq + 1);
    try {
      // Repeated corpus lines accumulate.
      if (key == "corpus" && corpus_seen) {
        Append(key, value);
      } else {
        Set(key, value);
      }
    } catch (const Error &error) {
      throw ConfigError(path + ":" + std::to_string(line_number) + ": " +
                        error.what());
    }
    if (key == "corpus") corpus_seen = true;
  }
}

std::string PipelineConfig::Manifest() const {
  std::map<std::string, std::string> entries = {
      {"corpus", JoinStrings(corpus)},
      {"seeds", seeds},
      {"templates", templates},
      {"out", out},
      {"columns", CorpusFormat::ColumnsToString(format.columns)},
      {"noun_pos_prefix", format.noun_pos_prefix},
      {"boundary", CorpusFormat::BoundaryToString(format.boundary)},
      {"max_np_span", std::to_string(max_np_span)},
      {"min_sharers", std::to_string(min_sharers)},
      {"bootstrap_iters", std::to_string(bootstrap_iters)},
      {"bootstrap_seed_source",
       bootstrap_seed_source == SeedSource::kPrefilter ? "prefilter"
                                                       : "postfilter"},
      {"k", JoinInts(k)},
      {"restarts", std::to_string(restarts)},
      {"seed", std::to_string(seed)},
      {"prior", std::string(PriorName(prior))},
      {"max_passes", std::to_string(max_passes)},
      {"gold", gold},
  };
  std::string text = "# qualia-cluster " + std::string(kVersion) + "\n";
  text += "version=" + std::string(kVersion) + "\n";
  for (const auto &[key, value] : entries) text += key + "=" + value + "\n";
  return text;
}

std::string ExtractStats::Line() const {
  return "extracted " + std::to_string(descriptors) + " descriptors for " +
         std::to_string(seeds_covered) + " of the " +
         std::to_string(seeds_total) + " seed nouns in " +
         std::to_string(occurrences) + " occurrences";
}

MatcherSet LoadMatchers(const PipelineConfig &config) {
  MatchOptions options;
  options.noun_pos_prefix = config.format.noun_pos_prefix;
  options.max_np_span = config.max_np_span;
  std::vector<ClueTemplate> templates =
      config.templates.empty()
          ? DefaultTemplates()
          : LoadTemplates(RequireFile(config.templates, "templates"));
  return CompileClues(templates, options);
}

SibOptions MakeSibOptions(const PipelineConfig &config, int k) {
  SibOptions options;
  options.k = k;
  options.restarts = config.restarts;
  options.rng_seed = config.seed;
  options.max_passes = config.max_passes;
  options.prior = config.prior;
  return options;
}

std::string RunExtract(const PipelineConfig &config, ExtractStats *stats) {
  RequireCorpus(config);
  const SeedLexicon lexicon =
      LoadSeedLexicon(RequireFile(config.seeds, "seeds"));
  const MatcherSet matchers = LoadMatchers(config);
  return RunStage("extract", [&] {
    const Corpus corpus = Corpus::FromFiles(config.corpus, config.format);
    const auto records = ExtractCorpus(corpus, matchers, lexicon.Seeds());
    const std::string path = OutputPath(config, "records.tsv");
    SaveRecords(records, path);
    const ExtractStats computed = ComputeStats(records, lexicon.size());
    if (stats != nullptr) *stats = computed;
    return computed.Line() + "\nwrote " + path;
  });
}

std::string RunBuild(const PipelineConfig &config) {
  const std::string records_path =
      RequireFile(InputPath(config.records, config, "records.tsv"), "records");
  std::optional<SeedLexicon> lexicon;
  if (!config.seeds.empty()) {
    lexicon = LoadSeedLexicon(RequireFile(config.seeds, "seeds"));
  }
  return RunStage("build", [&] {
    FeatureMatrix matrix = BuildMatrix(LoadRecords(records_path));
    if (lexicon) {
      for (const auto &entry : lexicon->entries()) matrix.EnsureRow(entry.first);
    }
    const std::string path = OutputPath(config, "matrix.raw.tsv");
    const std::string provenance_path =
        config.provenance.empty() ? InOut(config, "provenance.raw.tsv")
                                  : config.provenance;
    EnsureDirectory(fs::path(provenance_path).parent_path().string());
    SaveMatrix(matrix, path);
    SaveProvenance(matrix, provenance_path);
    return MatrixLine("matrix", matrix) + "\nwrote " + path + "\nwrote " +
           provenance_path;
  });
}

std::string RunFilter(const PipelineConfig &config) {
  const std::string provenance =
      ProvenancePath(config, {"provenance.raw.tsv"});
  const FeatureMatrix matrix = LoadMatrixWithProvenance(
      InputPath(config.matrix, config, "matrix.raw.tsv"), provenance);
  return RunStage("filter", [&] {
    const FeatureMatrix filtered = FilterShared(matrix, config.min_sharers);
    const std::string path = OutputPath(config, "matrix.filtered.tsv");
    SaveMatrix(filtered, path);
    std::string summary = MatrixLine("filtered", filtered) + "\nwrote " + path;
    if (!provenance.empty()) {
      const std::string provenance_path =
          InOut(config, "provenance.filtered.tsv");
      EnsureDirectory(config.out);
      SaveProvenance(filtered, provenance_path);
      summary += "\nwrote " + provenance_path;
    }
    return summary;
  });
}

std::string RunBootstrap(const PipelineConfig &config) {
  RequireCorpus(config);
  const FeatureMatrix matrix = LoadMatrixWithProvenance(
      InputPath(config.matrix, config, "matrix.filtered.tsv"),
      ProvenancePath(config,
                     {"provenance.filtered.tsv", "provenance.raw.tsv"}));
  std::optional<FeatureMatrix> links;
  if (config.bootstrap_seed_source == SeedSource::kPrefilter) {
    links = LoadMatrix(RequireFile(
        InputPath(config.seed_matrix, config, "matrix.raw.tsv"),
        "seed_matrix"));
  }
  const MatcherSet matchers = LoadMatchers(config);
  return RunStage("bootstrap", [&] {
    const Corpus corpus = Corpus::FromFiles(config.corpus, config.format);
    const FeatureMatrix result =
        Bootstrap(matrix, corpus, matchers, config.bootstrap_iters,
                  config.min_sharers, links ? &*links : nullptr);
    const std::string path = OutputPath(config, "matrix.tsv");
    const std::string provenance_path = InOut(config, "provenance.tsv");
    EnsureDirectory(config.out);
    SaveMatrix(result, path);
    SaveProvenance(result, provenance_path);
    return MatrixLine("bootstrapped", result) + "\nwrote " + path +
           "\nwrote " + provenance_path;
  });
}

std::string RunCluster(const PipelineConfig &config) {
  const FeatureMatrix matrix =
      LoadMatrix(RequireFile(InputPath(config.matrix, config, "matrix.tsv"),
                             "matrix"));
  if (!config.output.empty() && config.k.size() != 1) {
    throw ConfigError("'output' needs exactly one K value");
  }
  return RunStage("sib-cluster", [&] {
    std::string summary;
    for (int k : config.k) {
      const ClusterAssignment assignment =
          SibRun(matrix, MakeSibOptions(config, k));
      const std::string path =
          OutputPath(config, "assignment.k" + std::to_string(k) + ".tsv");
      SaveAssignment(assignment, path);
      summary += AssignmentSummary(assignment) + "\nwrote " + path + "\n";
    }
    summary.pop_back();
    return summary;
  });
}

std::string RunSubcluster(const PipelineConfig &config) {
  const FeatureMatrix matrix =
      LoadMatrix(RequireFile(InputPath(config.matrix, config, "matrix.tsv"),
                             "matrix"));
  const ClusterAssignment parent =
      LoadAssignment(RequireFile(config.assignment, "assignment"));
  if (config.cluster_id < 0) {
    throw ConfigError("missing or negative 'cluster_id'");
  }
  std::optional<SeedLexicon> gold;
  if (!config.gold.empty()) {
    gold = LoadSeedLexicon(RequireFile(config.gold, "gold"));
  }
  return RunStage("subcluster", [&] {
    const ClusterAssignment sub =
        Subcluster(matrix, parent, config.cluster_id,
                   MakeSibOptions(config, config.k2));
    const std::string path = OutputPath(
        config, "subassignment.c" + std::to_string(config.cluster_id) + ".k" +
                    std::to_string(config.k2) + ".tsv");
    SaveAssignment(sub, path);
    std::string summary = AssignmentSummary(sub) + "\nwrote " + path;
    if (gold) {
      std::string stem = path;
      if (stem.size() > 4 && stem.compare(stem.size() - 4, 4, ".tsv") == 0) {
        stem.resize(stem.size() - 4);
      }
      stem += ".table";
      WriteTables(sub, *gold, stem);
      summary += "\n" + RenderTableText(BuildDistributionTable(sub, *gold)) +
                 "wrote " + stem + ".txt";
    }
    return summary;
  });
}

std::string RunReport(const PipelineConfig &config) {
  const ClusterAssignment assignment =
      LoadAssignment(RequireFile(config.assignment, "assignment"));
  const std::string gold_path = config.gold.empty() ? config.seeds
                                                    : config.gold;
  const SeedLexicon gold = LoadSeedLexicon(RequireFile(gold_path, "gold"));
  std::optional<FeatureMatrix> matrix;
  if (!config.matrix.empty()) {
    matrix = LoadMatrixWithProvenance(
        config.matrix, ProvenancePath(config, {"provenance.tsv"}));
  }
  return RunStage("report", [&] {
    const DistributionTable table = BuildDistributionTable(assignment, gold);
    const std::string stem =
        config.output.empty()
            ? InOut(config, "table.k" + std::to_string(assignment.k))
            : config.output;
    EnsureDirectory(fs::path(stem).parent_path().string());
    WriteText(stem + ".txt", RenderTableText(table));
    WriteText(stem + ".tsv", RenderTableTsv(table));
    std::string summary = RenderTableText(table) + "purity " +
                          FormatProportion(Purity(assignment, gold)) +
                          "\nwrote " + stem + ".txt\nwrote " + stem + ".tsv";
    if (matrix) {
      EnsureDirectory(config.out);
      const std::string review = InOut(config, "review.txt");
      SaveDescriptorReview(*matrix, gold, review);
      summary += "\nwrote " + review;
    }
    return summary;
  });
}

std::string RunPipeline(const PipelineConfig &config) {
  RequireCorpus(config);
  RequireFile(config.seeds, "seeds");
  if (!config.gold.empty()) RequireFile(config.gold, "gold");
  EnsureDirectory(config.out);

  const SeedLexicon lexicon = RunStage(
      "extract", [&] { return LoadSeedLexicon(config.seeds); });
  const SeedLexicon gold = config.gold.empty()
                               ? lexicon
                               : RunStage("report", [&] {
                                   return LoadSeedLexicon(config.gold);
                                 });
  const MatcherSet matchers =
      RunStage("extract", [&] { return LoadMatchers(config); });
  const Corpus corpus = Corpus::FromFiles(config.corpus, config.format);
  std::vector<std::string> stats;

  const auto records = RunStage("extract", [&] {
    auto extracted = ExtractCorpus(corpus, matchers, lexicon.Seeds());
    SaveRecords(extracted, InOut(config, "records.tsv"));
    stats.push_back(ComputeStats(extracted, lexicon.size()).Line());
    return extracted;
  });

  const FeatureMatrix raw = RunStage("build", [&] {
    FeatureMatrix matrix = BuildMatrix(records);
    for (const auto &entry : lexicon.entries()) matrix.EnsureRow(entry.first);
    SaveMatrix(matrix, InOut(config, "matrix.raw.tsv"));
    SaveProvenance(matrix, InOut(config, "provenance.raw.tsv"));
    stats.push_back(MatrixLine("raw", matrix));
    return matrix;
  });

  const FeatureMatrix filtered = RunStage("filter", [&] {
    FeatureMatrix matrix = FilterShared(raw, config.min_sharers);
    SaveMatrix(matrix, InOut(config, "matrix.filtered.tsv"));
    stats.push_back(MatrixLine("filtered", matrix));
    return matrix;
  });

  const FeatureMatrix final_matrix = RunStage("bootstrap", [&] {
    const FeatureMatrix *links =
        config.bootstrap_seed_source == SeedSource::kPrefilter ? &raw
                                                               : nullptr;
    FeatureMatrix matrix =
        Bootstrap(filtered, corpus, matchers, config.bootstrap_iters,
                  config.min_sharers, links);
    SaveMatrix(matrix, InOut(config, "matrix.tsv"));
    SaveProvenance(matrix, InOut(config, "provenance.tsv"));
    stats.push_back(MatrixLine("bootstrapped", matrix));
    return matrix;
  });

  RunStage("report", [&] {
    SaveDescriptorReview(final_matrix, gold, InOut(config, "review.txt"));
  });

  for (int k : config.k) {
    const ClusterAssignment assignment = RunStage("sib-cluster", [&] {
      ClusterAssignment result = SibRun(final_matrix,
                                        MakeSibOptions(config, k));
      SaveAssignment(result, InOut(config,
                                   "assignment.k" + std::to_string(k) +
                                       ".tsv"));
      return result;
    });
    RunStage("report", [&] {
      WriteTables(assignment, gold,
                  InOut(config, "table.k" + std::to_string(k)));
      stats.push_back(AssignmentSummary(assignment) + " purity=" +
                      FormatProportion(Purity(assignment, gold)));
    });
  }

  RunStage("report", [&] {
    std::string text;
    for (const std::string &line : stats) text += line + "\n";
    WriteText(InOut(config, "stats.txt"), text);
    WriteText(InOut(config, "manifest.txt"), config.Manifest());
  });

  std::string summary;
  for (const std::string &line : stats) summary += line + "\n";
  return summary + "wrote run directory " + config.out;
}

std::string RunGenSynthetic(const PipelineConfig &config) {
  return RunStage("gen-synthetic", [&] {
    const SyntheticData data = GenerateSynthetic(config.synthetic);
    EnsureDirectory(config.out);
    WriteSynthetic(data, config.out);
    return "generated " + std::to_string(data.sentences.size()) +
           " sentences for " + std::to_string(data.lexicon.size()) +
           " nouns (" + std::to_string(data.low_info_nouns.size()) +
           " low-information, " +
           std::to_string(data.dot_object_nouns.size()) +
           " dot-object)\nwrote " + config.out;
  });
}

}  // namespace qualia
