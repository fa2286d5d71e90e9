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

// qualia-cluster: extraction, bootstrapping, clustering and reporting
// stages on top of the qualia C API.
//
// Exit codes: 0 success, 1 runtime failure, 2 usage or configuration error.

#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qualia/qualia_c.h"

namespace {

struct FlagInfo {
  const char *key;
  const char *help;
};

const std::map<std::string, FlagInfo> &Flags() {
  static const std::map<std::string, FlagInfo> flags = {
      {"seeds", {"seeds", "seed lexicon TSV (noun<TAB>class)"}},
      {"templates", {"templates", "clue template file (default: built-in)"}},
      {"out", {"out", "run directory"}},
      {"columns", {"columns", "corpus column order, e.g. surface,pos,lemma"}},
      {"noun-pos-prefix", {"noun_pos_prefix", "noun tag prefix"}},
      {"boundary", {"boundary", "sentence boundary: blank, marker or both"}},
      {"max-np-span", {"max_np_span", "longest nominal run scanned"}},
      {"min-sharers", {"min_sharers", "rows a descriptor must occur in"}},
      {"bootstrap-iters", {"bootstrap_iters", "bootstrapping iterations"}},
      {"bootstrap-seed-source",
       {"bootstrap_seed_source", "prefilter or postfilter"}},
      {"k", {"k", "cluster counts, e.g. 3,4"}},
      {"restarts", {"restarts", "sIB restarts"}},
      {"seed", {"seed", "random seed"}},
      {"prior", {"prior", "noun prior: mass or uniform"}},
      {"max-passes", {"max_passes", "sIB passes per restart"}},
      {"records", {"records", "records TSV input"}},
      {"matrix", {"matrix", "matrix TSV input"}},
      {"seed-matrix", {"seed_matrix", "unfiltered matrix for prefilter links"}},
      {"provenance", {"provenance", "provenance TSV"}},
      {"assignment", {"assignment", "assignment TSV input"}},
      {"gold", {"gold", "gold lexicon TSV"}},
      {"output", {"output", "explicit output path"}},
      {"cluster-id", {"cluster_id", "cluster to re-cluster"}},
      {"k2", {"k2", "sub-cluster count"}},
      {"classes", {"synth_classes", "planted classes (1-5)"}},
      {"nouns", {"synth_nouns", "planted nouns"}},
      {"low-info", {"synth_low_info", "low-information nouns"}},
      {"dot-objects", {"synth_dot_objects", "dot-object nouns"}},
      {"dot-share", {"synth_dot_share", "dot-object organization share"}},
      {"noise", {"synth_noise", "noise rate per mention"}},
      {"mentions-min", {"synth_mentions_min", "mentions per noun, minimum"}},
      {"mentions-max", {"synth_mentions_max", "mentions per noun, maximum"}},
      {"filler", {"synth_filler", "sentences without clues"}},
      {"synth-seed", {"synth_seed", "generator seed"}},
  };
  return flags;
}

struct Command {
  const char *name;
  const char *help;
  bool corpus;
  std::vector<std::string> flags;
  qc_status (*run)(const qc_config *);
};

qc_status RunExtract(const qc_config *config) {
  return qc_cmd_extract(config, nullptr);
}

const std::vector<std::string> kFormatFlags = {
    "columns", "noun-pos-prefix", "boundary", "max-np-span", "templates"};

std::vector<std::string> With(std::vector<std::string> flags,
                              const std::vector<std::string> &more) {
  flags.insert(flags.end(), more.begin(), more.end());
  return flags;
}

const std::vector<std::string> kSibFlags = {"restarts", "seed", "prior",
                                            "max-passes"};

std::vector<Command> Commands() {
  return {
      {"extract", "extract descriptors for seed nouns", true,
       With({"seeds", "out", "output"}, kFormatFlags), RunExtract},
      {"build", "build the feature matrix from records", false,
       {"records", "seeds", "out", "output", "provenance"}, qc_cmd_build},
      {"filter", "drop descriptors shared by too few nouns", false,
       {"matrix", "provenance", "min-sharers", "out", "output"},
       qc_cmd_filter},
      {"bootstrap", "inherit descriptors of descriptors", true,
       With({"matrix", "provenance", "seed-matrix", "min-sharers",
             "bootstrap-iters", "bootstrap-seed-source", "out", "output"},
            kFormatFlags),
       qc_cmd_bootstrap},
      {"cluster", "run sIB clustering", false,
       With({"matrix", "k", "out", "output"}, kSibFlags), qc_cmd_cluster},
      {"subcluster", "re-cluster one cluster", false,
       With({"matrix", "assignment", "cluster-id", "k2", "gold", "out",
             "output"},
            kSibFlags),
       qc_cmd_subcluster},
      {"report", "render distribution tables", false,
       {"assignment", "gold", "seeds", "matrix", "provenance", "out",
        "output"},
       qc_cmd_report},
      {"pipeline", "run every stage", true,
       With(With({"seeds", "gold", "out", "min-sharers", "bootstrap-iters",
                  "bootstrap-seed-source", "k"},
                 kSibFlags),
            kFormatFlags),
       qc_cmd_pipeline},
      {"gen-synthetic", "write a planted-class corpus", false,
       {"out", "classes", "nouns", "low-info", "dot-objects", "dot-share",
        "noise", "mentions-min", "mentions-max", "filler", "synth-seed"},
       qc_cmd_gen_synthetic},
  };
}

int ExitCodeFor(qc_status status) {
  if (status == QC_OK) return 0;
  if (status == QC_ERR_CONFIG || status == QC_ERR_ARGUMENT) return 2;
  return 1;
}

int Fail(qc_status status) {
  std::fprintf(stderr, "qualia-cluster: %s: %s\n", qc_status_name(status),
               qc_last_error());
  return ExitCodeFor(status);
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Noun clustering by extracted FORMAL role descriptors",
               "qualia-cluster"};
  app.require_subcommand(1);
  app.set_version_flag("--version", qc_version());

  const std::vector<Command> commands = Commands();
  struct Bound {
    CLI::App *app;
    std::string config_file;
    std::vector<std::string> corpus;
    std::map<std::string, std::string> values;
    std::map<std::string, CLI::Option *> options;
  };
  std::vector<Bound> bound(commands.size());

  for (std::size_t i = 0; i < commands.size(); ++i) {
    const Command &command = commands[i];
    Bound &b = bound[i];
    b.app = app.add_subcommand(command.name, command.help);
    b.app->add_option("--config", b.config_file, "key=value config file");
    if (command.corpus) {
      b.app->add_option("--corpus", b.corpus, "vertical corpus files")
          ->expected(1, -1);
    }
    for (const std::string &flag : command.flags) {
      const FlagInfo &info = Flags().at(flag);
      b.options[info.key] =
          b.app->add_option("--" + flag, b.values[info.key], info.help);
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &error) {
    const int code = app.exit(error);
    return code == 0 ? 0 : 2;
  }

  for (std::size_t i = 0; i < commands.size(); ++i) {
    Bound &b = bound[i];
    if (!b.app->parsed()) continue;

    qc_config *config = nullptr;
    qc_status status = qc_config_create(&config);
    if (status != QC_OK) return Fail(status);
    auto apply = [&]() -> qc_status {
      if (!b.config_file.empty()) {
        qc_status s = qc_config_load_file(config, b.config_file.c_str());
        if (s != QC_OK) return s;
      }
      // Flags override the config file.
      if (!b.corpus.empty()) {
        qc_status s = qc_config_set(config, "corpus", "");
        for (const std::string &path : b.corpus) {
          if (s != QC_OK) return s;
          s = qc_config_append(config, "corpus", path.c_str());
        }
        if (s != QC_OK) return s;
      }
      for (const auto &[key, option] : b.options) {
        if (option->count() == 0) continue;
        qc_status s = qc_config_set(config, key.c_str(), b.values[key].c_str());
        if (s != QC_OK) return s;
      }
      return commands[i].run(config);
    };
    status = apply();
    qc_config_destroy(config);
    if (status != QC_OK) return Fail(status);
    std::printf("%s\n", qc_last_summary());
    return 0;
  }
  return 2;
}
