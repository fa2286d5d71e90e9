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

#include "qualia/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "qualia/error.hpp"

namespace qualia {
namespace {

constexpr const char *kUnlabeled = "UNLABELED";

std::string Fixed4(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.4f", value);
  return buffer;
}

std::string Pad(const std::string &text, std::size_t width) {
  return text.size() >= width ? text : text + std::string(width - text.size(),
                                                          ' ');
}

}  // namespace

DistributionTable BuildDistributionTable(const ClusterAssignment &assignment,
                                         const SeedLexicon &gold) {
  DistributionTable table;
  table.classes = gold.classes();
  std::map<std::string, std::size_t> class_index;
  for (std::size_t i = 0; i < table.classes.size(); ++i) {
    class_index[table.classes[i]] = i;
  }

  std::map<int, ClusterColumn> columns;
  for (const auto &[noun, cluster] : assignment.assignment) {
    auto label = gold.ClassOf(noun);
    if (!label) {
      throw Error(ErrorKind::kEvaluation,
                  "noun '" + noun + "' is not in the gold lexicon");
    }
    ClusterColumn &column = columns[cluster];
    column.cluster_id = cluster;
    column.class_counts.resize(table.classes.size(), 0);
    ++column.class_counts[class_index.at(*label)];
    ++column.member_count;
  }
  for (auto &[cluster, column] : columns) {
    for (std::size_t count : column.class_counts) {
      column.proportions.push_back(static_cast<double>(count) /
                                   static_cast<double>(column.member_count));
    }
    table.clusters.push_back(std::move(column));
  }
  return table;
}

double Purity(const ClusterAssignment &assignment, const SeedLexicon &gold) {
  const DistributionTable table = BuildDistributionTable(assignment, gold);
  std::size_t total = 0, majority = 0;
  for (const ClusterColumn &column : table.clusters) {
    total += column.member_count;
    majority += *std::max_element(column.class_counts.begin(),
                                  column.class_counts.end());
  }
  return total == 0 ? 0.0
                    : static_cast<double>(majority) /
                          static_cast<double>(total);
}

std::string FormatProportion(double value) {
  std::string text = Fixed4(value);
  while (text.back() == '0') text.pop_back();
  if (text.back() == '.') text.pop_back();
  if (text == "-0") text = "0";
  return text;
}

std::string RenderTableText(const DistributionTable &table) {
  if (table.clusters.empty()) return {};
  const std::string total_label = "TOTAL";
  std::size_t label_width = total_label.size();
  for (const std::string &label : table.classes) {
    label_width = std::max(label_width, label.size());
  }
  label_width += 2;

  std::vector<std::string> headers;
  std::vector<std::size_t> widths;
  for (const ClusterColumn &column : table.clusters) {
    headers.push_back("Cluster " + std::to_string(column.cluster_id));
    std::size_t width = headers.back().size();
    for (double p : column.proportions) {
      width = std::max(width, FormatProportion(p).size());
    }
    widths.push_back(width + 2);
  }

  std::ostringstream out;
  out << Pad("", label_width);
  for (std::size_t c = 0; c < headers.size(); ++c) {
    out << (c + 1 == headers.size() ? headers[c] : Pad(headers[c], widths[c]));
  }
  out << '\n';
  for (std::size_t i = 0; i < table.classes.size(); ++i) {
    out << Pad(table.classes[i], label_width);
    for (std::size_t c = 0; c < table.clusters.size(); ++c) {
      std::string cell = FormatProportion(table.clusters[c].proportions[i]);
      out << (c + 1 == table.clusters.size() ? cell : Pad(cell, widths[c]));
    }
    out << '\n';
  }
  out << Pad(total_label, label_width);
  for (std::size_t c = 0; c < table.clusters.size(); ++c) {
    std::string cell = std::to_string(table.clusters[c].member_count);
    out << (c + 1 == table.clusters.size() ? cell : Pad(cell, widths[c]));
  }
  out << '\n';
  return out.str();
}

std::string RenderTableTsv(const DistributionTable &table) {
  std::ostringstream out;
  out << "cluster\tclass\tproportion\tcount\n";
  for (const ClusterColumn &column : table.clusters) {
    for (std::size_t i = 0; i < table.classes.size(); ++i) {
      out << column.cluster_id << '\t' << table.classes[i] << '\t'
          << Fixed4(column.proportions[i]) << '\t' << column.class_counts[i]
          << '\n';
    }
    out << column.cluster_id << "\tTOTAL\t" << Fixed4(1.0) << '\t'
        << column.member_count << '\n';
  }
  return out.str();
}

void WriteDescriptorReview(std::ostream &output, const FeatureMatrix &matrix,
                           const SeedLexicon &gold) {
  struct Section {
    std::set<std::string> descriptors;
    std::int64_t occurrences = 0;
    std::vector<std::string> lines;
  };
  std::vector<std::string> order = gold.classes();
  std::map<std::string, Section> sections;

  for (const auto &[noun, row] : matrix.rows()) {
    const std::string label = gold.ClassOf(noun).value_or(kUnlabeled);
    if (std::find(order.begin(), order.end(), label) == order.end()) {
      order.push_back(label);
    }
    Section &section = sections[label];
    for (const auto &[descriptor, count] : row) {
      section.descriptors.insert(descriptor);
      section.occurrences += count;
      std::string line = noun + '\t' + descriptor + '\t' +
                         std::to_string(count) + '\t';
      auto sources = matrix.provenance().find({noun, descriptor});
      if (sources != matrix.provenance().end()) {
        bool first = true;
        for (const Provenance &source : sources->second) {
          if (!first) line += ',';
          first = false;
          line += std::string(ClueName(source.clue)) + ':' + source.corpus_id +
                  ':' + std::to_string(source.sentence_index) + ":L" +
                  std::to_string(source.level);
          if (!source.via.empty()) line += ":via=" + source.via;
        }
      }
      section.lines.push_back(std::move(line));
    }
  }

  output << "# Descriptor review: judge each noun/descriptor pair against "
            "the noun's class.\n";
  output << "# class\telements\toccurrences\n";
  for (const std::string &label : order) {
    const Section &section = sections[label];
    output << label << '\t' << section.descriptors.size() << '\t'
           << section.occurrences << '\n';
  }
  output << "TOTAL\t" << matrix.Columns().size() << '\t' << matrix.TotalMass()
         << '\n';
  for (const std::string &label : order) {
    const Section &section = sections[label];
    if (section.lines.empty()) continue;
    output << "\n## " << label << '\n';
    output << "# noun\tdescriptor\tcount\tsources\n";
    for (const std::string &line : section.lines) output << line << '\n';
  }
}

void SaveDescriptorReview(const FeatureMatrix &matrix, const SeedLexicon &gold,
                          const std::string &path) {
  std::ofstream output(path, std::ios::binary);
  if (!output) throw IoError("cannot write review file " + path);
  WriteDescriptorReview(output, matrix, gold);
  if (!output) throw IoError("error writing review file " + path);
}

}  // namespace qualia
