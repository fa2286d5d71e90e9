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

#include "qualia/synthetic.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <random>

#include "qualia/error.hpp"
#include "random.hpp"

namespace qualia {
namespace {

struct Pool {
  const char *label;
  std::vector<std::string> descriptors;
  std::vector<std::string> parents;
};

const std::vector<Pool> &ClassPools() {
  static const std::vector<Pool> pools = {
      {"HUMAN",
       {"worker", "professional", "officer", "specialist", "practitioner",
        "staffer"},
       {"person", "individual", "adult"}},
      {"LOCATION",
       {"place", "area", "site", "facility", "venue", "building"},
       {"space", "region", "locale"}},
      {"EVENT",
       {"occasion", "activity", "celebration", "gathering", "ceremony",
        "festivity"},
       {"happening", "affair", "episode"}},
      {"ARTIFACT",
       {"tool", "device", "instrument", "implement", "gadget", "utensil"},
       {"object", "artifact", "equipment"}},
      {"ANIMAL",
       {"mammal", "creature", "beast", "predator", "herbivore", "vertebrate"},
       {"animal", "organism", "fauna"}},
  };
  return pools;
}

const Pool &OrganizationPool() {
  static const Pool pool = {
      "ORGANIZATION",
      {"organization", "institution", "body", "sector", "union",
       "association"},
      {"collective", "person", "individual"}};
  return pool;
}

// Generic descriptors have no parents: bootstrapping adds nothing to them.
const Pool &GenericPool() {
  static const Pool pool = {
      "GENERIC", {"thing", "item", "element", "factor", "aspect", "example"},
      {}};
  return pool;
}

std::string Plural(const std::string &word) {
  auto ends_with = [&](const char *suffix) {
    const std::string s(suffix);
    return word.size() >= s.size() &&
           word.compare(word.size() - s.size(), s.size(), s) == 0;
  };
  if (word.size() > 1 && word.back() == 'y' &&
      std::string("aeiou").find(word[word.size() - 2]) == std::string::npos) {
    return word.substr(0, word.size() - 1) + "ies";
  }
  if (ends_with("s") || ends_with("x") || ends_with("ch") || ends_with("sh")) {
    return word + "es";
  }
  return word + "s";
}

class SentenceBuilder {
 public:
  SentenceBuilder &Add(std::string surface, std::string pos,
                       std::string lemma) {
    sentence_.tokens.push_back(
        {std::move(surface), std::move(pos), std::move(lemma)});
    return *this;
  }
  SentenceBuilder &Singular(const std::string &noun) {
    return Add(noun, "NN", noun);
  }
  SentenceBuilder &Plural(const std::string &noun) {
    return Add(qualia::Plural(noun), "NNS", noun);
  }
  Sentence Build() { return std::move(sentence_); }

 private:
  Sentence sentence_;
};

// One clue sentence stating that `hyponym` is a kind of `hypernym`.
Sentence ClueSentence(const std::string &hyponym, const std::string &hypernym,
                      std::mt19937_64 &rng) {
  SentenceBuilder b;
  switch (random::UniformIndex(rng, 4)) {
    case 0:
      b.Add("The", "DT", "the").Plural(hyponym);
      if (random::UniformIndex(rng, 2) == 0) {
        b.Add("and", "CC", "and");
      } else {
        b.Add("or", "CC", "or");
      }
      b.Add("other", "JJ", "other").Plural(hypernym)
          .Add("were", "VBD", "be").Add("mentioned", "VBN", "mention");
      break;
    case 1:
      b.Add("Many", "JJ", "many").Plural(hypernym)
          .Add("such", "JJ", "such").Add("as", "IN", "as").Plural(hyponym)
          .Add("were", "VBD", "be").Add("listed", "VBN", "list");
      break;
    case 2: {
      const bool kind = random::UniformIndex(rng, 2) == 0;
      b.Add("A", "DT", "a").Singular(hyponym).Add("is", "VBZ", "be")
          .Add("a", "DT", "a")
          .Add(kind ? "kind" : "type", "NN", kind ? "kind" : "type")
          .Add("of", "IN", "of").Singular(hypernym);
      break;
    }
    default:
      b.Add("The", "DT", "the").Singular(hyponym).Add("is", "VBZ", "be")
          .Add("also", "RB", "also").Add("known", "VBN", "know")
          .Add("as", "IN", "as").Add("a", "DT", "a").Singular(hypernym);
      break;
  }
  b.Add(".", "SENT", ".");
  return b.Build();
}

Sentence FillerSentence(std::size_t variant, const std::string &noun) {
  SentenceBuilder b;
  switch (variant % 4) {
    case 0:
      b.Add("The", "DT", "the").Singular("weather").Add("was", "VBD", "be")
          .Add("fine", "JJ", "fine");
      break;
    case 1:
      // An adverb inside the slot blocks the match.
      b.Plural(noun).Add("and", "CC", "and").Add("other", "JJ", "other")
          .Add("very", "RB", "very").Add("big", "JJ", "big")
          .Plural("system");
      break;
    case 2:
      b.Add("Other", "JJ", "other").Plural("report")
          .Add("arrived", "VBD", "arrive").Add("late", "RB", "late");
      break;
    default:
      b.Add("We", "PRP", "we").Add("met", "VBD", "meet")
          .Add("the", "DT", "the").Singular(noun)
          .Add("yesterday", "NN", "yesterday");
      break;
  }
  b.Add(".", "SENT", ".");
  return b.Build();
}

std::vector<std::string> Sample(const std::vector<std::string> &pool,
                                std::size_t count, std::mt19937_64 &rng) {
  std::vector<std::string> copy = pool;
  random::Shuffle(copy, rng);
  copy.resize(std::min(count, copy.size()));
  return copy;
}

const std::string &Pick(const std::vector<std::string> &items,
                        std::mt19937_64 &rng) {
  return items[random::UniformIndex(rng, items.size())];
}

}  // namespace

SyntheticData GenerateSynthetic(const SyntheticOptions &options) {
  const int max_classes = static_cast<int>(ClassPools().size());
  if (options.classes < 1 || options.classes > max_classes) {
    throw ArgumentError("synthetic classes must be in [1, " +
                        std::to_string(max_classes) + "]");
  }
  if (options.nouns < options.classes) {
    throw ArgumentError("synthetic corpus needs at least one noun per class");
  }
  const int first_class_size = (options.nouns + options.classes - 1) /
                               options.classes;
  if (options.dot_objects < 0 || options.low_info < 0 ||
      options.dot_objects > first_class_size ||
      options.dot_objects + options.low_info > options.nouns) {
    throw ArgumentError("synthetic dot-object/low-information counts do not "
                        "fit the noun inventory");
  }
  if (options.mentions_min < 1 || options.mentions_max < options.mentions_min ||
      options.low_info_mentions_min < 1 ||
      options.low_info_mentions_max < options.low_info_mentions_min ||
      options.descriptors_per_noun < 1 || options.parent_mentions < 0 ||
      options.filler < 0 || options.noise < 0.0 || options.noise > 1.0 ||
      options.dot_share < 0.0 || options.dot_share > 1.0) {
    throw ArgumentError("synthetic mention/noise parameters out of range");
  }

  std::mt19937_64 rng(options.seed);
  SyntheticData data;
  const auto &pools = ClassPools();

  // Noun inventory: class-major, names like "human07".
  struct Noun {
    std::string lemma;
    int cls;
    bool dot = false;
    bool low_info = false;
  };
  std::vector<Noun> nouns;
  std::vector<std::vector<std::size_t>> by_class(options.classes);
  for (int i = 0; i < options.nouns; ++i) {
    const int cls = i % options.classes;
    char name[64];
    std::string label = ToLower(pools[cls].label);
    std::snprintf(name, sizeof(name), "%s%02zu", label.c_str(),
                  by_class[cls].size() + 1);
    by_class[cls].push_back(nouns.size());
    nouns.push_back({name, cls});
  }
  for (int d = 0; d < options.dot_objects; ++d) {
    nouns[by_class[0][d]].dot = true;
  }
  // Low-information nouns come from the end of each class, round-robin.
  std::vector<std::size_t> taken(options.classes, 0);
  for (int l = 0, cls = options.classes > 1 ? 1 : 0; l < options.low_info;
       cls = (cls + 1) % options.classes) {
    const auto &members = by_class[cls];
    if (taken[cls] < members.size()) {
      Noun &noun = nouns[members[members.size() - 1 - taken[cls]]];
      ++taken[cls];
      if (noun.dot) continue;
      noun.low_info = true;
      ++l;
    }
  }

  std::vector<Sentence> sentences;
  int noise_words = 0;
  auto noise_descriptor = [&](int cls) -> std::string {
    if (random::UniformIndex(rng, 2) == 0 || options.classes == 1) {
      char name[32];
      std::snprintf(name, sizeof(name), "oddity%03d", ++noise_words);
      return name;
    }
    int other = static_cast<int>(
        random::UniformIndex(rng, static_cast<std::size_t>(options.classes - 1)));
    if (other >= cls) ++other;
    return Pick(pools[other].descriptors, rng);
  };

  for (const Noun &noun : nouns) {
    data.lexicon.Add(noun.lemma, pools[noun.cls].label);
    data.subclasses.Add(noun.lemma, noun.dot ? "DOT_OBJECT" : "OTHER");
    if (noun.dot) data.dot_object_nouns.push_back(noun.lemma);
    if (noun.low_info) data.low_info_nouns.push_back(noun.lemma);

    if (noun.low_info) {
      const auto generic = Sample(GenericPool().descriptors, 2, rng);
      const int mentions = random::UniformInt(
          rng, options.low_info_mentions_min, options.low_info_mentions_max);
      for (int m = 0; m < mentions; ++m) {
        sentences.push_back(ClueSentence(noun.lemma, Pick(generic, rng), rng));
      }
      continue;
    }

    const auto own = Sample(pools[noun.cls].descriptors,
                            options.descriptors_per_noun, rng);
    const auto org = Sample(OrganizationPool().descriptors,
                            options.descriptors_per_noun, rng);
    const int mentions =
        random::UniformInt(rng, options.mentions_min, options.mentions_max);
    for (int m = 0; m < mentions; ++m) {
      std::string descriptor;
      if (random::UniformReal(rng) < options.noise) {
        descriptor = noise_descriptor(noun.cls);
      } else if (noun.dot && random::UniformReal(rng) < options.dot_share) {
        descriptor = Pick(org, rng);
      } else {
        descriptor = Pick(own, rng);
      }
      sentences.push_back(ClueSentence(noun.lemma, descriptor, rng));
    }
  }

  // Parent links for every descriptor pool in use.
  std::vector<const Pool *> linked;
  for (int c = 0; c < options.classes; ++c) linked.push_back(&pools[c]);
  if (options.dot_objects > 0) linked.push_back(&OrganizationPool());
  for (const Pool *pool : linked) {
    for (std::size_t i = 0; i < pool->descriptors.size(); ++i) {
      for (std::size_t p = 0; p < 2; ++p) {
        const std::string &parent =
            pool->parents[(i + p) % pool->parents.size()];
        for (int m = 0; m < options.parent_mentions; ++m) {
          sentences.push_back(
              ClueSentence(pool->descriptors[i], parent, rng));
        }
      }
    }
  }

  for (int f = 0; f < options.filler; ++f) {
    sentences.push_back(FillerSentence(
        static_cast<std::size_t>(f),
        nouns[random::UniformIndex(rng, nouns.size())].lemma));
  }

  random::Shuffle(sentences, rng);
  for (std::size_t i = 0; i < sentences.size(); ++i) sentences[i].index = i;
  data.sentences = std::move(sentences);
  return data;
}

void WriteSynthetic(const SyntheticData &data, const std::string &directory) {
  auto open = [&](const std::string &name) {
    std::ofstream output(directory + "/" + name, std::ios::binary);
    if (!output) throw IoError("cannot write " + directory + "/" + name);
    return output;
  };
  {
    std::ofstream corpus = open("corpus.vert");
    const CorpusFormat format;
    for (const Sentence &sentence : data.sentences) {
      WriteSentence(corpus, sentence, format);
    }
  }
  {
    std::ofstream seeds = open("seeds.tsv");
    seeds << "# noun\tclass\n";
    for (const std::string &label : data.lexicon.classes()) {
      for (const auto &[noun, noun_label] : data.lexicon.entries()) {
        if (noun_label == label) seeds << noun << '\t' << label << '\n';
      }
    }
  }
  {
    std::ofstream subclasses = open("subclasses.tsv");
    subclasses << "# noun\tsubclass\n";
    for (const auto &[noun, label] : data.subclasses.entries()) {
      subclasses << noun << '\t' << label << '\n';
    }
  }
  {
    std::ofstream planted = open("planted.tsv");
    planted << "# noun\tclass\trole\n";
    for (const auto &[noun, label] : data.lexicon.entries()) {
      const char *role = "regular";
      if (std::find(data.low_info_nouns.begin(), data.low_info_nouns.end(),
                    noun) != data.low_info_nouns.end()) {
        role = "low_info";
      } else if (std::find(data.dot_object_nouns.begin(),
                           data.dot_object_nouns.end(),
                           noun) != data.dot_object_nouns.end()) {
        role = "dot_object";
      }
      planted << noun << '\t' << label << '\t' << role << '\n';
    }
  }
}

}  // namespace qualia
