// Copyright 2026 The hcdgraph Authors.
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

// Template-driven toy pairs. Every advice is assembled from pieces that carry
// their own word and (optionally) the AMR variable the word is aligned to,
// so the PENMAN graph and the alignment are produced alongside the text.

#include <cstdio>
#include <functional>
#include <tuple>
#include <utility>

#include "core/dataset.hpp"
#include "core/error.hpp"
#include "core/rng.hpp"
#include "core/text.hpp"
#include "json.hpp"

namespace hcd::dataset {

namespace {

struct Piece {
  std::string word;
  std::string var;  // empty: unaligned
};

struct Advice {
  std::vector<Piece> pieces;
  std::string penman;
};

struct TopicPhrase {
  std::string topic;
  std::string modifier;  // empty: none

  std::vector<Piece> pieces() const {
    std::vector<Piece> out;
    if (!modifier.empty()) out.push_back({modifier, "m"});
    out.push_back({topic, "x"});
    return out;
  }
  std::string penman(const std::string& extra_roles = "") const {
    std::string out = "(x / " + topic + extra_roles;
    if (!modifier.empty()) out += " :mod (m / " + modifier + ")";
    return out + ")";
  }
};

using Template = std::function<Advice(const TopicPhrase&)>;

Advice concat(std::vector<Piece> head, const TopicPhrase& tp,
              std::vector<Piece> tail, std::string penman) {
  Advice a;
  a.pieces = std::move(head);
  for (Piece& p : tp.pieces()) a.pieces.push_back(std::move(p));
  for (Piece& p : tail) a.pieces.push_back(std::move(p));
  a.penman = std::move(penman);
  return a;
}

const std::vector<Template>& positive_templates() {
  static const std::vector<Template> kTemplates = {
      [](const TopicPhrase& tp) {
        return concat({{"Consume", "v"}, {"more", "q"}}, tp, {},
                      "(v / consume-01 :mode imperative :ARG1 " +
                          tp.penman(" :quant (q / more)") + ")");
      },
      [](const TopicPhrase& tp) {
        return concat({{"Include", "v"}}, tp,
                      {{"in", ""}, {"your", "y"}, {"diet", "d"}},
                      "(v / include-01 :mode imperative :ARG1 " + tp.penman() +
                          " :ARG2 (d / diet :poss (y / you)))");
      },
      [](const TopicPhrase& tp) {
        return concat({{"Enjoy", "v"}}, tp, {{"daily", "r"}},
                      "(v / enjoy-01 :mode imperative :ARG1 " + tp.penman() +
                          " :frequency (r / daily))");
      },
      [](const TopicPhrase& tp) {
        return concat({{"Have", "v"}}, tp, {{"regularly", "r"}},
                      "(v / have-03 :mode imperative :ARG1 " + tp.penman() +
                          " :ARG1-of (r / regular-02))");
      },
  };
  return kTemplates;
}

const std::vector<Template>& negative_templates() {
  static const std::vector<Template> kTemplates = {
      [](const TopicPhrase& tp) {
        return concat({{"Avoid", "v"}}, tp, {},
                      "(v / avoid-01 :mode imperative :ARG1 " + tp.penman() +
                          ")");
      },
      [](const TopicPhrase& tp) {
        return concat({{"Do", ""}, {"not", ""}, {"consume", "v"}}, tp, {},
                      "(v / consume-01 :polarity - :mode imperative :ARG1 " +
                          tp.penman() + ")");
      },
      [](const TopicPhrase& tp) {
        return concat({{"Limit", "v"}}, tp, {},
                      "(v / limit-01 :mode imperative :ARG1 " + tp.penman() +
                          ")");
      },
      [](const TopicPhrase& tp) {
        return concat({{"Cut", "v"}, {"down", "v"}, {"on", ""}}, tp, {},
                      "(v / cut-down-11 :mode imperative :ARG1 " +
                          tp.penman() + ")");
      },
  };
  return kTemplates;
}

struct Clause {
  std::vector<Piece> pieces;
  std::string role;
  std::string penman;
};

const std::vector<Clause>& condition_clauses() {
  static const std::vector<Clause> kClauses = {
      {{{"if", ""}, {"you", "cy"}, {"are", ""}, {"pregnant", "c"}},
       ":condition",
       "(c / pregnant :domain (cy / you))"},
      {{{"if", ""}, {"you", "cy"}, {"have", "c"}, {"diabetes", "cd"}},
       ":condition",
       "(c / have-03 :ARG0 (cy / you) :ARG1 (cd / diabetes))"},
      {{{"if", ""},
        {"you", "cy"},
        {"have", "c"},
        {"heart", "ch"},
        {"disease", "cd"}},
       ":condition",
       "(c / have-03 :ARG0 (cy / you) :ARG1 (cd / disease :mod (ch / "
       "heart)))"},
      {{{"if", ""},
        {"you", "cy"},
        {"have", "c"},
        {"high", "ch"},
        {"blood", "cb"},
        {"pressure", "cd"}},
       ":condition",
       "(c / have-03 :ARG0 (cy / you) :ARG1 (cd / pressure :mod (cb / blood) "
       ":ARG1-of (ch / high-02)))"},
      {{{"if", ""}, {"you", "cy"}, {"are", ""}, {"breastfeeding", "c"}},
       ":condition",
       "(c / breastfeed-01 :ARG0 (cy / you))"},
      {{{"if", ""},
        {"you", "cy"},
        {"suffer", "c"},
        {"from", ""},
        {"kidney", "ck"},
        {"disease", "cd"}},
       ":condition",
       "(c / suffer-01 :ARG0 (cy / you) :ARG1 (cd / disease :mod (ck / "
       "kidney)))"},
  };
  return kClauses;
}

const std::vector<Clause>& time_clauses() {
  static const std::vector<Clause> kClauses = {
      {{{"before", "t"}, {"bed", "tb"}}, ":time",
       "(t / before :op1 (tb / bed))"},
      {{{"after", "t"}, {"dinner", "tb"}}, ":time",
       "(t / after :op1 (tb / dinner))"},
      {{{"at", ""}, {"night", "tb"}}, ":time", "(tb / night)"},
      {{{"in", ""}, {"the", ""}, {"evening", "tb"}}, ":time",
       "(tb / evening)"},
      {{{"before", "t"}, {"exercise", "tb"}}, ":time",
       "(t / before :op1 (tb / exercise-02))"},
      {{{"after", "t"}, {"meals", "tb"}}, ":time",
       "(t / after :op1 (tb / meal))"},
  };
  return kClauses;
}

const std::vector<std::string>& topics() {
  static const std::vector<std::string> kTopics = {
      "alcohol", "coffee",  "milk",  "sugar",    "salt",   "eggs",   "butter",
      "chocolate", "cheese", "rice",  "bread",    "juice",  "soda",   "tea",
      "fish",    "nuts",    "yogurt", "wine",    "potatoes", "pasta"};
  return kTopics;
}

const std::vector<std::string>& modifiers() {
  static const std::vector<std::string> kModifiers = {
      "full-fat", "processed", "sweetened", "fried",
      "salted",   "refined",   "flavored",  "canned"};
  return kModifiers;
}

Advice with_clause(Advice a, const Clause& c) {
  for (const Piece& p : c.pieces) a.pieces.push_back(p);
  a.penman.pop_back();  // reopen the root
  a.penman += " " + c.role + " " + c.penman + ")";
  return a;
}

std::string advice_text(const Advice& a) {
  std::vector<std::string> words;
  for (const Piece& p : a.pieces) words.push_back(p.word);
  return text::join(words, " ") + ".";
}

// Consecutive words aligned to the same variable share one span.
std::string advice_alignment(const Advice& a) {
  std::string out;
  std::size_t i = 0;
  while (i < a.pieces.size()) {
    if (a.pieces[i].var.empty()) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    while (j < a.pieces.size() && a.pieces[j].var == a.pieces[i].var) ++j;
    if (!out.empty()) out.push_back(' ');
    out += std::to_string(i) + "-" + std::to_string(j) + "|" + a.pieces[i].var;
    i = j;
  }
  return out;
}

class Generator {
 public:
  explicit Generator(std::uint64_t seed) : rng_(seed) {}

  Advice polar(bool positive, const TopicPhrase& tp) {
    const auto& bank = positive ? positive_templates() : negative_templates();
    return rng_.pick(bank)(tp);
  }

  // Two different templates of one polarity, so the pair never repeats
  // itself verbatim.
  std::pair<Advice, Advice> agreeing(bool positive, const TopicPhrase& tp) {
    const auto& bank = positive ? positive_templates() : negative_templates();
    const std::size_t i = rng_.below(bank.size());
    std::size_t j = rng_.below(bank.size() - 1);
    if (j >= i) ++j;
    return {bank[i](tp), bank[j](tp)};
  }

  Record make(int label) {
    Record r;
    const std::string topic = rng_.pick(topics());
    r.topic = topic;
    const bool first_positive = rng_.below(2) == 0;
    Advice a1;
    Advice a2;
    switch (label) {
      case 0:  // direct
        a1 = polar(first_positive, {topic, ""});
        a2 = polar(!first_positive, {topic, ""});
        break;
      case 1:  // subtypical
        a1 = polar(first_positive, {topic, ""});
        a2 = polar(!first_positive, {topic, rng_.pick(modifiers())});
        break;
      case 2:  // conditional
        a1 = polar(first_positive, {topic, ""});
        a2 = with_clause(polar(!first_positive, {topic, ""}),
                         rng_.pick(condition_clauses()));
        break;
      case 3:  // temporal
        a1 = polar(first_positive, {topic, ""});
        a2 = with_clause(polar(!first_positive, {topic, ""}),
                         rng_.pick(time_clauses()));
        break;
      default:
        if (rng_.below(2) == 0) {
          // Same topic, same polarity.
          std::tie(a1, a2) = agreeing(first_positive, {topic, ""});
        } else {
          std::string other = rng_.pick(topics());
          while (other == topic) other = rng_.pick(topics());
          a1 = polar(first_positive, {topic, ""});
          a2 = polar(rng_.below(2) == 0, {other, ""});
        }
        break;
    }
    if (label >= 0 && label < static_cast<int>(kLabelCount)) {
      r.labels[static_cast<std::size_t>(label)] = true;
    }
    r.advice1 = advice_text(a1);
    r.advice2 = advice_text(a2);
    r.amr1 = a1.penman;
    r.amr2 = a2.penman;
    r.align1 = advice_alignment(a1);
    r.align2 = advice_alignment(a2);
    r.source = Source::kSynthetic;
    return r;
  }

  Rng& rng() { return rng_; }

 private:
  Rng rng_;
};

}  // namespace

ToyConfig parse_toy_config(std::string_view text) {
  using json = nlohmann::json;
  json obj;
  try {
    obj = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kConfigError, e.what());
  }
  if (!obj.is_object()) {
    throw Error(ErrorCode::kConfigError, "toy config must be a JSON object");
  }
  ToyConfig c;
  auto count = [&](const char* field, std::size_t* out) {
    auto it = obj.find(field);
    if (it == obj.end()) return;
    if (!it->is_number_unsigned()) {
      throw Error(ErrorCode::kConfigError,
                  std::string("'") + field + "' must be a non-negative integer");
    }
    *out = it->get<std::size_t>();
  };
  for (std::size_t k = 0; k < kLabelCount; ++k) {
    count(std::string(kLabelNames[k]).c_str(), &c.positives[k]);
  }
  count("negatives", &c.negatives);
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    const std::string& key = it.key();
    bool known = key == "negatives" || key == "split" || key == "id_prefix";
    for (auto name : kLabelNames) known = known || key == name;
    if (!known) {
      throw Error(ErrorCode::kConfigError, "unknown toy config field '" + key +
                                               "'");
    }
  }
  if (auto it = obj.find("split"); it != obj.end()) {
    if (*it == "train") {
      c.split = Split::kTrain;
    } else if (*it == "test") {
      c.split = Split::kTest;
    } else {
      throw Error(ErrorCode::kConfigError,
                  "'split' must be \"train\" or \"test\"");
    }
  }
  if (auto it = obj.find("id_prefix"); it != obj.end()) {
    if (!it->is_string() || it->get<std::string>().empty()) {
      throw Error(ErrorCode::kConfigError,
                  "'id_prefix' must be a non-empty string");
    }
    c.id_prefix = it->get<std::string>();
  }
  return c;
}

std::vector<Record> generate_toy(const ToyConfig& config, std::uint64_t seed) {
  Generator gen(seed);
  std::vector<Record> out;
  for (std::size_t k = 0; k < kLabelCount; ++k) {
    for (std::size_t i = 0; i < config.positives[k]; ++i) {
      out.push_back(gen.make(static_cast<int>(k)));
    }
  }
  for (std::size_t i = 0; i < config.negatives; ++i) {
    out.push_back(gen.make(-1));
  }
  gen.rng().shuffle(out);
  char id[32];
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::snprintf(id, sizeof(id), "-%05zu", i);
    out[i].id = config.id_prefix + id;
    out[i].split = config.split;
  }
  return out;
}

}  // namespace hcd::dataset
