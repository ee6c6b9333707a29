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

#include "core/dataset.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "core/error.hpp"
#include "core/text.hpp"
#include "json.hpp"

namespace hcd::dataset {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string_view source_name(Source s) {
  return s == Source::kReal ? "real" : "synthetic";
}

std::string_view split_name(Split s) {
  return s == Split::kTrain ? "train" : "test";
}

namespace {

[[noreturn]] void malformed(std::size_t line, const std::string& why) {
  throw Error(ErrorCode::kMalformedLine,
              "line " + std::to_string(line) + ": " + why);
}

[[noreturn]] void missing(std::size_t line, const std::string& field) {
  throw Error(ErrorCode::kMissingField,
              "line " + std::to_string(line) + ": '" + field + "'");
}

std::string required_string(const json& obj, const char* field,
                            std::size_t line, bool non_empty) {
  auto it = obj.find(field);
  if (it == obj.end() || it->is_null()) missing(line, field);
  if (!it->is_string()) {
    malformed(line, std::string("'") + field + "' must be a string");
  }
  std::string value = it->get<std::string>();
  if (non_empty && value.empty()) {
    malformed(line, std::string("'") + field + "' is empty");
  }
  return value;
}

std::optional<std::string> optional_string(const json& obj, const char* field,
                                           std::size_t line) {
  auto it = obj.find(field);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) {
    malformed(line, std::string("'") + field + "' must be a string");
  }
  return it->get<std::string>();
}

std::optional<std::vector<std::size_t>> optional_counts(const json& obj,
                                                        const char* field,
                                                        std::size_t line) {
  auto it = obj.find(field);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_array()) {
    malformed(line, std::string("'") + field + "' must be an array");
  }
  std::vector<std::size_t> out;
  for (const json& v : *it) {
    if (!v.is_number_unsigned() || v.get<std::size_t>() == 0) {
      malformed(line, std::string("'") + field +
                          "' must hold positive integers");
    }
    out.push_back(v.get<std::size_t>());
  }
  return out;
}

}  // namespace

Record parse_record(std::string_view json_line, std::size_t line) {
  json obj;
  try {
    obj = json::parse(json_line);
  } catch (const json::parse_error& e) {
    malformed(line, e.what());
  }
  if (!obj.is_object()) malformed(line, "record must be a JSON object");

  Record r;
  r.line = line;
  r.id = required_string(obj, "id", line, true);
  r.advice1 = required_string(obj, "advice1", line, true);
  r.advice2 = required_string(obj, "advice2", line, true);
  r.topic = required_string(obj, "topic", line, true);

  auto labels = obj.find("labels");
  if (labels == obj.end() || labels->is_null()) missing(line, "labels");
  if (!labels->is_object()) malformed(line, "'labels' must be an object");
  for (std::size_t k = 0; k < kLabelCount; ++k) {
    const std::string name(kLabelNames[k]);
    auto it = labels->find(name);
    if (it == labels->end()) missing(line, "labels." + name);
    if (it->is_boolean()) {
      r.labels[k] = it->get<bool>();
    } else if (it->is_number_integer() &&
               (it->get<int>() == 0 || it->get<int>() == 1)) {
      r.labels[k] = it->get<int>() == 1;
    } else {
      malformed(line, "'labels." + name + "' must be a boolean");
    }
  }

  const std::string source = required_string(obj, "source", line, true);
  if (source == "real") {
    r.source = Source::kReal;
  } else if (source == "synthetic") {
    r.source = Source::kSynthetic;
  } else {
    malformed(line, "'source' must be \"real\" or \"synthetic\"");
  }
  const std::string split = required_string(obj, "split", line, true);
  if (split == "train") {
    r.split = Split::kTrain;
  } else if (split == "test") {
    r.split = Split::kTest;
  } else {
    malformed(line, "'split' must be \"train\" or \"test\"");
  }

  r.amr1 = optional_string(obj, "amr1", line);
  r.amr2 = optional_string(obj, "amr2", line);
  r.align1 = optional_string(obj, "align1", line);
  r.align2 = optional_string(obj, "align2", line);
  r.subtokens1 = optional_counts(obj, "subtokens1", line);
  r.subtokens2 = optional_counts(obj, "subtokens2", line);
  return r;
}

std::vector<Record> load_records(std::istream& in) {
  std::vector<Record> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::split_whitespace(line).empty()) continue;
    out.push_back(parse_record(line, line_no));
  }
  return out;
}

std::vector<Record> load_records_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open '" + path + "'");
  return load_records(in);
}

std::string record_to_json(const Record& r) {
  ordered_json obj;
  obj["id"] = r.id;
  obj["advice1"] = r.advice1;
  obj["advice2"] = r.advice2;
  obj["topic"] = r.topic;
  ordered_json labels = ordered_json::object();
  for (std::size_t k = 0; k < kLabelCount; ++k) {
    labels[std::string(kLabelNames[k])] = r.labels[k];
  }
  obj["labels"] = std::move(labels);
  obj["source"] = std::string(source_name(r.source));
  obj["split"] = std::string(split_name(r.split));
  if (r.amr1) obj["amr1"] = *r.amr1;
  if (r.amr2) obj["amr2"] = *r.amr2;
  if (r.align1) obj["align1"] = *r.align1;
  if (r.align2) obj["align2"] = *r.align2;
  if (r.subtokens1) obj["subtokens1"] = *r.subtokens1;
  if (r.subtokens2) obj["subtokens2"] = *r.subtokens2;
  return obj.dump();
}

void write_records(std::ostream& out, const std::vector<Record>& records) {
  for (const Record& r : records) out << record_to_json(r) << '\n';
}

Stats dataset_stats(const std::vector<Record>& records) {
  Stats s;
  s.total = records.size();
  std::size_t words = 0;
  std::size_t sentences = 0;
  for (const Record& r : records) {
    s.counts[r.split == Split::kTrain ? 0 : 1]
            [r.source == Source::kReal ? 0 : 1]++;
    std::size_t positive = 0;
    for (std::size_t k = 0; k < kLabelCount; ++k) {
      if (r.labels[k]) {
        ++s.positives[k];
        ++positive;
      }
    }
    if (positive == 0) ++s.negatives;
    if (positive > 1) ++s.multi_label;
    for (const std::string* advice : {&r.advice1, &r.advice2}) {
      words += text::tokenize_words(*advice).size();
      const std::size_t n = text::count_sentences(*advice);
      sentences += n;
      if (n > 1) {
        ++s.multi_sentence_advices;
      } else {
        ++s.single_sentence_advices;
      }
    }
  }
  if (!records.empty()) {
    const double advices = 2.0 * static_cast<double>(records.size());
    s.mean_words_per_advice = static_cast<double>(words) / advices;
    s.mean_sentences_per_advice = static_cast<double>(sentences) / advices;
  }
  if (s.multi_sentence_advices > 0) {
    s.single_to_multi_ratio =
        static_cast<double>(s.single_sentence_advices) /
        static_cast<double>(s.multi_sentence_advices);
  }
  return s;
}

std::string stats_to_json(const Stats& s) {
  ordered_json obj;
  obj["total"] = s.total;
  ordered_json counts = ordered_json::object();
  for (int split = 0; split < 2; ++split) {
    ordered_json row = ordered_json::object();
    row["real"] = s.counts[split][0];
    row["synthetic"] = s.counts[split][1];
    counts[split == 0 ? "train" : "test"] = std::move(row);
  }
  obj["counts"] = std::move(counts);
  ordered_json labels = ordered_json::object();
  for (std::size_t k = 0; k < kLabelCount; ++k) {
    labels[std::string(kLabelNames[k])] = s.positives[k];
  }
  obj["label_positives"] = std::move(labels);
  obj["negatives"] = s.negatives;
  obj["multi_label"] = s.multi_label;
  obj["mean_words_per_advice"] = s.mean_words_per_advice;
  obj["mean_sentences_per_advice"] = s.mean_sentences_per_advice;
  obj["single_sentence_advices"] = s.single_sentence_advices;
  obj["multi_sentence_advices"] = s.multi_sentence_advices;
  if (s.single_to_multi_ratio) {
    obj["single_to_multi_ratio"] = *s.single_to_multi_ratio;
  } else {
    obj["single_to_multi_ratio"] = nullptr;
  }
  return obj.dump(2);
}

std::string stats_to_table(const Stats& s) {
  std::ostringstream out;
  char buf[128];
  out << "split   real  synthetic\n";
  for (int split = 0; split < 2; ++split) {
    std::snprintf(buf, sizeof(buf), "%-5s %6zu %10zu\n",
                  split == 0 ? "train" : "test", s.counts[split][0],
                  s.counts[split][1]);
    out << buf;
  }
  out << "\nlabel        positives\n";
  for (std::size_t k = 0; k < kLabelCount; ++k) {
    std::snprintf(buf, sizeof(buf), "%-12s %9zu\n",
                  std::string(kLabelNames[k]).c_str(), s.positives[k]);
    out << buf;
  }
  std::snprintf(buf, sizeof(buf), "%-12s %9zu\n", "none", s.negatives);
  out << buf;
  std::snprintf(buf, sizeof(buf), "\nrecords                 %zu\n", s.total);
  out << buf;
  std::snprintf(buf, sizeof(buf), "mean words/advice       %.3f\n",
                s.mean_words_per_advice);
  out << buf;
  std::snprintf(buf, sizeof(buf), "mean sentences/advice   %.3f\n",
                s.mean_sentences_per_advice);
  out << buf;
  if (s.single_to_multi_ratio) {
    std::snprintf(buf, sizeof(buf), "single:multi sentence   %.3f\n",
                  *s.single_to_multi_ratio);
  } else {
    std::snprintf(buf, sizeof(buf), "single:multi sentence   n/a\n");
  }
  out << buf;
  return out.str();
}

}  // namespace hcd::dataset
