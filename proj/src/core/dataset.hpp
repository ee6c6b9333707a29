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

// Health-advice pair records.
//
// JSONL schema, one object per line:
//   id        string
//   advice1   string, non-empty
//   advice2   string, non-empty
//   topic     string, non-empty
//   labels    {"direct": bool, "subtypical": bool, "conditional": bool,
//              "temporal": bool}
//   source    "real" | "synthetic"
//   split     "train" | "test"
//   amr1, amr2, align1, align2            optional strings
//   subtokens1, subtokens2                optional arrays of counts >= 1
// Unknown fields are ignored.

#ifndef HCD_CORE_DATASET_HPP_
#define HCD_CORE_DATASET_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace hcd::dataset {

inline constexpr std::size_t kLabelCount = 4;
inline constexpr std::array<std::string_view, kLabelCount> kLabelNames = {
    "direct", "subtypical", "conditional", "temporal"};

enum class Source { kReal, kSynthetic };
enum class Split { kTrain, kTest };

std::string_view source_name(Source s);
std::string_view split_name(Split s);

using Labels = std::array<bool, kLabelCount>;

struct Record {
  std::string id;
  std::string advice1;
  std::string advice2;
  std::string topic;
  Labels labels{};
  Source source = Source::kReal;
  Split split = Split::kTrain;
  std::optional<std::string> amr1;
  std::optional<std::string> amr2;
  std::optional<std::string> align1;
  std::optional<std::string> align2;
  std::optional<std::vector<std::size_t>> subtokens1;
  std::optional<std::vector<std::size_t>> subtokens2;
  // 1-based line in the source file; 0 for records built in memory.
  std::size_t line = 0;

  bool has_structure() const { return amr1 && amr2 && align1 && align2; }
};

// Throws MalformedLine or MissingField, with the line number in the message.
// Blank lines are skipped.
std::vector<Record> load_records(std::istream& in);
std::vector<Record> load_records_file(const std::string& path);

// Parses one JSON object; line is used for diagnostics.
Record parse_record(std::string_view json_line, std::size_t line);

std::string record_to_json(const Record& r);
void write_records(std::ostream& out, const std::vector<Record>& records);

struct Stats {
  std::size_t total = 0;
  // [split][source], split 0 = train, source 0 = real.
  std::array<std::array<std::size_t, 2>, 2> counts{};
  std::array<std::size_t, kLabelCount> positives{};
  std::size_t negatives = 0;  // records with no positive label
  std::size_t multi_label = 0;
  double mean_words_per_advice = 0.0;
  double mean_sentences_per_advice = 0.0;
  std::size_t single_sentence_advices = 0;
  std::size_t multi_sentence_advices = 0;
  // single / multi; empty when there is no multi-sentence advice.
  std::optional<double> single_to_multi_ratio;
};

Stats dataset_stats(const std::vector<Record>& records);
std::string stats_to_json(const Stats& s);
std::string stats_to_table(const Stats& s);

struct ToyConfig {
  std::array<std::size_t, kLabelCount> positives{};
  std::size_t negatives = 0;
  Split split = Split::kTrain;
  std::string id_prefix = "toy";
};

// Reads {"direct": n, "subtypical": n, "conditional": n, "temporal": n,
// "negatives": n, "split": "train"|"test", "id_prefix": "..."}; every field
// is optional. Throws ConfigError.
ToyConfig parse_toy_config(std::string_view json);

// Deterministic synthetic pairs with AMR graphs and alignments attached.
// Positive pairs share a single-word topic that appears verbatim in both
// advices:
//   direct       opposite polarity on the topic
//   subtypical   the second advice restricts the topic with a type modifier
//   conditional  the second advice carries an "if ..." clause
//   temporal     the second advice carries a time clause
// Negatives either repeat the polarity on a shared topic or talk about
// different topics. Records come out shuffled.
std::vector<Record> generate_toy(const ToyConfig& config, std::uint64_t seed);

}  // namespace hcd::dataset

#endif  // HCD_CORE_DATASET_HPP_
