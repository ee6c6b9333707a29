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

// Batch driver: record -> parse -> align -> link -> relation matrix -> files.
//
// Output tree under output_dir:
//   vocab.txt                    relation vocabulary used for every matrix
//   report.json                  PipelineReport without timing
//   records/<id>.linked.json     linked-pair document
//   records/<id>.matrix.tsv      sparse relation matrix
//   records/<id>.tokens.tsv      packed positions: pos, segment, word, text
// The tree is byte-identical for any parallelism degree.

#ifndef HCD_CORE_PIPELINE_HPP_
#define HCD_CORE_PIPELINE_HPP_

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "core/dataset.hpp"
#include "core/relation_matrix.hpp"
#include "core/tdgl.hpp"

namespace hcd::pipeline {

struct PipelineConfig {
  tdgl::SimilarityKind similarity = tdgl::SimilarityKind::kTrigram;
  std::string embedding_path;
  double min_score = 0.0;
  // Exactly one vocabulary source.
  std::string vocab_path;
  bool build_vocab_from_train = false;
  std::string output_dir;
  std::size_t parallelism = 1;
  bool fail_fast = false;
  // Naive splitter threshold used when a record has no subtoken counts;
  // 0 keeps whole words.
  std::size_t split_threshold = 0;
  std::string cls_marker = "[CLS]";
  std::string sep_marker = "[SEP]";
};

// Throws ConfigError.
void validate_config(const PipelineConfig& config);

// Reads {"similarity", "embedding_path", "min_score", "vocab_path",
// "build_vocab_from_train", "output_dir", "parallelism", "fail_fast",
// "split_threshold", "cls_marker", "sep_marker"} on top of base.
PipelineConfig parse_config(std::string_view json, PipelineConfig base = {});

enum class Outcome { kProcessed, kSkipped, kErrored };

struct RecordOutcome {
  std::string id;
  Outcome outcome = Outcome::kProcessed;
  std::string error_kind;  // empty when processed
  std::string message;
};

struct PipelineReport {
  std::size_t input_count = 0;
  std::size_t processed = 0;
  std::size_t skipped = 0;
  std::size_t errored = 0;
  std::map<std::string, std::size_t> error_kinds;
  std::vector<RecordOutcome> records;  // input order
  double elapsed_seconds = 0.0;

  // Everything except timing.
  bool same_outcome(const PipelineReport& other) const;
};

std::string report_to_json(const PipelineReport& r, bool include_timing);

struct RecordArtifacts {
  std::string linked_json;
  std::string matrix_tsv;
  std::string tokens_tsv;
};

struct Context {
  const tdgl::SimilarityProvider* similarity = nullptr;
  const relmat::RelationVocab* vocab = nullptr;
  const PipelineConfig* config = nullptr;
};

// Full in-memory processing of one record; throws hcd::Error on any record
// fault (MissingStructure, parse errors, TopicUnalignable, ...).
RecordArtifacts process_record(const dataset::Record& record,
                               const Context& ctx);

// Graphs of the train split (amr1 then amr2 per record, in record order);
// graphs that fail to parse are left out.
relmat::RelationVocab vocab_from_train(
    const std::vector<dataset::Record>& records);

// Skip mode: faulty records are counted as skipped with their error kind.
// Fail-fast mode: throws the fault of the lowest-index failing record,
// prefixed with its id. File-system failures count as errored in both
// modes. Throws ConfigError for an invalid configuration.
PipelineReport run_pipeline(const std::vector<dataset::Record>& records,
                            const PipelineConfig& config);

}  // namespace hcd::pipeline

#endif  // HCD_CORE_PIPELINE_HPP_
