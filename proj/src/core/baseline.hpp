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

// Lexical baseline: TF-IDF pair features and one binary class-weighted
// logistic classifier per conflict type, plus the multi-seed evaluation
// protocol (train, predict, score against a seeded random guess, aggregate).

#ifndef HCD_CORE_BASELINE_HPP_
#define HCD_CORE_BASELINE_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "core/dataset.hpp"
#include "core/metrics.hpp"

namespace hcd::baseline {

// (column, value) pairs, columns strictly increasing.
using SparseVector = std::vector<std::pair<std::uint32_t, double>>;

class TfidfModel {
 public:
  TfidfModel() = default;

  // Each document is one advice text. idf(t) = ln((1 + N) / (1 + df(t))) + 1.
  // Throws EmptyCorpus when documents is empty.
  static TfidfModel fit(const std::vector<std::string>& documents);

  // Rebuilds a fitted model from its terms and idf weights.
  static TfidfModel from_parts(std::vector<std::string> terms,
                               std::vector<double> idf,
                               std::size_t document_count);

  // Raw term counts times idf, L2-normalized; unseen terms are dropped.
  SparseVector transform(std::string_view document) const;

  std::size_t dimension() const { return terms_.size(); }
  const std::vector<std::string>& terms() const { return terms_; }
  const std::vector<double>& idf_weights() const { return idf_; }
  // idf of term, or 0 when the term is not in the vocabulary.
  double idf(std::string_view term) const;
  std::size_t document_count() const { return documents_; }

 private:
  std::vector<std::string> terms_;  // sorted
  std::vector<double> idf_;
  std::unordered_map<std::string, std::uint32_t> index_;
  std::size_t documents_ = 0;
};

// Fits on advice1 and advice2 of every record (2 documents per record).
TfidfModel fit_tfidf(const std::vector<dataset::Record>& train);

// advice1 vector in columns [0, V), advice2 vector in [V, 2V), each
// normalized independently.
SparseVector vectorize_pair(const TfidfModel& model, const dataset::Record& r);

struct TrainOptions {
  std::size_t epochs = 40;
  double learning_rate = 0.5;
  double l2 = 1e-4;
  std::uint64_t seed = 13;
};

struct BinaryClassifier {
  std::vector<double> weights;
  double bias = 0.0;
  double positive_weight = 1.0;
  double negative_weight = 1.0;

  double decision(const SparseVector& x) const;
  bool predict(const SparseVector& x) const { return decision(x) > 0.0; }
};

struct OvaClassifier {
  std::vector<std::string> labels;
  std::vector<BinaryClassifier> classifiers;
  std::size_t dimension = 0;
  TrainOptions options;

  std::vector<bool> predict(const SparseVector& x) const;
};

// Inverse-frequency class weights n / (2 * n_class); throws DegenerateLabel
// when one class is absent.
std::pair<double, double> class_weights(const std::vector<bool>& labels);

// labels is label-major: labels[k][i] is the gold value of label k for
// sample i. Plain SGD on the class-weighted logistic loss with L2 decay,
// visiting samples in a seeded random order each epoch. Throws
// DegenerateLabel, LengthMismatch or InvalidArgument.
OvaClassifier train_ova(const std::vector<SparseVector>& features,
                        std::size_t dimension,
                        const std::vector<std::vector<bool>>& labels,
                        const std::vector<std::string>& label_names,
                        const TrainOptions& options);

struct Model {
  TfidfModel tfidf;
  OvaClassifier classifier;
};

Model train_model(const std::vector<dataset::Record>& train,
                  const TrainOptions& options);

// predictions[k][i] for record i.
std::vector<std::vector<bool>> predict(const Model& model,
                                       const std::vector<dataset::Record>& rs);

std::vector<std::vector<bool>> gold_labels(
    const std::vector<dataset::Record>& records);

std::vector<std::string> label_names();

std::string model_to_json(const Model& model);
// Throws FormatError.
Model model_from_json(std::string_view json);

struct ProtocolOptions {
  std::size_t runs = 3;
  std::uint64_t base_seed = 13;
  TrainOptions train;
};

struct ProtocolReport {
  std::vector<std::uint64_t> seeds;
  std::vector<metrics::EvalReport> model_runs;
  std::vector<metrics::EvalReport> random_runs;
  metrics::RunAggregate model;
  metrics::RunAggregate random;
  std::size_t train_size = 0;
  std::size_t test_size = 0;
};

// Run r uses seed base_seed + r for both the classifier and the random
// guess; the random guess draws each label at its training positive rate.
// Throws EmptyCorpus when either split is empty.
ProtocolReport run_protocol(const std::vector<dataset::Record>& train,
                            const std::vector<dataset::Record>& test,
                            const ProtocolOptions& options);

std::string eval_report_to_json(const metrics::EvalReport& r);
std::string eval_report_to_table(const metrics::EvalReport& r);
std::string protocol_report_to_json(const ProtocolReport& r);
std::string protocol_report_to_table(const ProtocolReport& r);

}  // namespace hcd::baseline

#endif  // HCD_CORE_BASELINE_HPP_
