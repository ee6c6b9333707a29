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

#include "core/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <map>
#include <numeric>
#include <sstream>

#include "core/error.hpp"
#include "core/rng.hpp"
#include "core/text.hpp"
#include "json.hpp"

namespace hcd::baseline {

using ordered_json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// TF-IDF

TfidfModel TfidfModel::fit(const std::vector<std::string>& documents) {
  if (documents.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, "no training documents");
  }
  std::map<std::string, std::size_t> df;
  for (const std::string& doc : documents) {
    std::vector<std::string> terms = text::lexical_terms(doc);
    std::sort(terms.begin(), terms.end());
    terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
    for (std::string& t : terms) ++df[std::move(t)];
  }
  const double n = static_cast<double>(documents.size());
  std::vector<std::string> terms;
  std::vector<double> idf;
  for (const auto& [term, count] : df) {
    terms.push_back(term);
    idf.push_back(std::log((1.0 + n) / (1.0 + static_cast<double>(count))) +
                  1.0);
  }
  return from_parts(std::move(terms), std::move(idf), documents.size());
}

TfidfModel TfidfModel::from_parts(std::vector<std::string> terms,
                                  std::vector<double> idf,
                                  std::size_t document_count) {
  if (terms.size() != idf.size()) {
    throw Error(ErrorCode::kFormatError, "term and idf counts differ");
  }
  TfidfModel m;
  m.terms_ = std::move(terms);
  m.idf_ = std::move(idf);
  m.documents_ = document_count;
  for (std::size_t i = 0; i < m.terms_.size(); ++i) {
    if (!m.index_.emplace(m.terms_[i], static_cast<std::uint32_t>(i)).second) {
      throw Error(ErrorCode::kFormatError,
                  "term '" + m.terms_[i] + "' appears twice");
    }
  }
  return m;
}

double TfidfModel::idf(std::string_view term) const {
  auto it = index_.find(std::string(term));
  return it == index_.end() ? 0.0 : idf_[it->second];
}

SparseVector TfidfModel::transform(std::string_view document) const {
  std::map<std::uint32_t, double> counts;
  for (const std::string& t : text::lexical_terms(document)) {
    auto it = index_.find(t);
    if (it != index_.end()) counts[it->second] += 1.0;
  }
  SparseVector v;
  double norm = 0.0;
  for (const auto& [col, tf] : counts) {
    const double value = tf * idf_[col];
    v.emplace_back(col, value);
    norm += value * value;
  }
  if (norm > 0.0) {
    norm = std::sqrt(norm);
    for (auto& cell : v) cell.second /= norm;
  }
  return v;
}

TfidfModel fit_tfidf(const std::vector<dataset::Record>& train) {
  if (train.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, "no training records");
  }
  std::vector<std::string> docs;
  docs.reserve(2 * train.size());
  for (const dataset::Record& r : train) {
    docs.push_back(r.advice1);
    docs.push_back(r.advice2);
  }
  return TfidfModel::fit(docs);
}

SparseVector vectorize_pair(const TfidfModel& model, const dataset::Record& r) {
  SparseVector out = model.transform(r.advice1);
  const auto offset = static_cast<std::uint32_t>(model.dimension());
  for (const auto& [col, value] : model.transform(r.advice2)) {
    out.emplace_back(col + offset, value);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Classifier

double BinaryClassifier::decision(const SparseVector& x) const {
  double z = bias;
  for (const auto& [col, value] : x) {
    if (col < weights.size()) z += weights[col] * value;
  }
  return z;
}

std::vector<bool> OvaClassifier::predict(const SparseVector& x) const {
  std::vector<bool> out;
  out.reserve(classifiers.size());
  for (const BinaryClassifier& c : classifiers) out.push_back(c.predict(x));
  return out;
}

std::pair<double, double> class_weights(const std::vector<bool>& labels) {
  const auto positives =
      static_cast<std::size_t>(std::count(labels.begin(), labels.end(), true));
  const std::size_t negatives = labels.size() - positives;
  if (positives == 0 || negatives == 0) {
    throw Error(ErrorCode::kDegenerateLabel,
                positives == 0 ? "no positive examples"
                               : "no negative examples");
  }
  const double n = static_cast<double>(labels.size());
  return {n / (2.0 * static_cast<double>(positives)),
          n / (2.0 * static_cast<double>(negatives))};
}

namespace {

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

BinaryClassifier train_binary(const std::vector<SparseVector>& features,
                              std::size_t dimension,
                              const std::vector<bool>& labels,
                              const TrainOptions& opt, std::uint64_t seed) {
  BinaryClassifier c;
  std::tie(c.positive_weight, c.negative_weight) = class_weights(labels);

  // Weights are stored as scale * v so the L2 decay is O(1) per step.
  std::vector<double> v(dimension, 0.0);
  double scale = 1.0;
  const double decay = 1.0 - opt.learning_rate * opt.l2;
  Rng rng(seed);
  std::vector<std::size_t> order(features.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t epoch = 0; epoch < opt.epochs; ++epoch) {
    rng.shuffle(order);
    for (std::size_t i : order) {
      const SparseVector& x = features[i];
      double z = c.bias;
      for (const auto& [col, value] : x) z += scale * v[col] * value;
      const double y = labels[i] ? 1.0 : 0.0;
      const double w = labels[i] ? c.positive_weight : c.negative_weight;
      const double g = w * (sigmoid(z) - y);
      if (opt.l2 > 0.0) {
        scale *= decay;
        if (scale < 1e-9) {
          for (double& vj : v) vj *= scale;
          scale = 1.0;
        }
      }
      const double step = opt.learning_rate * g / scale;
      for (const auto& [col, value] : x) v[col] -= step * value;
      c.bias -= opt.learning_rate * g;
    }
  }
  c.weights.resize(dimension);
  for (std::size_t j = 0; j < dimension; ++j) c.weights[j] = scale * v[j];
  return c;
}

}  // namespace

OvaClassifier train_ova(const std::vector<SparseVector>& features,
                        std::size_t dimension,
                        const std::vector<std::vector<bool>>& labels,
                        const std::vector<std::string>& label_names,
                        const TrainOptions& options) {
  if (labels.size() != label_names.size()) {
    throw Error(ErrorCode::kLengthMismatch, "label names and label columns differ");
  }
  if (!(options.learning_rate > 0.0) || options.l2 < 0.0 ||
      options.learning_rate * options.l2 >= 1.0) {
    throw Error(ErrorCode::kInvalidArgument,
                "learning rate must be positive and learning_rate * l2 < 1");
  }
  for (const SparseVector& x : features) {
    for (const auto& cell : x) {
      if (cell.first >= dimension) {
        throw Error(ErrorCode::kInvalidArgument,
                    "feature column exceeds the dimension");
      }
    }
  }
  OvaClassifier ova;
  ova.labels = label_names;
  ova.dimension = dimension;
  ova.options = options;
  for (std::size_t k = 0; k < labels.size(); ++k) {
    if (labels[k].size() != features.size()) {
      throw Error(ErrorCode::kLengthMismatch,
                  "label '" + label_names[k] + "' has " +
                      std::to_string(labels[k].size()) + " values for " +
                      std::to_string(features.size()) + " samples");
    }
    try {
      const std::uint64_t seed =
          options.seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(k);
      ova.classifiers.push_back(
          train_binary(features, dimension, labels[k], options, seed));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kDegenerateLabel) throw;
      throw Error(ErrorCode::kDegenerateLabel,
                  "label '" + label_names[k] + "': " + e.what());
    }
  }
  return ova;
}

std::vector<std::string> label_names() {
  std::vector<std::string> out;
  for (auto name : dataset::kLabelNames) out.emplace_back(name);
  return out;
}

std::vector<std::vector<bool>> gold_labels(
    const std::vector<dataset::Record>& records) {
  std::vector<std::vector<bool>> out(dataset::kLabelCount);
  for (const dataset::Record& r : records) {
    for (std::size_t k = 0; k < dataset::kLabelCount; ++k) {
      out[k].push_back(r.labels[k]);
    }
  }
  return out;
}

Model train_model(const std::vector<dataset::Record>& train,
                  const TrainOptions& options) {
  Model m;
  m.tfidf = fit_tfidf(train);
  std::vector<SparseVector> features;
  features.reserve(train.size());
  for (const dataset::Record& r : train) {
    features.push_back(vectorize_pair(m.tfidf, r));
  }
  m.classifier = train_ova(features, 2 * m.tfidf.dimension(),
                           gold_labels(train), label_names(), options);
  return m;
}

std::vector<std::vector<bool>> predict(const Model& model,
                                       const std::vector<dataset::Record>& rs) {
  std::vector<std::vector<bool>> out(model.classifier.classifiers.size());
  for (const dataset::Record& r : rs) {
    const std::vector<bool> p =
        model.classifier.predict(vectorize_pair(model.tfidf, r));
    for (std::size_t k = 0; k < p.size(); ++k) out[k].push_back(p[k]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Model files

std::string model_to_json(const Model& model) {
  ordered_json obj;
  obj["format"] = "hcd-tfidf-ova";
  obj["version"] = 1;
  obj["tfidf"] = {{"documents", model.tfidf.document_count()},
                  {"terms", model.tfidf.terms()},
                  {"idf", model.tfidf.idf_weights()}};
  const TrainOptions& o = model.classifier.options;
  obj["train_options"] = {{"epochs", o.epochs},
                          {"learning_rate", o.learning_rate},
                          {"l2", o.l2},
                          {"seed", o.seed}};
  obj["dimension"] = model.classifier.dimension;
  ordered_json classifiers = ordered_json::array();
  for (std::size_t k = 0; k < model.classifier.classifiers.size(); ++k) {
    const BinaryClassifier& c = model.classifier.classifiers[k];
    classifiers.push_back({{"label", model.classifier.labels[k]},
                           {"bias", c.bias},
                           {"positive_weight", c.positive_weight},
                           {"negative_weight", c.negative_weight},
                           {"weights", c.weights}});
  }
  obj["classifiers"] = std::move(classifiers);
  return obj.dump();
}

Model model_from_json(std::string_view text) {
  try {
    const nlohmann::json obj = nlohmann::json::parse(text);
    if (obj.at("format") != "hcd-tfidf-ova" || obj.at("version") != 1) {
      throw Error(ErrorCode::kFormatError, "not a baseline model file");
    }
    Model m;
    m.tfidf = TfidfModel::from_parts(
        obj.at("tfidf").at("terms").get<std::vector<std::string>>(),
        obj.at("tfidf").at("idf").get<std::vector<double>>(),
        obj.at("tfidf").at("documents").get<std::size_t>());
    const auto& o = obj.at("train_options");
    m.classifier.options = {o.at("epochs").get<std::size_t>(),
                            o.at("learning_rate").get<double>(),
                            o.at("l2").get<double>(),
                            o.at("seed").get<std::uint64_t>()};
    m.classifier.dimension = obj.at("dimension").get<std::size_t>();
    if (m.classifier.dimension != 2 * m.tfidf.dimension()) {
      throw Error(ErrorCode::kFormatError,
                  "classifier dimension does not match the vocabulary");
    }
    for (const auto& c : obj.at("classifiers")) {
      BinaryClassifier b;
      b.bias = c.at("bias").get<double>();
      b.positive_weight = c.at("positive_weight").get<double>();
      b.negative_weight = c.at("negative_weight").get<double>();
      b.weights = c.at("weights").get<std::vector<double>>();
      if (b.weights.size() != m.classifier.dimension) {
        throw Error(ErrorCode::kFormatError, "weight vector has wrong length");
      }
      m.classifier.labels.push_back(c.at("label").get<std::string>());
      m.classifier.classifiers.push_back(std::move(b));
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kFormatError, e.what());
  }
}

// ---------------------------------------------------------------------------
// Protocol

ProtocolReport run_protocol(const std::vector<dataset::Record>& train,
                            const std::vector<dataset::Record>& test,
                            const ProtocolOptions& options) {
  if (train.empty() || test.empty()) {
    throw Error(ErrorCode::kEmptyCorpus,
                train.empty() ? "no training records" : "no test records");
  }
  if (options.runs == 0) {
    throw Error(ErrorCode::kInvalidArgument, "at least one run is required");
  }
  ProtocolReport report;
  report.train_size = train.size();
  report.test_size = test.size();
  const std::vector<std::string> names = label_names();
  const std::vector<std::vector<bool>> train_golds = gold_labels(train);
  const std::vector<std::vector<bool>> test_golds = gold_labels(test);

  for (std::size_t run = 0; run < options.runs; ++run) {
    const std::uint64_t seed = options.base_seed + run;
    report.seeds.push_back(seed);
    TrainOptions topt = options.train;
    topt.seed = seed;
    const Model model = train_model(train, topt);
    report.model_runs.push_back(
        metrics::evaluate(predict(model, test), test_golds, names));

    std::vector<std::vector<bool>> guesses;
    for (std::size_t k = 0; k < names.size(); ++k) {
      const auto positives = static_cast<double>(
          std::count(train_golds[k].begin(), train_golds[k].end(), true));
      const double rate = positives / static_cast<double>(train.size());
      guesses.push_back(metrics::random_guess(
          test.size(), rate, seed * 0x9E3779B97F4A7C15ULL + 1000 + k));
    }
    report.random_runs.push_back(metrics::evaluate(guesses, test_golds, names));
  }
  report.model = metrics::aggregate_runs(report.model_runs);
  report.random = metrics::aggregate_runs(report.random_runs);
  return report;
}

namespace {

ordered_json eval_json(const metrics::EvalReport& r) {
  ordered_json labels = ordered_json::object();
  for (std::size_t k = 0; k < r.labels.size(); ++k) {
    const metrics::BinaryMetrics& m = r.per_label[k];
    labels[r.labels[k]] = {{"precision", m.precision},
                           {"recall", m.recall},
                           {"f1", m.f1},
                           {"support", m.support},
                           {"tp", m.true_positives},
                           {"fp", m.false_positives},
                           {"fn", m.false_negatives},
                           {"tn", m.true_negatives}};
  }
  ordered_json obj;
  obj["labels"] = std::move(labels);
  obj["weighted_f1"] = r.weighted_f1;
  return obj;
}

ordered_json summary_json(const metrics::Summary& s) {
  return {{"mean", s.mean}, {"std", s.stddev}};
}

ordered_json aggregate_json(const metrics::RunAggregate& a) {
  ordered_json labels = ordered_json::object();
  for (std::size_t k = 0; k < a.labels.size(); ++k) {
    labels[a.labels[k]] = {{"precision", summary_json(a.precision[k])},
                           {"recall", summary_json(a.recall[k])},
                           {"f1", summary_json(a.f1[k])}};
  }
  ordered_json obj;
  obj["runs"] = a.runs;
  obj["labels"] = std::move(labels);
  obj["weighted_f1"] = summary_json(a.weighted_f1);
  return obj;
}

std::string format_row(const char* fmt, ...) __attribute__((format(printf, 1, 2)));

std::string format_row(const char* fmt, ...) {
  char buf[256];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof(buf), fmt, args);
  va_end(args);
  return buf;
}

}  // namespace

std::string eval_report_to_json(const metrics::EvalReport& r) {
  return eval_json(r).dump(2);
}

std::string eval_report_to_table(const metrics::EvalReport& r) {
  std::string out = format_row("%-12s %9s %9s %9s %8s\n", "label", "precision",
                               "recall", "f1", "support");
  for (std::size_t k = 0; k < r.labels.size(); ++k) {
    const metrics::BinaryMetrics& m = r.per_label[k];
    out += format_row("%-12s %9.4f %9.4f %9.4f %8zu\n", r.labels[k].c_str(),
                      m.precision, m.recall, m.f1, m.support);
  }
  out += format_row("%-12s %29.4f\n", "weighted-f1", r.weighted_f1);
  return out;
}

std::string protocol_report_to_json(const ProtocolReport& r) {
  ordered_json obj;
  obj["train_size"] = r.train_size;
  obj["test_size"] = r.test_size;
  obj["seeds"] = r.seeds;
  ordered_json model_runs = ordered_json::array();
  for (const auto& run : r.model_runs) model_runs.push_back(eval_json(run));
  ordered_json random_runs = ordered_json::array();
  for (const auto& run : r.random_runs) random_runs.push_back(eval_json(run));
  obj["tfidf_ova"] = {{"mean_std", aggregate_json(r.model)},
                      {"per_run", std::move(model_runs)}};
  obj["random_guess"] = {{"mean_std", aggregate_json(r.random)},
                         {"per_run", std::move(random_runs)}};
  return obj.dump(2);
}

std::string protocol_report_to_table(const ProtocolReport& r) {
  std::string out = format_row(
      "%zu runs, %zu train / %zu test records; mean/std over seeds\n\n",
      r.model.runs, r.train_size, r.test_size);
  out += format_row("%-12s %15s %15s %15s %15s\n", "label", "precision",
                    "recall", "f1", "random f1");
  for (std::size_t k = 0; k < r.model.labels.size(); ++k) {
    out += format_row(
        "%-12s %7.4f/%-7.4f %7.4f/%-7.4f %7.4f/%-7.4f %7.4f/%-7.4f\n",
        r.model.labels[k].c_str(), r.model.precision[k].mean,
        r.model.precision[k].stddev, r.model.recall[k].mean,
        r.model.recall[k].stddev, r.model.f1[k].mean, r.model.f1[k].stddev,
        r.random.f1[k].mean, r.random.f1[k].stddev);
  }
  out += format_row("%-12s %47.4f/%-7.4f %7.4f/%-7.4f\n", "weighted-f1",
                    r.model.weighted_f1.mean, r.model.weighted_f1.stddev,
                    r.random.weighted_f1.mean, r.random.weighted_f1.stddev);
  return out;
}

}  // namespace hcd::baseline
