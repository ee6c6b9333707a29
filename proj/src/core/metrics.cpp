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

#include "core/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"
#include "core/rng.hpp"

namespace hcd::metrics {

namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0
                  : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

BinaryMetrics binary_metrics(const std::vector<bool>& preds,
                             const std::vector<bool>& golds) {
  if (preds.size() != golds.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                std::to_string(preds.size()) + " predictions for " +
                    std::to_string(golds.size()) + " gold labels");
  }
  BinaryMetrics m;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    if (preds[i] && golds[i]) {
      ++m.true_positives;
    } else if (preds[i]) {
      ++m.false_positives;
    } else if (golds[i]) {
      ++m.false_negatives;
    } else {
      ++m.true_negatives;
    }
  }
  m.support = m.true_positives + m.false_negatives;
  m.precision = ratio(m.true_positives, m.true_positives + m.false_positives);
  m.recall = ratio(m.true_positives, m.support);
  const double pr = m.precision + m.recall;
  m.f1 = pr == 0.0 ? 0.0 : 2.0 * m.precision * m.recall / pr;
  return m;
}

EvalReport evaluate(const std::vector<std::vector<bool>>& preds,
                    const std::vector<std::vector<bool>>& golds,
                    const std::vector<std::string>& labels) {
  if (preds.size() != golds.size() || preds.size() != labels.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                "label counts differ between predictions, golds and names");
  }
  EvalReport r;
  r.labels = labels;
  double weighted = 0.0;
  std::size_t total_support = 0;
  for (std::size_t k = 0; k < labels.size(); ++k) {
    r.per_label.push_back(binary_metrics(preds[k], golds[k]));
    weighted += static_cast<double>(r.per_label.back().support) *
                r.per_label.back().f1;
    total_support += r.per_label.back().support;
  }
  r.weighted_f1 =
      total_support == 0 ? 0.0 : weighted / static_cast<double>(total_support);
  return r;
}

std::vector<bool> random_guess(std::size_t count, double positive_rate,
                               std::uint64_t seed) {
  if (!(positive_rate >= 0.0 && positive_rate <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "positive rate must lie in [0, 1]");
  }
  Rng rng(seed);
  std::vector<bool> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = rng.uniform() < positive_rate;
  }
  return out;
}

Summary summarize(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorCode::kEmptyList, "no values");
  // Sorted summation makes the result independent of run order.
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  Summary s;
  for (double v : sorted) s.mean += v;
  s.mean /= static_cast<double>(sorted.size());
  double var = 0.0;
  for (double v : sorted) var += (v - s.mean) * (v - s.mean);
  s.stddev = std::sqrt(var / static_cast<double>(sorted.size()));
  return s;
}

RunAggregate aggregate_runs(const std::vector<EvalReport>& runs) {
  if (runs.empty()) throw Error(ErrorCode::kEmptyList, "no runs to aggregate");
  RunAggregate agg;
  agg.runs = runs.size();
  agg.labels = runs.front().labels;
  for (const EvalReport& r : runs) {
    if (r.labels != agg.labels || r.per_label.size() != agg.labels.size()) {
      throw Error(ErrorCode::kLengthMismatch, "runs disagree on labels");
    }
  }
  std::vector<double> values(runs.size());
  auto column = [&](auto getter) {
    for (std::size_t i = 0; i < runs.size(); ++i) values[i] = getter(runs[i]);
    return summarize(values);
  };
  for (std::size_t k = 0; k < agg.labels.size(); ++k) {
    agg.precision.push_back(
        column([k](const EvalReport& r) { return r.per_label[k].precision; }));
    agg.recall.push_back(
        column([k](const EvalReport& r) { return r.per_label[k].recall; }));
    agg.f1.push_back(
        column([k](const EvalReport& r) { return r.per_label[k].f1; }));
  }
  agg.weighted_f1 = column([](const EvalReport& r) { return r.weighted_f1; });
  return agg;
}

}  // namespace hcd::metrics
