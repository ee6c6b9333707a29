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

#ifndef HCD_CORE_METRICS_HPP_
#define HCD_CORE_METRICS_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace hcd::metrics {

// Positive-class scores. Ratios with a zero denominator are 0.
struct BinaryMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t true_positives = 0;
  std::size_t false_positives = 0;
  std::size_t false_negatives = 0;
  std::size_t true_negatives = 0;
  std::size_t support = 0;  // gold positives
};

// Throws LengthMismatch.
BinaryMetrics binary_metrics(const std::vector<bool>& preds,
                             const std::vector<bool>& golds);

struct EvalReport {
  std::vector<std::string> labels;
  std::vector<BinaryMetrics> per_label;
  // sum(support * f1) / sum(support); 0 when no label has support.
  double weighted_f1 = 0.0;
};

// preds and golds are label-major: preds[label][sample]. Throws
// LengthMismatch when shapes differ.
EvalReport evaluate(const std::vector<std::vector<bool>>& preds,
                    const std::vector<std::vector<bool>>& golds,
                    const std::vector<std::string>& labels);

// Independent Bernoulli(positive_rate) draws. Throws InvalidArgument when
// the rate is outside [0, 1].
std::vector<bool> random_guess(std::size_t count, double positive_rate,
                               std::uint64_t seed);

struct Summary {
  double mean = 0.0;
  double stddev = 0.0;  // population
};

// Throws EmptyList.
Summary summarize(std::span<const double> values);

struct RunAggregate {
  std::size_t runs = 0;
  std::vector<std::string> labels;
  std::vector<Summary> precision;
  std::vector<Summary> recall;
  std::vector<Summary> f1;
  Summary weighted_f1;
};

// Throws EmptyList, or LengthMismatch when runs disagree on labels.
RunAggregate aggregate_runs(const std::vector<EvalReport>& runs);

}  // namespace hcd::metrics

#endif  // HCD_CORE_METRICS_HPP_
