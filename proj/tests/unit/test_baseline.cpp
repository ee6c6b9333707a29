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


#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "core/baseline.hpp"
#include "core/dataset.hpp"
#include "core/error.hpp"
#include "core/metrics.hpp"
#include "core/rng.hpp"
#include "doctest.h"
#include "oracles/metrics_oracle.hpp"

namespace {

using hcd::Error;
using hcd::ErrorCode;
using hcd::baseline::SparseVector;
using hcd::baseline::TfidfModel;
using hcd::dataset::Record;

double norm(const SparseVector& v) {
  double s = 0.0;
  for (const auto& [col, value] : v) s += value * value;
  return std::sqrt(s);
}

double dot(const SparseVector& a, const SparseVector& b) {
  double s = 0.0;
  for (const auto& [ca, va] : a) {
    for (const auto& [cb, vb] : b) {
      if (ca == cb) s += va * vb;
    }
  }
  return s;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kOk;
}

// One marker word per label; records with none of them are negatives.
std::vector<Record> separable(std::size_t per_label) {
  const char* markers[] = {"zebra", "yak", "okapi", "lemur"};
  const char* fillers[] = {"walk", "read", "cook", "swim", "rest"};
  std::vector<Record> rs;
  hcd::Rng rng(3);
  for (std::size_t k = 0; k <= 4; ++k) {
    for (std::size_t i = 0; i < per_label; ++i) {
      Record r;
      r.id = "s" + std::to_string(rs.size());
      const std::string filler = fillers[rng.below(5)];
      r.advice1 = "Please " + filler + " daily.";
      r.advice2 = k < 4 ? std::string("Mind the ") + markers[k] + "."
                        : "Please " + filler + " less.";
      r.topic = filler;
      if (k < 4) r.labels[k] = true;
      rs.push_back(r);
    }
  }
  return rs;
}

}  // namespace

TEST_CASE("tfidf idf values") {
  const TfidfModel m = TfidfModel::fit({"eat fish", "eat rice"});
  CHECK(m.dimension() == 3);
  CHECK(m.idf("eat") == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(m.idf("fish") == doctest::Approx(std::log(1.5) + 1.0).epsilon(1e-15));
  CHECK(m.idf("rice") == m.idf("fish"));
  CHECK(m.idf("bread") == 0.0);
  CHECK(code_of([] { TfidfModel::fit({}); }) == ErrorCode::kEmptyCorpus);
}

TEST_CASE("tfidf vectors") {
  const TfidfModel m =
      TfidfModel::fit({"Eat fish often.", "Eat rice.", "Drink water"});
  for (const char* doc : {"eat fish", "EAT, rice rice!", "water"}) {
    CHECK(norm(m.transform(doc)) == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(m.transform("unseen words only").empty());
  CHECK(m.transform("fish zebra") == m.transform("fish"));
  const auto a = m.transform("eat fish");
  const auto b = m.transform("fish eat");
  CHECK(a == b);
  CHECK(dot(a, m.transform("eat rice")) ==
        doctest::Approx(dot(m.transform("eat rice"), a)));
  CHECK(dot(m.transform("fish"), m.transform("water")) == 0.0);
}

TEST_CASE("pair vectors keep the two advices apart") {
  const TfidfModel m = TfidfModel::fit({"eat fish", "eat rice"});
  Record r;
  r.advice1 = "eat fish";
  r.advice2 = "eat fish";
  const SparseVector v = hcd::baseline::vectorize_pair(m, r);
  REQUIRE(v.size() == 4);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(v[i + 2].first == v[i].first + m.dimension());
    CHECK(v[i + 2].second == v[i].second);
  }
}

TEST_CASE("class weights") {
  std::vector<bool> labels(100, false);
  for (int i = 0; i < 10; ++i) labels[i] = true;
  const auto [pos, neg] = hcd::baseline::class_weights(labels);
  CHECK(pos == doctest::Approx(5.0));
  CHECK(neg == doctest::Approx(100.0 / 180.0));
  CHECK(pos / neg == doctest::Approx(9.0));
  CHECK(code_of([] { hcd::baseline::class_weights({true, true}); }) ==
        ErrorCode::kDegenerateLabel);
  CHECK(code_of([] { hcd::baseline::class_weights({false}); }) ==
        ErrorCode::kDegenerateLabel);
}

TEST_CASE("training separates a separable set") {
  const auto rs = separable(12);
  const auto model = hcd::baseline::train_model(rs, {});
  const auto preds = hcd::baseline::predict(model, rs);
  CHECK(preds == hcd::baseline::gold_labels(rs));

  const auto again = hcd::baseline::train_model(rs, {});
  CHECK(hcd::baseline::model_to_json(again) ==
        hcd::baseline::model_to_json(model));
  hcd::baseline::TrainOptions other;
  other.seed = 99;
  CHECK(hcd::baseline::model_to_json(hcd::baseline::train_model(rs, other)) !=
        hcd::baseline::model_to_json(model));
}

TEST_CASE("minority labels are still predicted") {
  auto rs = separable(40);
  // Keep 4 positives for the first label and all negatives.
  std::vector<Record> skewed;
  std::size_t kept = 0;
  for (const auto& r : rs) {
    if (r.labels[0] && kept++ >= 4) continue;
    skewed.push_back(r);
  }
  const auto model = hcd::baseline::train_model(skewed, {});
  const auto report = hcd::metrics::evaluate(
      hcd::baseline::predict(model, skewed),
      hcd::baseline::gold_labels(skewed), hcd::baseline::label_names());
  CHECK(report.per_label[0].recall > 0.0);
}

TEST_CASE("model json round trip") {
  const auto rs = separable(6);
  const auto model = hcd::baseline::train_model(rs, {});
  const std::string json = hcd::baseline::model_to_json(model);
  const auto back = hcd::baseline::model_from_json(json);
  CHECK(hcd::baseline::model_to_json(back) == json);
  CHECK(hcd::baseline::predict(back, rs) == hcd::baseline::predict(model, rs));
  CHECK(code_of([] { hcd::baseline::model_from_json("{}"); }) ==
        ErrorCode::kFormatError);
  CHECK(code_of([] { hcd::baseline::model_from_json("nope"); }) ==
        ErrorCode::kFormatError);
}

TEST_CASE("binary metrics: worked example") {
  const auto m =
      hcd::metrics::binary_metrics({true, true, false, false},
                                   {true, false, true, false});
  CHECK(m.precision == 0.5);
  CHECK(m.recall == 0.5);
  CHECK(m.f1 == 0.5);
  CHECK(m.support == 2);
  CHECK(m.true_negatives == 1);
  const auto none = hcd::metrics::binary_metrics({false, false}, {false, false});
  CHECK(none.f1 == 0.0);
  CHECK(code_of([] { hcd::metrics::binary_metrics({true}, {}); }) ==
        ErrorCode::kLengthMismatch);
}

TEST_CASE("weighted f1 weights by support") {
  // Label a: 10 positives, all found. Label b: 30 positives, none found.
  std::vector<bool> gold_a(40, false), gold_b(40, true), pred_b(40, false);
  for (int i = 0; i < 10; ++i) gold_a[i] = true;
  const std::vector<std::vector<bool>> preds = {gold_a, pred_b};
  std::vector<bool> gb(40, false);
  for (int i = 0; i < 30; ++i) gb[i] = true;
  const std::vector<std::vector<bool>> golds = {gold_a, gb};
  const auto r = hcd::metrics::evaluate(preds, golds, {"a", "b"});
  CHECK(r.per_label[0].f1 == 1.0);
  CHECK(r.per_label[1].f1 == 0.0);
  CHECK(r.weighted_f1 == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(r.weighted_f1 == hcd::oracle::brute_weighted_f1(preds, golds));
  CHECK(code_of([&] { hcd::metrics::evaluate(preds, golds, {"a"}); }) ==
        ErrorCode::kLengthMismatch);
}

TEST_CASE("metrics agree with the per-sample oracle") {
  hcd::Rng rng(2026);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = rng.below(40);
    const std::size_t labels = 1 + rng.below(5);
    std::vector<std::vector<bool>> preds(labels), golds(labels);
    std::vector<std::string> names;
    for (std::size_t k = 0; k < labels; ++k) {
      names.push_back("l" + std::to_string(k));
      const double pp = rng.uniform(), gp = rng.uniform();
      for (std::size_t i = 0; i < n; ++i) {
        preds[k].push_back(rng.uniform() < pp);
        golds[k].push_back(rng.uniform() < gp);
      }
    }
    const auto r = hcd::metrics::evaluate(preds, golds, names);
    for (std::size_t k = 0; k < labels; ++k) {
      const auto o = hcd::oracle::brute_prf(preds[k], golds[k]);
      CHECK(std::abs(r.per_label[k].precision - o.precision) <= 1e-12);
      CHECK(std::abs(r.per_label[k].recall - o.recall) <= 1e-12);
      CHECK(std::abs(r.per_label[k].f1 - o.f1) <= 1e-12);
      CHECK(r.per_label[k].support == o.support);
    }
    CHECK(std::abs(r.weighted_f1 - hcd::oracle::brute_weighted_f1(preds, golds)) <=
          1e-12);
  }
}

TEST_CASE("random guesser") {
  const auto none = hcd::metrics::random_guess(50, 0.0, 1);
  CHECK(std::count(none.begin(), none.end(), true) == 0);
  const auto all = hcd::metrics::random_guess(50, 1.0, 1);
  CHECK(std::count(all.begin(), all.end(), true) == 50);
  CHECK(hcd::metrics::random_guess(100, 0.3, 9) ==
        hcd::metrics::random_guess(100, 0.3, 9));
  CHECK(code_of([] { hcd::metrics::random_guess(3, 1.5, 0); }) ==
        ErrorCode::kInvalidArgument);

  // Independent guesses at the gold rate score F1 close to that rate.
  const double p = 0.3;
  const auto gold = hcd::metrics::random_guess(100000, p, 17);
  const auto guess = hcd::metrics::random_guess(100000, p, 18);
  CHECK(std::abs(hcd::metrics::binary_metrics(guess, gold).f1 - p) <= 0.02);
}

TEST_CASE("run aggregation") {
  auto report = [](double f1) {
    hcd::metrics::EvalReport r;
    r.labels = {"x"};
    hcd::metrics::BinaryMetrics m;
    m.f1 = f1;
    r.per_label = {m};
    r.weighted_f1 = f1;
    return r;
  };
  const auto same =
      hcd::metrics::aggregate_runs({report(0.5), report(0.5), report(0.5)});
  CHECK(same.f1[0].mean == 0.5);
  CHECK(same.f1[0].stddev == 0.0);
  const auto two = hcd::metrics::aggregate_runs({report(0.4), report(0.6)});
  CHECK(two.f1[0].mean == doctest::Approx(0.5));
  CHECK(two.f1[0].stddev == doctest::Approx(0.1));
  const auto swapped = hcd::metrics::aggregate_runs({report(0.6), report(0.4)});
  CHECK(swapped.f1[0].mean == two.f1[0].mean);
  CHECK(swapped.f1[0].stddev == two.f1[0].stddev);
  CHECK(two.runs == 2);
  CHECK(code_of([] { hcd::metrics::aggregate_runs({}); }) ==
        ErrorCode::kEmptyList);
  CHECK(code_of([] {
          std::vector<double> empty;
          hcd::metrics::summarize(empty);
        }) == ErrorCode::kEmptyList);
}

TEST_CASE("protocol on a toy corpus") {
  hcd::dataset::ToyConfig cfg;
  cfg.positives = {20, 20, 20, 20};
  cfg.negatives = 20;
  const auto train = hcd::dataset::generate_toy(cfg, 1);
  cfg.split = hcd::dataset::Split::kTest;
  cfg.positives = {5, 5, 5, 5};
  cfg.negatives = 5;
  cfg.id_prefix = "t";
  const auto test = hcd::dataset::generate_toy(cfg, 2);
  hcd::baseline::ProtocolOptions opt;
  opt.runs = 2;
  const auto r = hcd::baseline::run_protocol(train, test, opt);
  CHECK(r.seeds.size() == 2);
  CHECK(r.model_runs.size() == 2);
  CHECK(r.random_runs.size() == 2);
  CHECK(r.train_size == train.size());
  CHECK(r.test_size == test.size());
  CHECK(hcd::baseline::protocol_report_to_json(r) ==
        hcd::baseline::protocol_report_to_json(
            hcd::baseline::run_protocol(train, test, opt)));
  CHECK(!hcd::baseline::protocol_report_to_table(r).empty());
}
