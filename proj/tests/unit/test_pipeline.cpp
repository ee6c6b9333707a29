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


#include <unistd.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "core/dataset.hpp"
#include "core/error.hpp"
#include "core/json_io.hpp"
#include "core/pipeline.hpp"
#include "core/relation_matrix.hpp"
#include "doctest.h"
#include "json.hpp"
#include "support/running_example.hpp"

namespace {

namespace fs = std::filesystem;
using hcd::Error;
using hcd::ErrorCode;
using hcd::dataset::Record;
using hcd::pipeline::PipelineConfig;

class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = fs::temp_directory_path() /
            ("hcd_pipeline_test_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  fs::path operator/(const std::string& s) const { return path_ / s; }

 private:
  fs::path path_;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::map<std::string, std::string> tree(const fs::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) {
      out[fs::relative(e.path(), root).string()] = slurp(e.path());
    }
  }
  return out;
}

std::vector<Record> toy(std::size_t per_label, std::uint64_t seed) {
  hcd::dataset::ToyConfig cfg;
  cfg.positives = {per_label, per_label, per_label, per_label};
  cfg.negatives = per_label;
  return hcd::dataset::generate_toy(cfg, seed);
}

PipelineConfig config(const fs::path& out, std::size_t parallelism) {
  PipelineConfig c;
  c.build_vocab_from_train = true;
  c.output_dir = out.string();
  c.parallelism = parallelism;
  return c;
}

Record example() { return hcd::dataset::parse_record(hcd::testing::kExampleRecord, 1); }

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kOk;
}

}  // namespace

TEST_CASE("output tree does not depend on parallelism") {
  TempDir dir;
  auto rs = toy(6, 21);
  rs[3].amr1 = "(a / b";  // one faulty record among the good ones
  const auto serial =
      hcd::pipeline::run_pipeline(rs, config(dir / "p1", 1));
  const auto parallel =
      hcd::pipeline::run_pipeline(rs, config(dir / "p4", 4));
  CHECK(serial.same_outcome(parallel));
  CHECK(tree(dir / "p1") == tree(dir / "p4"));
  CHECK(serial.input_count == rs.size());
  CHECK(serial.processed == rs.size() - 1);
  CHECK(serial.skipped == 1);
  CHECK(serial.errored == 0);
  CHECK(serial.error_kinds.at("UnbalancedParens") == 1);
  CHECK(serial.records[3].outcome == hcd::pipeline::Outcome::kSkipped);
  CHECK(serial.records[3].id == rs[3].id);
  // Three files per processed record plus vocab and report.
  CHECK(tree(dir / "p1").size() == 3 * serial.processed + 2);
  CHECK(slurp(dir / "p1" / "report.json") ==
        hcd::pipeline::report_to_json(serial, false));
}

TEST_CASE("running example yields one conflict edge") {
  TempDir dir;
  const auto report =
      hcd::pipeline::run_pipeline({example()}, config(dir / "out", 1));
  CHECK(report.processed == 1);
  const auto doc = nlohmann::json::parse(
      slurp(dir / "out" / "records" / "alcohol.linked.json"));
  int conflicts = 0;
  for (const auto& e : doc.at("edges")) {
    if (e.at("relation") == ":conflict") ++conflicts;
  }
  CHECK(conflicts == 1);
  CHECK(doc.at("conflict_edge").at("source") == "a");
  CHECK(doc.at("conflict_edge").at("target") == "a_2");
  const std::string tokens =
      slurp(dir / "out" / "records" / "alcohol.tokens.tsv");
  CHECK(tokens ==
        "0\t0\t-\t[CLS]\n1\t1\t0\tConsume\n2\t1\t1\talcohol\n"
        "3\t1\t2\tin\n4\t1\t3\tmoderation\n5\t0\t-\t[SEP]\n"
        "6\t2\t0\tDo\n7\t2\t1\tnot\n8\t2\t2\tdrink\n"
        "9\t2\t3\talcoholic\n10\t2\t4\tbeverages\n11\t0\t-\t[SEP]\n");
}

TEST_CASE("matrix file can be rebuilt from the linked document") {
  TempDir dir;
  const auto rs = toy(3, 8);
  const PipelineConfig cfg = config(dir / "out", 2);
  const auto report = hcd::pipeline::run_pipeline(rs, cfg);
  REQUIRE(report.processed == rs.size());
  std::ifstream vin(dir / "out" / "vocab.txt");
  const auto vocab = hcd::relmat::RelationVocab::read(vin);
  for (const Record& r : rs) {
    const fs::path base = dir / "out" / "records" / r.id;
    const auto doc = hcd::linked_from_json(slurp(base.string() + ".linked.json"));
    const std::vector<std::size_t> c1(doc.tokens1.size(), 1);
    const std::vector<std::size_t> c2(doc.tokens2.size(), 1);
    const auto m = hcd::relmat::build_matrix(
        doc.linked, doc.alignment1, doc.alignment2,
        hcd::relmat::SubtokenMap::from_counts(c1, c2), vocab);
    CHECK(hcd::relmat::serialize_matrix(m, vocab) ==
          slurp(base.string() + ".matrix.tsv"));
  }
}

TEST_CASE("record subtoken counts drive the layout") {
  TempDir dir;
  Record r = example();
  r.subtokens1 = std::vector<std::size_t>{1, 3, 1, 2};
  auto report = hcd::pipeline::run_pipeline({r}, config(dir / "a", 1));
  CHECK(report.processed == 1);
  std::istringstream in(slurp(dir / "a" / "records" / "alcohol.matrix.tsv"));
  CHECK(hcd::relmat::read_matrix(in).matrix.size() == 1 + 7 + 1 + 5 + 1);

  r.subtokens1 = std::vector<std::size_t>{1, 1};
  report = hcd::pipeline::run_pipeline({r}, config(dir / "b", 1));
  CHECK(report.skipped == 1);
  CHECK(report.records[0].error_kind == "LayoutMismatch");
}

TEST_CASE("missing structure and duplicate ids are skipped") {
  TempDir dir;
  Record bare = example();
  bare.id = "bare";
  bare.amr2.reset();
  const auto report = hcd::pipeline::run_pipeline({example(), bare, example()},
                                                  config(dir / "out", 2));
  CHECK(report.processed == 1);
  CHECK(report.skipped == 2);
  CHECK(report.records[1].error_kind == "MissingStructure");
  CHECK(report.records[2].error_kind == "InvalidArgument");
}

TEST_CASE("fail fast reports the first failing record") {
  TempDir dir;
  auto rs = toy(4, 2);
  rs[5].amr2 = "(x / y :ARG0 z)";
  rs[9].amr1 = "(a / b";
  PipelineConfig cfg = config(dir / "out", 4);
  cfg.fail_fast = true;
  try {
    hcd::pipeline::run_pipeline(rs, cfg);
    FAIL("expected a record error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDanglingVariableReference);
    CHECK(std::string(e.what()).find(rs[5].id) != std::string::npos);
  }
}

TEST_CASE("configuration errors") {
  TempDir dir;
  const std::vector<Record> rs = {example()};
  auto bad = [&](auto edit) {
    PipelineConfig c = config(dir / "out", 1);
    edit(c);
    return code_of([&] { hcd::pipeline::run_pipeline(rs, c); });
  };
  CHECK(bad([](PipelineConfig& c) { c.build_vocab_from_train = false; }) ==
        ErrorCode::kConfigError);
  CHECK(bad([](PipelineConfig& c) { c.vocab_path = "v.txt"; }) ==
        ErrorCode::kConfigError);
  CHECK(bad([](PipelineConfig& c) { c.output_dir.clear(); }) ==
        ErrorCode::kConfigError);
  CHECK(bad([](PipelineConfig& c) { c.parallelism = 0; }) ==
        ErrorCode::kConfigError);
  CHECK(bad([](PipelineConfig& c) { c.min_score = 1.5; }) ==
        ErrorCode::kConfigError);
  CHECK(bad([](PipelineConfig& c) {
          c.similarity = hcd::tdgl::SimilarityKind::kEmbedding;
        }) == ErrorCode::kConfigError);
  CHECK(bad([](PipelineConfig& c) { c.sep_marker.clear(); }) ==
        ErrorCode::kConfigError);
  CHECK(bad([&](PipelineConfig& c) {
          c.build_vocab_from_train = false;
          c.vocab_path = (dir / "missing.txt").string();
        }) == ErrorCode::kConfigError);
}

TEST_CASE("config json") {
  const auto c = hcd::pipeline::parse_config(
      R"({"similarity":"exact","parallelism":3,"output_dir":"o",)"
      R"("build_vocab_from_train":true,"fail_fast":true,"min_score":0.25})");
  CHECK(c.similarity == hcd::tdgl::SimilarityKind::kExact);
  CHECK(c.parallelism == 3);
  CHECK(c.fail_fast);
  CHECK(c.min_score == 0.25);
  CHECK(c.cls_marker == "[CLS]");
  CHECK(code_of([] { hcd::pipeline::parse_config(R"({"paralelism":3})"); }) ==
        ErrorCode::kConfigError);
  CHECK(code_of([] { hcd::pipeline::parse_config(R"({"parallelism":"x"})"); }) ==
        ErrorCode::kConfigError);
}

TEST_CASE("report json") {
  hcd::pipeline::PipelineReport r;
  r.input_count = 2;
  r.processed = 1;
  r.skipped = 1;
  r.error_kinds["MissingStructure"] = 1;
  r.records = {{"a", hcd::pipeline::Outcome::kProcessed, "", ""},
               {"b", hcd::pipeline::Outcome::kSkipped, "MissingStructure",
                "no amr2"}};
  r.elapsed_seconds = 1.5;
  const auto j = nlohmann::json::parse(hcd::pipeline::report_to_json(r, true));
  CHECK(j.at("elapsed_seconds") == 1.5);
  CHECK(j.at("records").at(1).at("outcome") == "skipped");
  CHECK_FALSE(nlohmann::json::parse(hcd::pipeline::report_to_json(r, false))
                  .contains("elapsed_seconds"));
  auto other = r;
  other.elapsed_seconds = 9.0;
  CHECK(r.same_outcome(other));
  other.skipped = 0;
  CHECK_FALSE(r.same_outcome(other));
}

TEST_CASE("vocab from the train split only") {
  Record test_rec = example();
  test_rec.split = hcd::dataset::Split::kTest;
  test_rec.amr1 = "(q / quux :unique-role (z / zed))";
  Record broken = example();
  broken.amr2 = "(((";
  const auto v = hcd::pipeline::vocab_from_train({example(), test_rec, broken});
  CHECK(v.contains(":manner"));
  CHECK_FALSE(v.contains(":unique-role"));
}
