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

#include "core/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

#include "core/alignment.hpp"
#include "core/amr.hpp"
#include "core/error.hpp"
#include "core/json_io.hpp"
#include "core/text.hpp"
#include "json.hpp"

namespace hcd::pipeline {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

void validate_config(const PipelineConfig& c) {
  auto fail = [](const std::string& why) {
    throw Error(ErrorCode::kConfigError, why);
  };
  if (c.build_vocab_from_train == !c.vocab_path.empty()) {
    fail("configure exactly one vocabulary source (vocab path or build from "
         "train)");
  }
  if (c.output_dir.empty()) fail("output directory is required");
  if (c.parallelism == 0) fail("parallelism must be at least 1");
  if (c.similarity == tdgl::SimilarityKind::kEmbedding &&
      c.embedding_path.empty()) {
    fail("embedding similarity needs an embedding table");
  }
  if (c.similarity != tdgl::SimilarityKind::kEmbedding &&
      !c.embedding_path.empty()) {
    fail("an embedding table is only used with embedding similarity");
  }
  if (!(c.min_score >= 0.0 && c.min_score <= 1.0)) {
    fail("min_score must lie in [0, 1]");
  }
  if (c.cls_marker.empty() || c.sep_marker.empty()) {
    fail("special markers must be non-empty");
  }
}

PipelineConfig parse_config(std::string_view text, PipelineConfig c) {
  nlohmann::json obj;
  try {
    obj = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kConfigError, e.what());
  }
  if (!obj.is_object()) {
    throw Error(ErrorCode::kConfigError, "pipeline config must be an object");
  }
  try {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      const std::string& k = it.key();
      const auto& v = it.value();
      if (k == "similarity") {
        c.similarity = tdgl::parse_similarity_kind(v.get<std::string>());
      } else if (k == "embedding_path") {
        c.embedding_path = v.get<std::string>();
      } else if (k == "min_score") {
        c.min_score = v.get<double>();
      } else if (k == "vocab_path") {
        c.vocab_path = v.get<std::string>();
      } else if (k == "build_vocab_from_train") {
        c.build_vocab_from_train = v.get<bool>();
      } else if (k == "output_dir") {
        c.output_dir = v.get<std::string>();
      } else if (k == "parallelism") {
        c.parallelism = v.get<std::size_t>();
      } else if (k == "fail_fast") {
        c.fail_fast = v.get<bool>();
      } else if (k == "split_threshold") {
        c.split_threshold = v.get<std::size_t>();
      } else if (k == "cls_marker") {
        c.cls_marker = v.get<std::string>();
      } else if (k == "sep_marker") {
        c.sep_marker = v.get<std::string>();
      } else {
        throw Error(ErrorCode::kConfigError,
                    "unknown pipeline config field '" + k + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kConfigError, e.what());
  }
  return c;
}

bool PipelineReport::same_outcome(const PipelineReport& o) const {
  if (input_count != o.input_count || processed != o.processed ||
      skipped != o.skipped || errored != o.errored ||
      error_kinds != o.error_kinds || records.size() != o.records.size()) {
    return false;
  }
  for (std::size_t i = 0; i < records.size(); ++i) {
    const RecordOutcome& a = records[i];
    const RecordOutcome& b = o.records[i];
    if (a.id != b.id || a.outcome != b.outcome ||
        a.error_kind != b.error_kind || a.message != b.message) {
      return false;
    }
  }
  return true;
}

namespace {

std::string_view outcome_name(Outcome o) {
  switch (o) {
    case Outcome::kProcessed: return "processed";
    case Outcome::kSkipped: return "skipped";
    case Outcome::kErrored: return "errored";
  }
  return "unknown";
}

}  // namespace

std::string report_to_json(const PipelineReport& r, bool include_timing) {
  ordered_json obj;
  obj["input_count"] = r.input_count;
  obj["processed"] = r.processed;
  obj["skipped"] = r.skipped;
  obj["errored"] = r.errored;
  ordered_json kinds = ordered_json::object();
  for (const auto& [kind, n] : r.error_kinds) kinds[kind] = n;
  obj["error_kinds"] = std::move(kinds);
  ordered_json recs = ordered_json::array();
  for (const RecordOutcome& o : r.records) {
    ordered_json rec = {{"id", o.id},
                        {"outcome", std::string(outcome_name(o.outcome))}};
    if (!o.error_kind.empty()) {
      rec["error_kind"] = o.error_kind;
      rec["message"] = o.message;
    }
    recs.push_back(std::move(rec));
  }
  obj["records"] = std::move(recs);
  if (include_timing) obj["elapsed_seconds"] = r.elapsed_seconds;
  return obj.dump(2) + "\n";
}

namespace {

bool valid_id(std::string_view id) {
  if (id.empty() || id.front() == '.') return false;
  return std::all_of(id.begin(), id.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
           (c >= '0' && c <= '9') || c == '-' || c == '_' || c == '.';
  });
}

std::vector<std::size_t> subtoken_counts(
    const std::optional<std::vector<std::size_t>>& given,
    const std::vector<std::string>& words, std::size_t threshold, int side) {
  if (!given) return relmat::naive_subtoken_counts(words, threshold);
  if (given->size() != words.size()) {
    throw Error(ErrorCode::kLayoutMismatch,
                "subtokens" + std::to_string(side) + " lists " +
                    std::to_string(given->size()) + " words, advice has " +
                    std::to_string(words.size()));
  }
  return *given;
}

std::string tokens_tsv(const relmat::SubtokenMap& layout,
                       const std::vector<std::string>& words1,
                       const std::vector<std::string>& words2,
                       const PipelineConfig& config) {
  std::ostringstream out;
  out << layout.cls << "\t0\t-\t" << config.cls_marker << '\n';
  for (std::size_t w = 0; w < layout.groups.size(); ++w) {
    const bool first = w < words1.size();
    if (w == words1.size()) {
      out << layout.first_sep << "\t0\t-\t" << config.sep_marker << '\n';
    }
    const std::size_t local = first ? w : w - words1.size();
    const std::string& word = first ? words1[local] : words2[local];
    for (std::size_t p = layout.groups[w].begin; p < layout.groups[w].end;
         ++p) {
      out << p << '\t' << (first ? 1 : 2) << '\t' << local << '\t' << word
          << '\n';
    }
  }
  if (words1.size() == layout.groups.size()) {
    out << layout.first_sep << "\t0\t-\t" << config.sep_marker << '\n';
  }
  out << layout.final_sep << "\t0\t-\t" << config.sep_marker << '\n';
  return out.str();
}

}  // namespace

RecordArtifacts process_record(const dataset::Record& record,
                               const Context& ctx) {
  if (!valid_id(record.id)) {
    throw Error(ErrorCode::kInvalidArgument,
                "record id '" + record.id +
                    "' is not usable as a file name ([A-Za-z0-9._-], no "
                    "leading '.')");
  }
  if (!record.has_structure()) {
    throw Error(ErrorCode::kMissingStructure,
                "record needs amr1, amr2, align1 and align2");
  }
  const std::vector<std::string> words1 = text::tokenize_words(record.advice1);
  const std::vector<std::string> words2 = text::tokenize_words(record.advice2);
  const amr::Graph g1 = amr::parse_penman(*record.amr1);
  const amr::Graph g2 = amr::parse_penman(*record.amr2);
  LinkedDocument doc;
  doc.tokens1 = words1;
  doc.tokens2 = words2;
  doc.alignment1 = align::parse_alignment(*record.align1, g1, words1.size());
  doc.alignment2 = align::parse_alignment(*record.align2, g2, words2.size());

  tdgl::LinkOptions link_opts;
  link_opts.min_score = ctx.config->min_score;
  doc.linked = tdgl::link_graphs({&g1, &doc.alignment1, &words1},
                                 {&g2, &doc.alignment2, &words2}, record.topic,
                                 *ctx.similarity, link_opts);

  const std::vector<std::size_t> counts1 = subtoken_counts(
      record.subtokens1, words1, ctx.config->split_threshold, 1);
  const std::vector<std::size_t> counts2 = subtoken_counts(
      record.subtokens2, words2, ctx.config->split_threshold, 2);
  const relmat::SubtokenMap layout =
      relmat::SubtokenMap::from_counts(counts1, counts2);
  const relmat::RelationMatrix m = relmat::build_matrix(
      doc.linked, doc.alignment1, doc.alignment2, layout, *ctx.vocab);

  RecordArtifacts out;
  out.linked_json = linked_to_json(doc);
  out.matrix_tsv = relmat::serialize_matrix(m, *ctx.vocab);
  out.tokens_tsv = tokens_tsv(layout, words1, words2, *ctx.config);
  return out;
}

relmat::RelationVocab vocab_from_train(
    const std::vector<dataset::Record>& records) {
  std::vector<amr::Graph> graphs;
  for (const dataset::Record& r : records) {
    if (r.split != dataset::Split::kTrain) continue;
    for (const auto* amr : {&r.amr1, &r.amr2}) {
      if (!amr->has_value()) continue;
      try {
        graphs.push_back(amr::parse_penman(**amr));
      } catch (const Error&) {
        // Reported when the record itself is processed.
      }
    }
  }
  return relmat::build_vocab(graphs);
}

namespace {

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  out.close();
  if (!out) {
    throw Error(ErrorCode::kIoError, "cannot write '" + path.string() + "'");
  }
}

struct Slot {
  bool done = false;
  std::optional<Error> error;
  bool io_failure = false;
};

}  // namespace

PipelineReport run_pipeline(const std::vector<dataset::Record>& records,
                            const PipelineConfig& config) {
  const auto started = std::chrono::steady_clock::now();
  validate_config(config);

  tdgl::SimilarityProvider similarity(config.similarity);
  if (config.similarity == tdgl::SimilarityKind::kEmbedding) {
    similarity =
        tdgl::SimilarityProvider::with_embeddings_file(config.embedding_path);
  }
  relmat::RelationVocab vocab;
  if (config.build_vocab_from_train) {
    vocab = vocab_from_train(records);
  } else {
    std::ifstream in(config.vocab_path);
    if (!in) {
      throw Error(ErrorCode::kConfigError,
                  "cannot open vocabulary '" + config.vocab_path + "'");
    }
    vocab = relmat::RelationVocab::read(in);
  }

  const fs::path root(config.output_dir);
  const fs::path record_dir = root / "records";
  std::error_code ec;
  fs::create_directories(record_dir, ec);
  if (ec) {
    throw Error(ErrorCode::kIoError, "cannot create '" + record_dir.string() +
                                         "': " + ec.message());
  }
  {
    std::ostringstream v;
    vocab.write(v);
    write_file(root / "vocab.txt", v.str());
  }

  // Later duplicates of an id are faults of their own record.
  std::vector<std::optional<Error>> pre(records.size());
  {
    std::set<std::string> seen;
    for (std::size_t i = 0; i < records.size(); ++i) {
      if (!seen.insert(records[i].id).second) {
        pre[i] = Error(ErrorCode::kInvalidArgument,
                       "duplicate record id '" + records[i].id + "'");
      }
    }
  }

  const Context ctx{&similarity, &vocab, &config};
  std::vector<Slot> slots(records.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};

  auto worker = [&]() {
    while (!stop.load()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= records.size()) return;
      Slot& slot = slots[i];
      try {
        if (pre[i]) throw *pre[i];
        const RecordArtifacts a = process_record(records[i], ctx);
        try {
          const fs::path base = record_dir / records[i].id;
          write_file(base.string() + ".linked.json", a.linked_json);
          write_file(base.string() + ".matrix.tsv", a.matrix_tsv);
          write_file(base.string() + ".tokens.tsv", a.tokens_tsv);
        } catch (const Error& e) {
          slot.io_failure = true;
          throw;
        }
      } catch (const Error& e) {
        slot.error = e;
      } catch (const std::exception& e) {
        slot.error = Error(ErrorCode::kInternal, e.what());
      }
      slot.done = true;
      if (slot.error && config.fail_fast) stop.store(true);
    }
  };

  const std::size_t threads =
      std::min(config.parallelism, std::max<std::size_t>(records.size(), 1));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  if (config.fail_fast) {
    for (std::size_t i = 0; i < slots.size(); ++i) {
      if (slots[i].done && slots[i].error) {
        const Error& e = *slots[i].error;
        throw Error(e.code(), "record '" + records[i].id + "': " + e.what(),
                    e.offset());
      }
    }
  }

  PipelineReport report;
  report.input_count = records.size();
  for (std::size_t i = 0; i < slots.size(); ++i) {
    RecordOutcome o;
    o.id = records[i].id;
    if (!slots[i].error) {
      o.outcome = Outcome::kProcessed;
      ++report.processed;
    } else {
      o.outcome = slots[i].io_failure ? Outcome::kErrored : Outcome::kSkipped;
      o.error_kind = std::string(slots[i].error->kind());
      o.message = slots[i].error->what();
      ++(slots[i].io_failure ? report.errored : report.skipped);
      ++report.error_kinds[o.error_kind];
    }
    report.records.push_back(std::move(o));
  }
  write_file(root / "report.json", report_to_json(report, false));
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
          .count();
  return report;
}

}  // namespace hcd::pipeline
