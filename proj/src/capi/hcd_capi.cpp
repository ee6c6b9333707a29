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

#include "hcd/hcd.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include "core/alignment.hpp"
#include "core/amr.hpp"
#include "core/baseline.hpp"
#include "core/dataset.hpp"
#include "core/error.hpp"
#include "core/json_io.hpp"
#include "core/pipeline.hpp"
#include "core/relation_matrix.hpp"
#include "core/tdgl.hpp"
#include "core/text.hpp"
#include "json.hpp"

struct hcd_graph {
  hcd::amr::Graph graph;
};
struct hcd_alignment {
  hcd::align::TokenAlignment alignment;
};
struct hcd_similarity {
  hcd::tdgl::SimilarityProvider provider;
};
struct hcd_linked {
  hcd::LinkedDocument doc;
};
struct hcd_vocab {
  hcd::relmat::RelationVocab vocab;
};
struct hcd_matrix {
  hcd::relmat::RelationMatrix matrix;
  std::size_t vocab_size = 0;
};
struct hcd_dataset {
  std::vector<hcd::dataset::Record> records;
};
struct hcd_model {
  hcd::baseline::Model model;
};

namespace {

using hcd::Error;
using hcd::ErrorCode;

thread_local std::string last_error;

hcd_status fail(ErrorCode code, const std::string& message) {
  last_error = message;
  return static_cast<hcd_status>(code);
}

// Runs body, translating exceptions into status codes.
template <typename F>
hcd_status guarded(F&& body) {
  try {
    body();
    return HCD_OK;
  } catch (const Error& e) {
    return fail(e.code(), e.what());
  } catch (const std::bad_alloc&) {
    return fail(ErrorCode::kInternal, "Internal: out of memory");
  } catch (const std::exception& e) {
    return fail(ErrorCode::kInternal, std::string("Internal: ") + e.what());
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::kInvalidArgument, what);
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

std::string read_file(const char* path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIoError, std::string("cannot open '") + path + "'");
  }
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const char* path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  out.close();
  if (!out) {
    throw Error(ErrorCode::kIoError,
                std::string("cannot write '") + path + "'");
  }
}

nlohmann::json options_object(const char* text) {
  if (text == nullptr || *text == '\0') return nlohmann::json::object();
  nlohmann::json obj;
  try {
    obj = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kConfigError, e.what());
  }
  if (!obj.is_object()) {
    throw Error(ErrorCode::kConfigError, "options must be a JSON object");
  }
  return obj;
}

hcd::baseline::ProtocolOptions protocol_options(const char* text,
                                                bool allow_protocol) {
  const nlohmann::json obj = options_object(text);
  hcd::baseline::ProtocolOptions o;
  try {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      const std::string& k = it.key();
      if (k == "epochs") {
        o.train.epochs = it->get<std::size_t>();
      } else if (k == "learning_rate") {
        o.train.learning_rate = it->get<double>();
      } else if (k == "l2") {
        o.train.l2 = it->get<double>();
      } else if (k == "seed") {
        o.train.seed = it->get<std::uint64_t>();
      } else if (allow_protocol && k == "runs") {
        o.runs = it->get<std::size_t>();
      } else if (allow_protocol && k == "base_seed") {
        o.base_seed = it->get<std::uint64_t>();
      } else {
        throw Error(ErrorCode::kConfigError, "unknown option '" + k + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kConfigError, e.what());
  }
  if (o.train.epochs == 0 || !(o.train.learning_rate > 0.0) ||
      !(o.train.l2 >= 0.0) || o.runs == 0) {
    throw Error(ErrorCode::kConfigError,
                "epochs, runs and learning_rate must be positive and l2 "
                "non-negative");
  }
  return o;
}

bool table_format(const char* format) {
  const std::string f = format == nullptr ? "json" : format;
  if (f == "json") return false;
  if (f == "table") return true;
  throw Error(ErrorCode::kInvalidArgument,
              "format must be \"json\" or \"table\"");
}

std::vector<hcd::dataset::Record> split_of(
    const std::vector<hcd::dataset::Record>& records,
    hcd::dataset::Split split) {
  std::vector<hcd::dataset::Record> out;
  for (const auto& r : records) {
    if (r.split == split) out.push_back(r);
  }
  return out;
}

template <typename T>
std::string json_array(const std::vector<T>& values) {
  return nlohmann::json(values).dump();
}

}  // namespace

extern "C" {

const char* hcd_status_name(int status) {
  if (status < 0 || status > HCD_INTERNAL) return "Unknown";
  return hcd::error_code_name(static_cast<ErrorCode>(status)).data();
}

const char* hcd_last_error(void) { return last_error.c_str(); }

void hcd_string_free(char* s) { std::free(s); }

// ---- Graphs

hcd_status hcd_graph_parse(const char* penman, hcd_graph** out) {
  return guarded([&] {
    require(penman != nullptr && out != nullptr, "null argument");
    auto* g = new hcd_graph{hcd::amr::parse_penman(penman)};
    *out = g;
  });
}

hcd_status hcd_graph_serialize(const hcd_graph* g, char** out) {
  return guarded([&] {
    require(g != nullptr && out != nullptr, "null argument");
    *out = dup(hcd::amr::serialize_penman(g->graph));
  });
}

hcd_status hcd_graph_validate(const hcd_graph* g, char** out) {
  return guarded([&] {
    require(g != nullptr && out != nullptr, "null argument");
    *out = dup(hcd::text::join(hcd::amr::validate(g->graph), "\n"));
  });
}

hcd_status hcd_graph_to_json(const hcd_graph* g, char** out) {
  return guarded([&] {
    require(g != nullptr && out != nullptr, "null argument");
    *out = dup(hcd::graph_to_json(g->graph));
  });
}

size_t hcd_graph_node_count(const hcd_graph* g) {
  return g == nullptr ? 0 : g->graph.nodes.size();
}

size_t hcd_graph_edge_count(const hcd_graph* g) {
  return g == nullptr ? 0 : g->graph.edges.size();
}

size_t hcd_graph_attribute_count(const hcd_graph* g) {
  return g == nullptr ? 0 : g->graph.attributes.size();
}

void hcd_graph_free(hcd_graph* g) { delete g; }

// ---- Alignments

hcd_status hcd_tokenize(const char* text, char** out_json) {
  return guarded([&] {
    require(text != nullptr && out_json != nullptr, "null argument");
    *out_json = dup(json_array(hcd::text::tokenize_words(text)));
  });
}

hcd_status hcd_alignment_parse(const char* spec, const hcd_graph* g,
                               size_t token_count, hcd_alignment** out) {
  return guarded([&] {
    require(spec != nullptr && g != nullptr && out != nullptr,
            "null argument");
    *out = new hcd_alignment{
        hcd::align::parse_alignment(spec, g->graph, token_count)};
  });
}

hcd_status hcd_alignment_serialize(const hcd_alignment* a, char** out) {
  return guarded([&] {
    require(a != nullptr && out != nullptr, "null argument");
    *out = dup(hcd::align::serialize_alignment(a->alignment));
  });
}

hcd_status hcd_alignment_concepts_for_token(const hcd_alignment* a,
                                            size_t index, char** out_json) {
  return guarded([&] {
    require(a != nullptr && out_json != nullptr, "null argument");
    *out_json =
        dup(json_array(hcd::align::concepts_for_token(a->alignment, index)));
  });
}

hcd_status hcd_alignment_tokens_for_concept(const hcd_alignment* a,
                                            const hcd_graph* g,
                                            const char* variable,
                                            char** out_json) {
  return guarded([&] {
    require(a != nullptr && g != nullptr && variable != nullptr &&
                out_json != nullptr,
            "null argument");
    *out_json = dup(json_array(
        hcd::align::tokens_for_concept(a->alignment, g->graph, variable)));
  });
}

void hcd_alignment_free(hcd_alignment* a) { delete a; }

// ---- Linking

hcd_status hcd_similarity_create(const char* kind, const char* embedding_path,
                                 hcd_similarity** out) {
  return guarded([&] {
    require(kind != nullptr && out != nullptr, "null argument");
    const auto k = hcd::tdgl::parse_similarity_kind(kind);
    if (k == hcd::tdgl::SimilarityKind::kEmbedding) {
      if (embedding_path == nullptr) {
        throw Error(ErrorCode::kConfigError,
                    "embedding similarity needs an embedding table");
      }
      *out = new hcd_similarity{
          hcd::tdgl::SimilarityProvider::with_embeddings_file(embedding_path)};
      return;
    }
    if (embedding_path != nullptr) {
      throw Error(ErrorCode::kConfigError,
                  "an embedding table is only used with embedding "
                  "similarity");
    }
    *out = new hcd_similarity{hcd::tdgl::SimilarityProvider(k)};
  });
}

hcd_status hcd_similarity_score(const hcd_similarity* s, const char* a,
                                const char* b, double* out) {
  return guarded([&] {
    require(s != nullptr && a != nullptr && b != nullptr && out != nullptr,
            "null argument");
    *out = s->provider.score(a, b);
  });
}

void hcd_similarity_free(hcd_similarity* s) { delete s; }

hcd_status hcd_link(const hcd_graph* g1, const hcd_alignment* a1,
                    const char* text1, const hcd_graph* g2,
                    const hcd_alignment* a2, const char* text2,
                    const char* topic, const hcd_similarity* sim,
                    double min_score, hcd_linked** out) {
  return guarded([&] {
    require(g1 != nullptr && a1 != nullptr && text1 != nullptr &&
                g2 != nullptr && a2 != nullptr && text2 != nullptr &&
                topic != nullptr && sim != nullptr && out != nullptr,
            "null argument");
    hcd::LinkedDocument doc;
    doc.tokens1 = hcd::text::tokenize_words(text1);
    doc.tokens2 = hcd::text::tokenize_words(text2);
    doc.alignment1 = a1->alignment;
    doc.alignment2 = a2->alignment;
    hcd::tdgl::LinkOptions options;
    options.min_score = min_score;
    doc.linked = hcd::tdgl::link_graphs(
        {&g1->graph, &doc.alignment1, &doc.tokens1},
        {&g2->graph, &doc.alignment2, &doc.tokens2}, topic, sim->provider,
        options);
    *out = new hcd_linked{std::move(doc)};
  });
}

hcd_status hcd_linked_to_json(const hcd_linked* l, char** out) {
  return guarded([&] {
    require(l != nullptr && out != nullptr, "null argument");
    *out = dup(hcd::linked_to_json(l->doc));
  });
}

hcd_status hcd_linked_to_penman(const hcd_linked* l, char** out) {
  return guarded([&] {
    require(l != nullptr && out != nullptr, "null argument");
    *out = dup(hcd::tdgl::to_penman(l->doc.linked));
  });
}

hcd_status hcd_linked_from_json(const char* json, hcd_linked** out) {
  return guarded([&] {
    require(json != nullptr && out != nullptr, "null argument");
    *out = new hcd_linked{hcd::linked_from_json(json)};
  });
}

size_t hcd_linked_node_count(const hcd_linked* l) {
  return l == nullptr ? 0 : l->doc.linked.nodes.size();
}

size_t hcd_linked_edge_count(const hcd_linked* l) {
  return l == nullptr ? 0 : l->doc.linked.edges.size();
}

void hcd_linked_free(hcd_linked* l) { delete l; }

// ---- Vocabulary and matrices

hcd_status hcd_vocab_build(const hcd_graph* const* graphs, size_t n,
                           hcd_vocab** out) {
  return guarded([&] {
    require(out != nullptr && (graphs != nullptr || n == 0), "null argument");
    std::vector<hcd::amr::Graph> gs;
    gs.reserve(n);
    for (size_t i = 0; i < n; ++i) {
      require(graphs[i] != nullptr, "null graph");
      gs.push_back(graphs[i]->graph);
    }
    *out = new hcd_vocab{hcd::relmat::build_vocab(gs)};
  });
}

hcd_status hcd_vocab_from_dataset(const hcd_dataset* d, hcd_vocab** out) {
  return guarded([&] {
    require(d != nullptr && out != nullptr, "null argument");
    *out = new hcd_vocab{hcd::pipeline::vocab_from_train(d->records)};
  });
}

hcd_status hcd_vocab_load(const char* path, hcd_vocab** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    std::istringstream in(read_file(path));
    *out = new hcd_vocab{hcd::relmat::RelationVocab::read(in)};
  });
}

hcd_status hcd_vocab_save(const hcd_vocab* v, const char* path) {
  return guarded([&] {
    require(v != nullptr && path != nullptr, "null argument");
    std::ostringstream s;
    v->vocab.write(s);
    write_file(path, s.str());
  });
}

size_t hcd_vocab_size(const hcd_vocab* v) {
  return v == nullptr ? 0 : v->vocab.size();
}

uint32_t hcd_vocab_lookup(const hcd_vocab* v, const char* label) {
  if (v == nullptr || label == nullptr) {
    return hcd::relmat::RelationVocab::kUnk;
  }
  return v->vocab.lookup(label);
}

void hcd_vocab_free(hcd_vocab* v) { delete v; }

hcd_status hcd_matrix_build(const hcd_linked* l, const size_t* subtokens1,
                            size_t n1, const size_t* subtokens2, size_t n2,
                            const hcd_vocab* v, hcd_matrix** out) {
  return guarded([&] {
    require(l != nullptr && v != nullptr && out != nullptr, "null argument");
    auto counts = [](const size_t* given, size_t n,
                     const std::vector<std::string>& words, int side) {
      if (given == nullptr) return std::vector<std::size_t>(words.size(), 1);
      if (n != words.size()) {
        throw Error(ErrorCode::kLayoutMismatch,
                    "subtoken counts for advice " + std::to_string(side) +
                        " list " + std::to_string(n) + " words, advice has " +
                        std::to_string(words.size()));
      }
      return std::vector<std::size_t>(given, given + n);
    };
    const auto c1 = counts(subtokens1, n1, l->doc.tokens1, 1);
    const auto c2 = counts(subtokens2, n2, l->doc.tokens2, 2);
    const auto layout = hcd::relmat::SubtokenMap::from_counts(c1, c2);
    *out = new hcd_matrix{
        hcd::relmat::build_matrix(l->doc.linked, l->doc.alignment1,
                                  l->doc.alignment2, layout, v->vocab),
        v->vocab.size()};
  });
}

hcd_status hcd_matrix_serialize(const hcd_matrix* m, char** out) {
  return guarded([&] {
    require(m != nullptr && out != nullptr, "null argument");
    std::ostringstream s;
    hcd::relmat::write_matrix(s, m->matrix, m->vocab_size);
    *out = dup(s.str());
  });
}

hcd_status hcd_matrix_read(const char* tsv, hcd_matrix** out) {
  return guarded([&] {
    require(tsv != nullptr && out != nullptr, "null argument");
    std::istringstream in(tsv);
    auto file = hcd::relmat::read_matrix(in);
    *out = new hcd_matrix{std::move(file.matrix), file.vocab_size};
  });
}

size_t hcd_matrix_size(const hcd_matrix* m) {
  return m == nullptr ? 0 : m->matrix.size();
}

hcd_status hcd_matrix_cell(const hcd_matrix* m, size_t i, size_t j,
                           uint32_t* out) {
  return guarded([&] {
    require(m != nullptr && out != nullptr, "null argument");
    if (i >= m->matrix.size() || j >= m->matrix.size()) {
      throw Error(ErrorCode::kIndexOutOfRange,
                  "cell (" + std::to_string(i) + ", " + std::to_string(j) +
                      ") outside a matrix of size " +
                      std::to_string(m->matrix.size()));
    }
    *out = m->matrix.at(i, j);
  });
}

void hcd_matrix_free(hcd_matrix* m) { delete m; }

// ---- Datasets

hcd_status hcd_dataset_load(const char* path, hcd_dataset** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    *out = new hcd_dataset{hcd::dataset::load_records_file(path)};
  });
}

hcd_status hcd_dataset_generate_toy(const char* config_json, uint64_t seed,
                                    hcd_dataset** out) {
  return guarded([&] {
    require(config_json != nullptr && out != nullptr, "null argument");
    const auto config = hcd::dataset::parse_toy_config(config_json);
    *out = new hcd_dataset{hcd::dataset::generate_toy(config, seed)};
  });
}

size_t hcd_dataset_size(const hcd_dataset* d) {
  return d == nullptr ? 0 : d->records.size();
}

hcd_status hcd_dataset_record_json(const hcd_dataset* d, size_t index,
                                   char** out) {
  return guarded([&] {
    require(d != nullptr && out != nullptr, "null argument");
    if (index >= d->records.size()) {
      throw Error(ErrorCode::kIndexOutOfRange,
                  "record " + std::to_string(index) + " of " +
                      std::to_string(d->records.size()));
    }
    *out = dup(hcd::dataset::record_to_json(d->records[index]));
  });
}

hcd_status hcd_dataset_stats(const hcd_dataset* d, const char* format,
                             char** out) {
  return guarded([&] {
    require(d != nullptr && out != nullptr, "null argument");
    const bool table = table_format(format);
    const auto stats = hcd::dataset::dataset_stats(d->records);
    *out = dup(table ? hcd::dataset::stats_to_table(stats)
                     : hcd::dataset::stats_to_json(stats));
  });
}

hcd_status hcd_dataset_write_jsonl(const hcd_dataset* d, const char* path) {
  return guarded([&] {
    require(d != nullptr && path != nullptr, "null argument");
    std::ostringstream s;
    hcd::dataset::write_records(s, d->records);
    write_file(path, s.str());
  });
}

hcd_status hcd_dataset_append(hcd_dataset* dst, const hcd_dataset* src) {
  return guarded([&] {
    require(dst != nullptr && src != nullptr, "null argument");
    if (dst == src) {
      const auto copy = src->records;
      dst->records.insert(dst->records.end(), copy.begin(), copy.end());
      return;
    }
    dst->records.insert(dst->records.end(), src->records.begin(),
                        src->records.end());
  });
}

void hcd_dataset_free(hcd_dataset* d) { delete d; }

// ---- Baseline

hcd_status hcd_baseline_train(const hcd_dataset* d, const char* options_json,
                              hcd_model** out) {
  return guarded([&] {
    require(d != nullptr && out != nullptr, "null argument");
    const auto options = protocol_options(options_json, false);
    const auto train = split_of(d->records, hcd::dataset::Split::kTrain);
    *out = new hcd_model{hcd::baseline::train_model(train, options.train)};
  });
}

hcd_status hcd_model_save(const hcd_model* m, const char* path) {
  return guarded([&] {
    require(m != nullptr && path != nullptr, "null argument");
    write_file(path, hcd::baseline::model_to_json(m->model));
  });
}

hcd_status hcd_model_load(const char* path, hcd_model** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    *out = new hcd_model{hcd::baseline::model_from_json(read_file(path))};
  });
}

hcd_status hcd_model_evaluate(const hcd_model* m, const hcd_dataset* d,
                              const char* format, char** out) {
  return guarded([&] {
    require(m != nullptr && d != nullptr && out != nullptr, "null argument");
    const bool table = table_format(format);
    const auto test = split_of(d->records, hcd::dataset::Split::kTest);
    if (test.empty()) {
      throw Error(ErrorCode::kEmptyList, "dataset has no test records");
    }
    const auto report = hcd::metrics::evaluate(
        hcd::baseline::predict(m->model, test),
        hcd::baseline::gold_labels(test), hcd::baseline::label_names());
    *out = dup(table ? hcd::baseline::eval_report_to_table(report)
                     : hcd::baseline::eval_report_to_json(report));
  });
}

void hcd_model_free(hcd_model* m) { delete m; }

hcd_status hcd_baseline_protocol(const hcd_dataset* d,
                                 const char* options_json, const char* format,
                                 char** out) {
  return guarded([&] {
    require(d != nullptr && out != nullptr, "null argument");
    const bool table = table_format(format);
    const auto options = protocol_options(options_json, true);
    const auto report = hcd::baseline::run_protocol(
        split_of(d->records, hcd::dataset::Split::kTrain),
        split_of(d->records, hcd::dataset::Split::kTest), options);
    *out = dup(table ? hcd::baseline::protocol_report_to_table(report)
                     : hcd::baseline::protocol_report_to_json(report));
  });
}

// ---- Pipeline

hcd_status hcd_pipeline_run(const hcd_dataset* d, const char* config_json,
                            char** report_json) {
  return guarded([&] {
    require(d != nullptr && config_json != nullptr && report_json != nullptr,
            "null argument");
    const auto config = hcd::pipeline::parse_config(config_json);
    const auto report = hcd::pipeline::run_pipeline(d->records, config);
    *report_json = dup(hcd::pipeline::report_to_json(report, true));
  });
}

}  // extern "C"
