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

// hcdgraph command-line front end. Everything goes through the C API.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hcd/hcd.h"
#include "json.hpp"

namespace {

using json = nlohmann::json;

// Failure of a library call; carries the status for the exit message.
struct CallError {
  hcd_status status;
  std::string message;
};

void check(hcd_status s) {
  if (s != HCD_OK) throw CallError{s, hcd_last_error()};
}

struct StringDeleter {
  void operator()(char* p) const { hcd_string_free(p); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

std::string take(char* p) { return OwnedString(p).get(); }

#define HCD_HANDLE(T)                                 \
  struct T##_deleter {                                \
    void operator()(T* p) const { T##_free(p); }      \
  };                                                  \
  using T##_ptr = std::unique_ptr<T, T##_deleter>;

HCD_HANDLE(hcd_graph)
HCD_HANDLE(hcd_alignment)
HCD_HANDLE(hcd_similarity)
HCD_HANDLE(hcd_linked)
HCD_HANDLE(hcd_vocab)
HCD_HANDLE(hcd_matrix)
HCD_HANDLE(hcd_dataset)
HCD_HANDLE(hcd_model)

#undef HCD_HANDLE

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream s;
    s << std::cin.rdbuf();
    return s.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CallError{HCD_IO_ERROR, "IoError: cannot open '" + path + "'"};
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  out.close();
  if (!out) {
    throw CallError{HCD_IO_ERROR, "IoError: cannot write '" + path + "'"};
  }
}

std::string with_newline(std::string s) {
  if (s.empty() || s.back() != '\n') s += '\n';
  return s;
}

// Graphs in a PENMAN file are separated by blank lines.
std::vector<std::string> split_graphs(const std::string& text) {
  std::vector<std::string> out;
  std::string current;
  std::istringstream in(text);
  std::string line;
  auto flush = [&] {
    if (current.find_first_not_of(" \t\r\n") != std::string::npos) {
      out.push_back(current);
    }
    current.clear();
  };
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      flush();
    } else {
      current += line;
      current += '\n';
    }
  }
  flush();
  return out;
}

hcd_dataset_ptr load_datasets(const std::vector<std::string>& paths) {
  hcd_dataset_ptr all;
  for (const std::string& path : paths) {
    hcd_dataset* d = nullptr;
    check(hcd_dataset_load(path.c_str(), &d));
    hcd_dataset_ptr owned(d);
    if (!all) {
      all = std::move(owned);
    } else {
      check(hcd_dataset_append(all.get(), owned.get()));
    }
  }
  return all;
}

json record_at(const hcd_dataset* d, const std::string& id) {
  const std::size_t n = hcd_dataset_size(d);
  for (std::size_t i = 0; i < n; ++i) {
    char* raw = nullptr;
    check(hcd_dataset_record_json(d, i, &raw));
    json rec = json::parse(take(raw));
    if (id.empty() || rec.at("id") == id) return rec;
  }
  throw CallError{HCD_INVALID_ARGUMENT,
                  id.empty() ? "InvalidArgument: dataset is empty"
                             : "InvalidArgument: no record with id '" + id +
                                   "'"};
}

std::string field(const json& rec, const char* name) {
  auto it = rec.find(name);
  if (it == rec.end() || !it->is_string()) {
    throw CallError{HCD_MISSING_STRUCTURE,
                    std::string("MissingStructure: record lacks '") + name +
                        "'"};
  }
  return it->get<std::string>();
}

std::size_t word_count(const std::string& text) {
  char* raw = nullptr;
  check(hcd_tokenize(text.c_str(), &raw));
  return json::parse(take(raw)).size();
}

struct LinkFlags {
  std::string similarity = "trigram";
  std::string embedding_path;
  double min_score = 0.0;

  void attach(CLI::App* app) {
    app->add_option("--similarity", similarity,
                    "Topic similarity: exact, trigram or embedding")
        ->capture_default_str();
    app->add_option("--embedding", embedding_path,
                    "Embedding table for --similarity embedding");
    app->add_option("--min-score", min_score,
                    "Lowest acceptable topic similarity")
        ->capture_default_str();
  }
};

struct LinkedRecord {
  hcd_linked_ptr linked;
  std::optional<std::vector<std::size_t>> sub1;
  std::optional<std::vector<std::size_t>> sub2;
};

LinkedRecord link_record(const json& rec, const LinkFlags& flags) {
  const std::string text1 = field(rec, "advice1");
  const std::string text2 = field(rec, "advice2");
  hcd_graph* g1 = nullptr;
  hcd_graph* g2 = nullptr;
  check(hcd_graph_parse(field(rec, "amr1").c_str(), &g1));
  hcd_graph_ptr owned1(g1);
  check(hcd_graph_parse(field(rec, "amr2").c_str(), &g2));
  hcd_graph_ptr owned2(g2);
  hcd_alignment* a1 = nullptr;
  hcd_alignment* a2 = nullptr;
  check(hcd_alignment_parse(field(rec, "align1").c_str(), g1,
                            word_count(text1), &a1));
  hcd_alignment_ptr owned_a1(a1);
  check(hcd_alignment_parse(field(rec, "align2").c_str(), g2,
                            word_count(text2), &a2));
  hcd_alignment_ptr owned_a2(a2);
  hcd_similarity* sim = nullptr;
  check(hcd_similarity_create(
      flags.similarity.c_str(),
      flags.embedding_path.empty() ? nullptr : flags.embedding_path.c_str(),
      &sim));
  hcd_similarity_ptr owned_sim(sim);
  hcd_linked* linked = nullptr;
  check(hcd_link(g1, a1, text1.c_str(), g2, a2, text2.c_str(),
                 field(rec, "topic").c_str(), sim, flags.min_score, &linked));
  LinkedRecord out;
  out.linked.reset(linked);
  if (rec.contains("subtokens1")) {
    out.sub1 = rec["subtokens1"].get<std::vector<std::size_t>>();
  }
  if (rec.contains("subtokens2")) {
    out.sub2 = rec["subtokens2"].get<std::vector<std::size_t>>();
  }
  return out;
}

hcd_vocab_ptr vocab_for(const std::string& vocab_path,
                        const hcd_dataset* dataset) {
  hcd_vocab* v = nullptr;
  if (!vocab_path.empty()) {
    check(hcd_vocab_load(vocab_path.c_str(), &v));
  } else {
    check(hcd_vocab_from_dataset(dataset, &v));
  }
  return hcd_vocab_ptr(v);
}

std::string training_options(std::size_t epochs, double lr, double l2,
                             std::uint64_t seed) {
  return json{{"epochs", epochs}, {"learning_rate", lr}, {"l2", l2},
              {"seed", seed}}
      .dump();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Health-advice conflict graphs: AMR parsing, topic-driven "
               "linking, relation matrices and a TF-IDF baseline."};
  app.require_subcommand(1);
  int exit_code = 0;

  // parse
  std::string parse_input = "-";
  std::string parse_format = "penman";
  auto* parse = app.add_subcommand("parse", "Parse PENMAN graphs");
  parse->add_option("input", parse_input,
                    "PENMAN file, graphs separated by blank lines")
      ->capture_default_str();
  parse->add_option("--format", parse_format, "penman, json or counts")
      ->check(CLI::IsMember({"penman", "json", "counts"}))
      ->capture_default_str();
  parse->callback([&] {
    const auto graphs = split_graphs(read_input(parse_input));
    if (graphs.empty()) {
      throw CallError{HCD_EMPTY_INPUT, "EmptyInput: no graph found"};
    }
    for (const std::string& text : graphs) {
      hcd_graph* g = nullptr;
      check(hcd_graph_parse(text.c_str(), &g));
      hcd_graph_ptr owned(g);
      char* raw = nullptr;
      if (parse_format == "counts") {
        std::printf("nodes=%zu edges=%zu attributes=%zu\n",
                    hcd_graph_node_count(g), hcd_graph_edge_count(g),
                    hcd_graph_attribute_count(g));
        continue;
      }
      check(parse_format == "json" ? hcd_graph_to_json(g, &raw)
                                   : hcd_graph_serialize(g, &raw));
      std::cout << with_newline(take(raw));
    }
  });

  // align-check
  std::string ac_amr, ac_text, ac_align;
  auto* align_check = app.add_subcommand(
      "align-check", "Check an alignment and list the concepts of each word");
  align_check->add_option("--amr", ac_amr, "PENMAN file")->required();
  align_check->add_option("--text", ac_text, "Advice text")->required();
  align_check->add_option("--align", ac_align, "Spans like \"0-1|x 2-3|y\"")
      ->required();
  align_check->callback([&] {
    hcd_graph* g = nullptr;
    check(hcd_graph_parse(read_input(ac_amr).c_str(), &g));
    hcd_graph_ptr owned(g);
    char* raw = nullptr;
    check(hcd_tokenize(ac_text.c_str(), &raw));
    const json words = json::parse(take(raw));
    hcd_alignment* a = nullptr;
    check(hcd_alignment_parse(ac_align.c_str(), g, words.size(), &a));
    hcd_alignment_ptr owned_a(a);
    for (std::size_t i = 0; i < words.size(); ++i) {
      check(hcd_alignment_concepts_for_token(a, i, &raw));
      const json concepts = json::parse(take(raw));
      std::string joined;
      for (const auto& c : concepts) {
        if (!joined.empty()) joined += ',';
        joined += c.get<std::string>();
      }
      std::printf("%zu\t%s\t%s\n", i, words[i].get<std::string>().c_str(),
                  joined.empty() ? "-" : joined.c_str());
    }
  });

  // link
  std::vector<std::string> link_inputs;
  std::string link_id, link_format = "json", link_output;
  LinkFlags link_flags;
  auto* link = app.add_subcommand(
      "link", "Link the two advice graphs of one record");
  link->add_option("dataset", link_inputs, "JSONL dataset file(s)")
      ->required();
  link->add_option("--id", link_id, "Record id (default: first record)");
  link->add_option("--format", link_format, "json or penman")
      ->check(CLI::IsMember({"json", "penman"}))
      ->capture_default_str();
  link->add_option("-o,--output", link_output, "Output file");
  link_flags.attach(link);
  link->callback([&] {
    auto dataset = load_datasets(link_inputs);
    LinkedRecord lr = link_record(record_at(dataset.get(), link_id),
                                  link_flags);
    char* raw = nullptr;
    check(link_format == "json" ? hcd_linked_to_json(lr.linked.get(), &raw)
                                : hcd_linked_to_penman(lr.linked.get(), &raw));
    write_output(link_output, with_newline(take(raw)));
  });

  // matrix
  std::vector<std::string> matrix_inputs;
  std::string matrix_id, matrix_vocab, matrix_output;
  LinkFlags matrix_flags;
  auto* matrix = app.add_subcommand(
      "matrix", "Build the relation matrix of one record");
  matrix->add_option("dataset", matrix_inputs, "JSONL dataset file(s)")
      ->required();
  matrix->add_option("--id", matrix_id, "Record id (default: first record)");
  matrix->add_option("--vocab", matrix_vocab,
                     "Vocabulary file (default: built from the train split)");
  matrix->add_option("-o,--output", matrix_output, "Output file");
  matrix_flags.attach(matrix);
  matrix->callback([&] {
    auto dataset = load_datasets(matrix_inputs);
    LinkedRecord lr = link_record(record_at(dataset.get(), matrix_id),
                                  matrix_flags);
    auto vocab = vocab_for(matrix_vocab, dataset.get());
    hcd_matrix* m = nullptr;
    check(hcd_matrix_build(
        lr.linked.get(), lr.sub1 ? lr.sub1->data() : nullptr,
        lr.sub1 ? lr.sub1->size() : 0, lr.sub2 ? lr.sub2->data() : nullptr,
        lr.sub2 ? lr.sub2->size() : 0, vocab.get(), &m));
    hcd_matrix_ptr owned(m);
    char* raw = nullptr;
    check(hcd_matrix_serialize(m, &raw));
    write_output(matrix_output, take(raw));
  });

  // vocab
  std::vector<std::string> vocab_inputs;
  std::string vocab_output;
  auto* vocab = app.add_subcommand(
      "vocab", "Build the relation vocabulary from the train split");
  vocab->add_option("dataset", vocab_inputs, "JSONL dataset file(s)")
      ->required();
  vocab->add_option("-o,--output", vocab_output, "Output file")->required();
  vocab->callback([&] {
    auto dataset = load_datasets(vocab_inputs);
    auto v = vocab_for("", dataset.get());
    check(hcd_vocab_save(v.get(), vocab_output.c_str()));
    std::printf("%zu labels\n", hcd_vocab_size(v.get()));
  });

  // gen-toy
  std::size_t toy_counts[4] = {0, 0, 0, 0};
  std::size_t toy_negatives = 0;
  std::string toy_split = "train", toy_prefix = "toy", toy_config,
              toy_output;
  std::uint64_t toy_seed = 1;
  auto* gen_toy = app.add_subcommand("gen-toy", "Generate a toy dataset");
  gen_toy->add_option("--direct", toy_counts[0], "Direct conflicts");
  gen_toy->add_option("--subtypical", toy_counts[1], "Sub-typical conflicts");
  gen_toy->add_option("--conditional", toy_counts[2], "Conditional conflicts");
  gen_toy->add_option("--temporal", toy_counts[3], "Temporal conflicts");
  gen_toy->add_option("--negatives", toy_negatives, "Non-conflicting pairs");
  gen_toy->add_option("--split", toy_split, "train or test")
      ->check(CLI::IsMember({"train", "test"}))
      ->capture_default_str();
  gen_toy->add_option("--id-prefix", toy_prefix, "Record id prefix")
      ->capture_default_str();
  gen_toy->add_option("--config", toy_config,
                      "JSON config file (replaces the count flags)");
  gen_toy->add_option("--seed", toy_seed, "Generator seed")
      ->capture_default_str();
  gen_toy->add_option("-o,--output", toy_output, "Output JSONL (- for stdout)")->required();
  gen_toy->callback([&] {
    std::string config;
    if (!toy_config.empty()) {
      config = read_input(toy_config);
    } else {
      config = json{{"direct", toy_counts[0]},
                    {"subtypical", toy_counts[1]},
                    {"conditional", toy_counts[2]},
                    {"temporal", toy_counts[3]},
                    {"negatives", toy_negatives},
                    {"split", toy_split},
                    {"id_prefix", toy_prefix}}
                   .dump();
    }
    hcd_dataset* d = nullptr;
    check(hcd_dataset_generate_toy(config.c_str(), toy_seed, &d));
    hcd_dataset_ptr owned(d);
    if (toy_output == "-") {
      for (std::size_t i = 0; i < hcd_dataset_size(d); ++i) {
        char* raw = nullptr;
        check(hcd_dataset_record_json(d, i, &raw));
        std::cout << take(raw) << '\n';
      }
      std::fprintf(stderr, "%zu records\n", hcd_dataset_size(d));
      return;
    }
    check(hcd_dataset_write_jsonl(d, toy_output.c_str()));
    std::printf("%zu records\n", hcd_dataset_size(d));
  });

  // stats
  std::vector<std::string> stats_inputs;
  std::string stats_format = "table";
  auto* stats = app.add_subcommand("stats", "Dataset statistics");
  stats->add_option("dataset", stats_inputs, "JSONL dataset file(s)")
      ->required();
  stats->add_option("--format", stats_format, "table or json")
      ->check(CLI::IsMember({"table", "json"}))
      ->capture_default_str();
  stats->callback([&] {
    auto dataset = load_datasets(stats_inputs);
    char* raw = nullptr;
    check(hcd_dataset_stats(dataset.get(), stats_format.c_str(), &raw));
    std::cout << with_newline(take(raw));
  });

  // train-baseline
  std::vector<std::string> train_inputs;
  std::string train_output;
  std::size_t epochs = 40;
  double lr = 0.5, l2 = 1e-4;
  std::uint64_t train_seed = 13;
  auto* train = app.add_subcommand(
      "train-baseline", "Train the TF-IDF one-vs-all baseline");
  train->add_option("dataset", train_inputs, "JSONL dataset file(s)")
      ->required();
  train->add_option("-o,--output", train_output, "Model file")->required();
  train->add_option("--epochs", epochs, "SGD epochs")->capture_default_str();
  train->add_option("--learning-rate", lr, "SGD step")->capture_default_str();
  train->add_option("--l2", l2, "L2 penalty")->capture_default_str();
  train->add_option("--seed", train_seed, "Shuffle seed")
      ->capture_default_str();
  train->callback([&] {
    auto dataset = load_datasets(train_inputs);
    hcd_model* m = nullptr;
    check(hcd_baseline_train(
        dataset.get(), training_options(epochs, lr, l2, train_seed).c_str(),
        &m));
    hcd_model_ptr owned(m);
    check(hcd_model_save(m, train_output.c_str()));
  });

  // eval
  std::vector<std::string> eval_inputs;
  std::string eval_model, eval_format = "table";
  bool protocol = false;
  std::size_t runs = 3;
  std::uint64_t base_seed = 13;
  auto* eval = app.add_subcommand(
      "eval", "Score a model on the test split, or run the seeded protocol");
  eval->add_option("dataset", eval_inputs, "JSONL dataset file(s)")
      ->required();
  auto* model_opt = eval->add_option("--model", eval_model, "Model file");
  auto* protocol_flag = eval->add_flag(
      "--protocol", protocol,
      "Train and score --runs times against a random guesser");
  model_opt->excludes(protocol_flag);
  eval->add_option("--runs", runs, "Protocol runs")->capture_default_str();
  eval->add_option("--base-seed", base_seed, "Seed of the first run")
      ->capture_default_str();
  eval->add_option("--epochs", epochs, "SGD epochs")->capture_default_str();
  eval->add_option("--learning-rate", lr, "SGD step")->capture_default_str();
  eval->add_option("--l2", l2, "L2 penalty")->capture_default_str();
  eval->add_option("--format", eval_format, "table or json")
      ->check(CLI::IsMember({"table", "json"}))
      ->capture_default_str();
  eval->callback([&] {
    auto dataset = load_datasets(eval_inputs);
    char* raw = nullptr;
    if (protocol) {
      json options = json::parse(training_options(epochs, lr, l2, base_seed));
      options.erase("seed");
      options["runs"] = runs;
      options["base_seed"] = base_seed;
      check(hcd_baseline_protocol(dataset.get(), options.dump().c_str(),
                                  eval_format.c_str(), &raw));
    } else {
      if (eval_model.empty()) {
        throw CallError{HCD_INVALID_ARGUMENT,
                        "InvalidArgument: pass --model or --protocol"};
      }
      hcd_model* m = nullptr;
      check(hcd_model_load(eval_model.c_str(), &m));
      hcd_model_ptr owned(m);
      check(hcd_model_evaluate(m, dataset.get(), eval_format.c_str(), &raw));
    }
    std::cout << with_newline(take(raw));
  });

  // run
  std::vector<std::string> run_inputs;
  std::string run_output, run_vocab, run_cls = "[CLS]", run_sep = "[SEP]";
  LinkFlags run_flags;
  bool run_build_vocab = false, run_fail_fast = false;
  std::size_t run_parallelism = 1, run_threshold = 0;
  auto* run = app.add_subcommand(
      "run", "Full pipeline: link every record and write its matrix");
  run->add_option("dataset", run_inputs, "JSONL dataset file(s)")->required();
  run->add_option("-o,--output-dir", run_output, "Output directory")
      ->required();
  auto* vocab_opt = run->add_option("--vocab", run_vocab, "Vocabulary file");
  auto* build_flag = run->add_flag("--build-vocab", run_build_vocab,
                                   "Build the vocabulary from the train split");
  vocab_opt->excludes(build_flag);
  run->add_option("-j,--parallelism", run_parallelism, "Worker threads")
      ->capture_default_str();
  run->add_flag("--fail-fast", run_fail_fast,
                "Stop at the first faulty record instead of skipping it");
  run->add_option("--split-threshold", run_threshold,
                  "Split words longer than this into two subtokens when a "
                  "record has no subtoken counts (0 keeps words whole)")
      ->capture_default_str();
  run->add_option("--cls-marker", run_cls, "Start marker name")
      ->capture_default_str();
  run->add_option("--sep-marker", run_sep, "Separator marker name")
      ->capture_default_str();
  run_flags.attach(run);
  run->callback([&] {
    auto dataset = load_datasets(run_inputs);
    json config = {{"similarity", run_flags.similarity},
                   {"min_score", run_flags.min_score},
                   {"build_vocab_from_train", run_build_vocab},
                   {"output_dir", run_output},
                   {"parallelism", run_parallelism},
                   {"fail_fast", run_fail_fast},
                   {"split_threshold", run_threshold},
                   {"cls_marker", run_cls},
                   {"sep_marker", run_sep}};
    if (!run_flags.embedding_path.empty()) {
      config["embedding_path"] = run_flags.embedding_path;
    }
    if (!run_vocab.empty()) config["vocab_path"] = run_vocab;
    char* raw = nullptr;
    check(hcd_pipeline_run(dataset.get(), config.dump().c_str(), &raw));
    const json report = json::parse(take(raw));
    std::printf("input=%zu processed=%zu skipped=%zu errored=%zu "
                "elapsed=%.3fs\n",
                report["input_count"].get<std::size_t>(),
                report["processed"].get<std::size_t>(),
                report["skipped"].get<std::size_t>(),
                report["errored"].get<std::size_t>(),
                report["elapsed_seconds"].get<double>());
    for (const auto& [kind, n] : report["error_kinds"].items()) {
      std::printf("  %s: %zu\n", kind.c_str(), n.get<std::size_t>());
    }
    if (report["errored"].get<std::size_t>() > 0) exit_code = 3;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const CallError& e) {
    std::fprintf(stderr, "error: %s\n", e.message.c_str());
    return 1;
  } catch (const json::exception& e) {
    std::fprintf(stderr, "error: FormatError: %s\n", e.what());
    return 1;
  }
  return exit_code;
}
