/* Copyright 2026 The hcdgraph Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface of the hcdgraph library.
 *
 * Conventions:
 *   - Every fallible call returns an hcd_status; HCD_OK is 0.
 *   - On failure, hcd_last_error() holds a message for the calling thread
 *     until its next failing call. Out-parameters are left untouched.
 *   - Handles are opaque and released by their *_free function; freeing
 *     NULL is a no-op. Handles may be read concurrently but not mutated.
 *   - Strings returned through char** are UTF-8, NUL-terminated and owned
 *     by the caller; release them with hcd_string_free.
 *   - Options travel as small JSON objects; NULL means defaults.
 */

#ifndef HCD_HCD_H_
#define HCD_HCD_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(HCD_BUILDING_LIBRARY)
#define HCD_API __declspec(dllexport)
#else
#define HCD_API __declspec(dllimport)
#endif
#else
#define HCD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hcd_status {
  HCD_OK = 0,
  HCD_INVALID_ARGUMENT = 1,
  HCD_EMPTY_INPUT = 2,
  HCD_UNBALANCED_PARENS = 3,
  HCD_DUPLICATE_VARIABLE_DEFINITION = 4,
  HCD_DANGLING_VARIABLE_REFERENCE = 5,
  HCD_MALFORMED_EXPRESSION = 6,
  HCD_DUPLICATE_EDGE = 7,
  HCD_DISCONNECTED_GRAPH = 8,
  HCD_SPAN_OUT_OF_RANGE = 9,
  HCD_UNKNOWN_VARIABLE = 10,
  HCD_MALFORMED_ITEM = 11,
  HCD_INDEX_OUT_OF_RANGE = 12,
  HCD_NO_TOKENS = 13,
  HCD_TOPIC_UNALIGNABLE = 14,
  HCD_LAYOUT_MISMATCH = 15,
  HCD_ALIGNMENT_OUT_OF_RANGE = 16,
  HCD_MALFORMED_LINE = 17,
  HCD_MISSING_FIELD = 18,
  HCD_EMPTY_CORPUS = 19,
  HCD_DEGENERATE_LABEL = 20,
  HCD_LENGTH_MISMATCH = 21,
  HCD_EMPTY_LIST = 22,
  HCD_CONFIG_ERROR = 23,
  HCD_IO_ERROR = 24,
  HCD_FORMAT_ERROR = 25,
  HCD_MISSING_STRUCTURE = 26,
  HCD_INTERNAL = 27
} hcd_status;

typedef struct hcd_graph hcd_graph;
typedef struct hcd_alignment hcd_alignment;
typedef struct hcd_similarity hcd_similarity;
typedef struct hcd_linked hcd_linked;
typedef struct hcd_vocab hcd_vocab;
typedef struct hcd_matrix hcd_matrix;
typedef struct hcd_dataset hcd_dataset;
typedef struct hcd_model hcd_model;

/* CamelCase name of a status, e.g. "DuplicateEdge"; "Unknown" otherwise. */
HCD_API const char* hcd_status_name(int status);
/* Message of the calling thread's last failure; "" when none. */
HCD_API const char* hcd_last_error(void);
HCD_API void hcd_string_free(char* s);

/* ---- AMR graphs ------------------------------------------------------ */

HCD_API hcd_status hcd_graph_parse(const char* penman, hcd_graph** out);
/* Single-line PENMAN; fails with HCD_DISCONNECTED_GRAPH when the graph is
 * not connected. */
HCD_API hcd_status hcd_graph_serialize(const hcd_graph* g, char** out);
/* Newline-separated violations; "" for a valid graph. */
HCD_API hcd_status hcd_graph_validate(const hcd_graph* g, char** out);
HCD_API hcd_status hcd_graph_to_json(const hcd_graph* g, char** out);
HCD_API size_t hcd_graph_node_count(const hcd_graph* g);
HCD_API size_t hcd_graph_edge_count(const hcd_graph* g);
HCD_API size_t hcd_graph_attribute_count(const hcd_graph* g);
HCD_API void hcd_graph_free(hcd_graph* g);

/* ---- Words and alignments -------------------------------------------- */

/* JSON array of the word tokens of text. */
HCD_API hcd_status hcd_tokenize(const char* text, char** out_json);

/* spec is "start-end|var ..." with half-open word spans. */
HCD_API hcd_status hcd_alignment_parse(const char* spec, const hcd_graph* g,
                                       size_t token_count,
                                       hcd_alignment** out);
HCD_API hcd_status hcd_alignment_serialize(const hcd_alignment* a,
                                           char** out);
/* JSON array of variables aligned to token index. */
HCD_API hcd_status hcd_alignment_concepts_for_token(const hcd_alignment* a,
                                                    size_t index,
                                                    char** out_json);
/* JSON array of token indices aligned to variable. */
HCD_API hcd_status hcd_alignment_tokens_for_concept(const hcd_alignment* a,
                                                    const hcd_graph* g,
                                                    const char* variable,
                                                    char** out_json);
HCD_API void hcd_alignment_free(hcd_alignment* a);

/* ---- Topic-driven linking -------------------------------------------- */

/* kind: "exact", "trigram" or "embedding". embedding_path is required for
 * "embedding" and must be NULL otherwise. */
HCD_API hcd_status hcd_similarity_create(const char* kind,
                                         const char* embedding_path,
                                         hcd_similarity** out);
HCD_API hcd_status hcd_similarity_score(const hcd_similarity* s,
                                        const char* a, const char* b,
                                        double* out);
HCD_API void hcd_similarity_free(hcd_similarity* s);

/* Joins two advice graphs with a conflict edge between their topic
 * concepts. Each alignment must cover the word tokens of its text. */
HCD_API hcd_status hcd_link(const hcd_graph* g1, const hcd_alignment* a1,
                            const char* text1, const hcd_graph* g2,
                            const hcd_alignment* a2, const char* text2,
                            const char* topic, const hcd_similarity* sim,
                            double min_score, hcd_linked** out);
HCD_API hcd_status hcd_linked_to_json(const hcd_linked* l, char** out);
/* Lossy single-graph export under a synthetic link root. */
HCD_API hcd_status hcd_linked_to_penman(const hcd_linked* l, char** out);
HCD_API hcd_status hcd_linked_from_json(const char* json, hcd_linked** out);
HCD_API size_t hcd_linked_node_count(const hcd_linked* l);
HCD_API size_t hcd_linked_edge_count(const hcd_linked* l);
HCD_API void hcd_linked_free(hcd_linked* l);

/* ---- Relation vocabulary and matrices -------------------------------- */

HCD_API hcd_status hcd_vocab_build(const hcd_graph* const* graphs, size_t n,
                                   hcd_vocab** out);
/* Graphs of the train split of a dataset; unparsable graphs are skipped. */
HCD_API hcd_status hcd_vocab_from_dataset(const hcd_dataset* d,
                                          hcd_vocab** out);
HCD_API hcd_status hcd_vocab_load(const char* path, hcd_vocab** out);
HCD_API hcd_status hcd_vocab_save(const hcd_vocab* v, const char* path);
HCD_API size_t hcd_vocab_size(const hcd_vocab* v);
/* Id of label, or the <unk> id when absent. */
HCD_API uint32_t hcd_vocab_lookup(const hcd_vocab* v, const char* label);
HCD_API void hcd_vocab_free(hcd_vocab* v);

/* Subtoken counts per word; pass NULL for one subtoken per word. */
HCD_API hcd_status hcd_matrix_build(const hcd_linked* l,
                                    const size_t* subtokens1, size_t n1,
                                    const size_t* subtokens2, size_t n2,
                                    const hcd_vocab* v, hcd_matrix** out);
/* Sparse TSV: "L\tV" header, then "i\tj\tid" for each non-None cell. */
HCD_API hcd_status hcd_matrix_serialize(const hcd_matrix* m, char** out);
HCD_API hcd_status hcd_matrix_read(const char* tsv, hcd_matrix** out);
HCD_API size_t hcd_matrix_size(const hcd_matrix* m);
HCD_API hcd_status hcd_matrix_cell(const hcd_matrix* m, size_t i, size_t j,
                                   uint32_t* out);
HCD_API void hcd_matrix_free(hcd_matrix* m);

/* ---- Datasets -------------------------------------------------------- */

HCD_API hcd_status hcd_dataset_load(const char* path, hcd_dataset** out);
/* config_json: {"direct": n, "subtypical": n, "conditional": n,
 * "temporal": n, "negatives": n, "split": "train"|"test",
 * "id_prefix": "toy"}; absent counts are 0. */
HCD_API hcd_status hcd_dataset_generate_toy(const char* config_json,
                                            uint64_t seed, hcd_dataset** out);
HCD_API size_t hcd_dataset_size(const hcd_dataset* d);
HCD_API hcd_status hcd_dataset_record_json(const hcd_dataset* d,
                                           size_t index, char** out);
/* format: "json" or "table". */
HCD_API hcd_status hcd_dataset_stats(const hcd_dataset* d, const char* format,
                                     char** out);
HCD_API hcd_status hcd_dataset_write_jsonl(const hcd_dataset* d,
                                           const char* path);
/* Appends the records of src to dst. */
HCD_API hcd_status hcd_dataset_append(hcd_dataset* dst,
                                      const hcd_dataset* src);
HCD_API void hcd_dataset_free(hcd_dataset* d);

/* ---- TF-IDF baseline ------------------------------------------------- */

/* options_json: {"epochs", "learning_rate", "l2", "seed"}; trains on the
 * train split. */
HCD_API hcd_status hcd_baseline_train(const hcd_dataset* d,
                                      const char* options_json,
                                      hcd_model** out);
HCD_API hcd_status hcd_model_save(const hcd_model* m, const char* path);
HCD_API hcd_status hcd_model_load(const char* path, hcd_model** out);
/* Scores the test split; format "json" or "table". */
HCD_API hcd_status hcd_model_evaluate(const hcd_model* m,
                                      const hcd_dataset* d,
                                      const char* format, char** out);
HCD_API void hcd_model_free(hcd_model* m);

/* Repeated train/evaluate runs against a seeded random guesser.
 * options_json adds {"runs", "base_seed"} to the training options. */
HCD_API hcd_status hcd_baseline_protocol(const hcd_dataset* d,
                                         const char* options_json,
                                         const char* format, char** out);

/* ---- Batch pipeline -------------------------------------------------- */

/* config_json mirrors the pipeline configuration: {"similarity",
 * "embedding_path", "min_score", "vocab_path", "build_vocab_from_train",
 * "output_dir", "parallelism", "fail_fast", "split_threshold",
 * "cls_marker", "sep_marker"}. On success *report_json receives the run
 * report; the caller decides how to treat skipped or errored records. */
HCD_API hcd_status hcd_pipeline_run(const hcd_dataset* d,
                                    const char* config_json,
                                    char** report_json);

#ifdef __cplusplus
}
#endif

#endif /* HCD_HCD_H_ */
