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

// Topic-driven graph linking.
//
// Each advice contributes one AMR graph plus its word alignment. The word of
// each advice most similar to the conflict topic is located, its first
// aligned concept is taken as the link endpoint, and the two graphs are
// merged into one structure joined by a single (c1, :conflict, c2) edge.
// Graph-2 variables are renamed with a "_2" suffix so the union is
// collision free.

#ifndef HCD_CORE_TDGL_HPP_
#define HCD_CORE_TDGL_HPP_

#include <cstddef>
#include <istream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "core/alignment.hpp"
#include "core/amr.hpp"

namespace hcd::tdgl {

inline constexpr std::string_view kConflictRelation = ":conflict";

enum class SimilarityKind { kExact, kTrigram, kEmbedding };

// Parses "exact", "trigram" or "embedding"; throws ConfigError otherwise.
SimilarityKind parse_similarity_kind(std::string_view name);
std::string_view similarity_kind_name(SimilarityKind kind);

class SimilarityProvider {
 public:
  explicit SimilarityProvider(SimilarityKind kind = SimilarityKind::kTrigram)
      : kind_(kind) {}

  // Embedding table, one "word v1 ... vd" record per line. Vectors are
  // normalized to unit length on load; all-zero vectors are skipped. Keys
  // are case-folded and the first record for a key wins.
  static SimilarityProvider with_embeddings(std::istream& in);
  static SimilarityProvider with_embeddings_file(const std::string& path);

  SimilarityKind kind() const { return kind_; }
  std::size_t embedding_count() const { return table_.size(); }

  // Score in [0, 1]; 1 for identical non-empty words under every kind.
  double score(std::string_view a, std::string_view b) const;

 private:
  SimilarityKind kind_;
  std::unordered_map<std::string, std::vector<double>> table_;
};

double exact_similarity(std::string_view a, std::string_view b);

// Jaccard overlap of the case-folded character trigram sets of the two
// words, each padded with one boundary marker on both sides.
double trigram_similarity(std::string_view a, std::string_view b);

inline double similarity(std::string_view a, std::string_view b,
                         const SimilarityProvider& p) {
  return p.score(a, b);
}

struct TopicSelection {
  std::size_t token_index = 0;
  std::string node;
  double score = 0.0;
};

// Highest-scoring word that has at least one aligned concept; a word's score
// is the maximum similarity over the topic's words, ties go to the lowest
// index. Throws NoTokens, InvalidArgument (empty topic) or TopicUnalignable
// (no aligned word, or best aligned score below min_score).
TopicSelection select_topic_token(const std::vector<std::string>& tokens,
                                  std::string_view topic,
                                  const align::TokenAlignment& alignment,
                                  const SimilarityProvider& provider,
                                  double min_score = 0.0);

struct Advice {
  const amr::Graph* graph = nullptr;
  const align::TokenAlignment* alignment = nullptr;
  const std::vector<std::string>* tokens = nullptr;
};

struct LinkOptions {
  double min_score = 0.0;
  std::string suffix = "_2";
};

struct LinkedGraph {
  // Graph-1 nodes first, then renamed graph-2 nodes.
  std::vector<amr::Node> nodes;
  // Graph-1 edges, renamed graph-2 edges, then the conflict edge.
  std::vector<amr::Edge> edges;
  std::vector<amr::Attribute> attributes;
  std::size_t graph1_node_count = 0;
  std::pair<std::string, std::string> roots;
  amr::Edge conflict_edge;
  // Original graph-2 variable -> merged variable, in graph-2 node order.
  std::vector<std::pair<std::string, std::string>> rename_map;
  // Selections are expressed in each advice's own variables.
  TopicSelection selection1;
  TopicSelection selection2;

  // Merged name of a graph-2 variable; throws UnknownVariable.
  const std::string& renamed(std::string_view graph2_variable) const;
};

LinkedGraph link_graphs(const Advice& first, const Advice& second,
                        std::string_view topic,
                        const SimilarityProvider& provider,
                        const LinkOptions& options = {});

// Lossy single-rooted PENMAN view: a synthetic "link" node carries :snt1 and
// :snt2 edges to the two roots. It has one node and two edges more than the
// linked graph.
std::string to_penman(const LinkedGraph& lg);

// The merged graph as an amr::Graph rooted at roots.first. Not necessarily
// connected without the conflict edge; with it, always connected.
amr::Graph merged_graph(const LinkedGraph& lg);

}  // namespace hcd::tdgl

#endif  // HCD_CORE_TDGL_HPP_
