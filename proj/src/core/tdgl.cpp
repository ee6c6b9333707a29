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

#include "core/tdgl.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <unordered_set>

#include "core/error.hpp"
#include "core/text.hpp"

namespace hcd::tdgl {

SimilarityKind parse_similarity_kind(std::string_view name) {
  if (name == "exact") return SimilarityKind::kExact;
  if (name == "trigram") return SimilarityKind::kTrigram;
  if (name == "embedding") return SimilarityKind::kEmbedding;
  throw Error(ErrorCode::kConfigError,
              "unknown similarity kind '" + std::string(name) +
                  "' (expected exact, trigram or embedding)");
}

std::string_view similarity_kind_name(SimilarityKind kind) {
  switch (kind) {
    case SimilarityKind::kExact: return "exact";
    case SimilarityKind::kTrigram: return "trigram";
    case SimilarityKind::kEmbedding: return "embedding";
  }
  return "unknown";
}

double exact_similarity(std::string_view a, std::string_view b) {
  if (a.empty() || b.empty()) return 0.0;
  return text::fold_case(a) == text::fold_case(b) ? 1.0 : 0.0;
}

namespace {

std::set<std::u32string> trigrams(std::string_view word) {
  constexpr char32_t kBoundary = U'\0';
  std::u32string padded(1, kBoundary);
  padded += text::decode_utf8(text::fold_case(word));
  padded.push_back(kBoundary);
  std::set<std::u32string> out;
  for (std::size_t i = 0; i + 3 <= padded.size(); ++i) {
    out.insert(padded.substr(i, 3));
  }
  return out;
}

}  // namespace

double trigram_similarity(std::string_view a, std::string_view b) {
  if (a.empty() || b.empty()) return 0.0;
  const std::set<std::u32string> ta = trigrams(a);
  const std::set<std::u32string> tb = trigrams(b);
  std::size_t shared = 0;
  for (const auto& t : ta) shared += tb.count(t);
  const std::size_t total = ta.size() + tb.size() - shared;
  return static_cast<double>(shared) / static_cast<double>(total);
}

SimilarityProvider SimilarityProvider::with_embeddings(std::istream& in) {
  SimilarityProvider p(SimilarityKind::kEmbedding);
  std::size_t dim = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::vector<std::string> fields = text::split_whitespace(line);
    if (fields.empty()) continue;
    std::vector<double> vec;
    vec.reserve(fields.size() - 1);
    for (std::size_t i = 1; i < fields.size(); ++i) {
      double v = 0.0;
      const std::string& f = fields[i];
      auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
      if (ec != std::errc() || ptr != f.data() + f.size()) {
        throw Error(ErrorCode::kFormatError,
                    "embedding line " + std::to_string(line_no) +
                        ": bad number '" + f + "'");
      }
      vec.push_back(v);
    }
    // word2vec text files start with a "count dim" header.
    if (line_no == 1 && fields.size() == 2 &&
        std::all_of(fields[0].begin(), fields[0].end(),
                    [](char c) { return c >= '0' && c <= '9'; })) {
      continue;
    }
    if (vec.empty()) {
      throw Error(ErrorCode::kFormatError,
                  "embedding line " + std::to_string(line_no) +
                      ": no vector components");
    }
    if (dim == 0) dim = vec.size();
    if (vec.size() != dim) {
      throw Error(ErrorCode::kFormatError,
                  "embedding line " + std::to_string(line_no) + ": expected " +
                      std::to_string(dim) + " components, found " +
                      std::to_string(vec.size()));
    }
    double norm = 0.0;
    for (double v : vec) norm += v * v;
    norm = std::sqrt(norm);
    if (norm == 0.0) continue;
    for (double& v : vec) v /= norm;
    p.table_.emplace(text::fold_case(fields[0]), std::move(vec));
  }
  return p;
}

SimilarityProvider SimilarityProvider::with_embeddings_file(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open '" + path + "'");
  return with_embeddings(in);
}

double SimilarityProvider::score(std::string_view a, std::string_view b) const {
  switch (kind_) {
    case SimilarityKind::kExact:
      return exact_similarity(a, b);
    case SimilarityKind::kTrigram:
      return trigram_similarity(a, b);
    case SimilarityKind::kEmbedding: {
      if (a.empty() || b.empty()) return 0.0;
      const std::string fa = text::fold_case(a);
      const std::string fb = text::fold_case(b);
      auto ia = table_.find(fa);
      auto ib = table_.find(fb);
      if (ia == table_.end() || ib == table_.end()) {
        return trigram_similarity(a, b);
      }
      if (fa == fb) return 1.0;
      double dot = 0.0;
      for (std::size_t i = 0; i < ia->second.size(); ++i) {
        dot += ia->second[i] * ib->second[i];
      }
      return std::clamp(dot, 0.0, 1.0);
    }
  }
  return 0.0;
}

TopicSelection select_topic_token(const std::vector<std::string>& tokens,
                                  std::string_view topic,
                                  const align::TokenAlignment& alignment,
                                  const SimilarityProvider& provider,
                                  double min_score) {
  if (tokens.empty()) throw Error(ErrorCode::kNoTokens, "advice has no words");
  const std::vector<std::string> topic_words = text::tokenize_words(topic);
  if (topic_words.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "topic has no words");
  }
  if (alignment.token_count != tokens.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "alignment covers " + std::to_string(alignment.token_count) +
                    " words but the advice has " +
                    std::to_string(tokens.size()));
  }

  bool found = false;
  TopicSelection best;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::vector<std::string> concepts =
        align::concepts_for_token(alignment, i);
    if (concepts.empty()) continue;
    double score = 0.0;
    for (const std::string& w : topic_words) {
      score = std::max(score, provider.score(tokens[i], w));
    }
    if (!found || score > best.score) {
      found = true;
      best = {i, concepts.front(), score};
    }
  }
  if (!found) {
    throw Error(ErrorCode::kTopicUnalignable,
                "no word of the advice is aligned to a concept");
  }
  if (best.score < min_score) {
    throw Error(ErrorCode::kTopicUnalignable,
                "best aligned word '" + tokens[best.token_index] +
                    "' scores below the minimum");
  }
  return best;
}

const std::string& LinkedGraph::renamed(std::string_view graph2_variable) const {
  for (const auto& [from, to] : rename_map) {
    if (from == graph2_variable) return to;
  }
  throw Error(ErrorCode::kUnknownVariable,
              "'" + std::string(graph2_variable) + "' is not a graph-2 variable");
}

namespace {

TopicSelection select_side(const Advice& a, std::string_view topic,
                           const SimilarityProvider& provider,
                           double min_score, int side) {
  if (a.graph == nullptr || a.alignment == nullptr || a.tokens == nullptr) {
    throw Error(ErrorCode::kInvalidArgument,
                "advice " + std::to_string(side) + " is incomplete");
  }
  try {
    return select_topic_token(*a.tokens, topic, *a.alignment, provider,
                              min_score);
  } catch (const Error& e) {
    throw Error(e.code(), "advice " + std::to_string(side) + ": " + e.what());
  }
}

}  // namespace

LinkedGraph link_graphs(const Advice& first, const Advice& second,
                        std::string_view topic,
                        const SimilarityProvider& provider,
                        const LinkOptions& options) {
  LinkedGraph lg;
  lg.selection1 = select_side(first, topic, provider, options.min_score, 1);
  lg.selection2 = select_side(second, topic, provider, options.min_score, 2);

  const amr::Graph& g1 = *first.graph;
  const amr::Graph& g2 = *second.graph;

  std::unordered_set<std::string> taken;
  for (const amr::Node& n : g1.nodes) taken.insert(n.variable);
  for (const amr::Node& n : g2.nodes) {
    std::string candidate = n.variable + options.suffix;
    for (int k = 1; taken.count(candidate) > 0; ++k) {
      candidate = n.variable + options.suffix + "_" + std::to_string(k);
    }
    taken.insert(candidate);
    lg.rename_map.emplace_back(n.variable, std::move(candidate));
  }

  lg.nodes = g1.nodes;
  lg.graph1_node_count = g1.nodes.size();
  for (const amr::Node& n : g2.nodes) {
    lg.nodes.push_back({lg.renamed(n.variable), n.concept_name});
  }
  lg.edges = g1.edges;
  for (const amr::Edge& e : g2.edges) {
    lg.edges.push_back({lg.renamed(e.source), e.relation, lg.renamed(e.target)});
  }
  lg.attributes = g1.attributes;
  for (const amr::Attribute& a : g2.attributes) {
    lg.attributes.push_back({lg.renamed(a.owner), a.relation, a.value});
  }
  lg.roots = {g1.root, lg.renamed(g2.root)};
  lg.conflict_edge = {lg.selection1.node, std::string(kConflictRelation),
                      lg.renamed(lg.selection2.node)};
  lg.edges.push_back(lg.conflict_edge);
  return lg;
}

amr::Graph merged_graph(const LinkedGraph& lg) {
  amr::Graph g;
  g.nodes = lg.nodes;
  g.edges = lg.edges;
  g.attributes = lg.attributes;
  g.root = lg.roots.first;
  return g;
}

std::string to_penman(const LinkedGraph& lg) {
  amr::Graph g = merged_graph(lg);
  std::string link = "lk";
  for (int k = 1; g.has_node(link); ++k) link = "lk" + std::to_string(k);
  g.nodes.insert(g.nodes.begin(), {link, "link"});
  g.edges.insert(g.edges.begin(), {link, ":snt2", lg.roots.second});
  g.edges.insert(g.edges.begin(), {link, ":snt1", lg.roots.first});
  g.root = link;
  return amr::serialize_penman(g);
}

}  // namespace hcd::tdgl
