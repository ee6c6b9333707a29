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

#include "core/json_io.hpp"

#include <unordered_map>
#include <unordered_set>

#include "core/error.hpp"
#include "json.hpp"

namespace hcd {

using ordered_json = nlohmann::ordered_json;
using json = nlohmann::json;

namespace {

ordered_json edge_json(const amr::Edge& e) {
  return {{"source", e.source}, {"relation", e.relation}, {"target", e.target}};
}

ordered_json attribute_json(const amr::Attribute& a) {
  return {{"owner", a.owner}, {"relation", a.relation}, {"value", a.value}};
}

amr::Edge edge_from(const json& j) {
  return {j.at("source").get<std::string>(), j.at("relation").get<std::string>(),
          j.at("target").get<std::string>()};
}

}  // namespace

std::string graph_to_json(const amr::Graph& g) {
  ordered_json obj;
  ordered_json nodes = ordered_json::array();
  for (const amr::Node& n : g.nodes) {
    nodes.push_back({{"variable", n.variable}, {"concept", n.concept_name}});
  }
  ordered_json edges = ordered_json::array();
  for (const amr::Edge& e : g.edges) edges.push_back(edge_json(e));
  ordered_json attrs = ordered_json::array();
  for (const amr::Attribute& a : g.attributes) attrs.push_back(attribute_json(a));
  obj["root"] = g.root;
  obj["nodes"] = std::move(nodes);
  obj["edges"] = std::move(edges);
  obj["attributes"] = std::move(attrs);
  return obj.dump(2);
}

amr::Graph source_graph1(const tdgl::LinkedGraph& lg) {
  amr::Graph g;
  std::unordered_set<std::string> vars;
  for (std::size_t i = 0; i < lg.graph1_node_count && i < lg.nodes.size();
       ++i) {
    g.nodes.push_back(lg.nodes[i]);
    vars.insert(lg.nodes[i].variable);
  }
  for (const amr::Edge& e : lg.edges) {
    if (vars.count(e.source) > 0 && vars.count(e.target) > 0) {
      g.edges.push_back(e);
    }
  }
  for (const amr::Attribute& a : lg.attributes) {
    if (vars.count(a.owner) > 0) g.attributes.push_back(a);
  }
  g.root = lg.roots.first;
  return g;
}

amr::Graph source_graph2(const tdgl::LinkedGraph& lg) {
  std::unordered_map<std::string, std::string> original;
  for (const auto& [from, to] : lg.rename_map) original.emplace(to, from);
  auto back = [&](const std::string& v) -> const std::string* {
    auto it = original.find(v);
    return it == original.end() ? nullptr : &it->second;
  };
  amr::Graph g;
  for (std::size_t i = lg.graph1_node_count; i < lg.nodes.size(); ++i) {
    const std::string* v = back(lg.nodes[i].variable);
    if (v != nullptr) g.nodes.push_back({*v, lg.nodes[i].concept_name});
  }
  for (const amr::Edge& e : lg.edges) {
    const std::string* s = back(e.source);
    const std::string* t = back(e.target);
    if (s != nullptr && t != nullptr) g.edges.push_back({*s, e.relation, *t});
  }
  for (const amr::Attribute& a : lg.attributes) {
    if (const std::string* o = back(a.owner)) {
      g.attributes.push_back({*o, a.relation, a.value});
    }
  }
  if (const std::string* r = back(lg.roots.second)) g.root = *r;
  return g;
}

std::string linked_to_json(const LinkedDocument& doc) {
  const tdgl::LinkedGraph& lg = doc.linked;
  ordered_json obj;
  ordered_json nodes = ordered_json::array();
  for (std::size_t i = 0; i < lg.nodes.size(); ++i) {
    nodes.push_back({{"variable", lg.nodes[i].variable},
                     {"concept", lg.nodes[i].concept_name},
                     {"graph", i < lg.graph1_node_count ? 1 : 2}});
  }
  ordered_json edges = ordered_json::array();
  for (const amr::Edge& e : lg.edges) edges.push_back(edge_json(e));
  ordered_json attrs = ordered_json::array();
  for (const amr::Attribute& a : lg.attributes) {
    attrs.push_back(attribute_json(a));
  }
  ordered_json rename = ordered_json::object();
  for (const auto& [from, to] : lg.rename_map) rename[from] = to;

  auto advice = [](const std::vector<std::string>& tokens,
                   const align::TokenAlignment& a,
                   const tdgl::TopicSelection& s) {
    ordered_json sel = {{"token_index", s.token_index},
                        {"token", s.token_index < tokens.size()
                                      ? tokens[s.token_index]
                                      : std::string()},
                        {"node", s.node},
                        {"score", s.score}};
    return ordered_json{{"tokens", tokens},
                        {"alignment", align::serialize_alignment(a)},
                        {"selection", std::move(sel)}};
  };

  obj["nodes"] = std::move(nodes);
  obj["edges"] = std::move(edges);
  obj["attributes"] = std::move(attrs);
  obj["roots"] = {lg.roots.first, lg.roots.second};
  obj["conflict_edge"] = edge_json(lg.conflict_edge);
  obj["rename_map"] = std::move(rename);
  obj["advice"] = {advice(doc.tokens1, doc.alignment1, lg.selection1),
                   advice(doc.tokens2, doc.alignment2, lg.selection2)};
  return obj.dump(2) + "\n";
}

LinkedDocument linked_from_json(std::string_view text) {
  LinkedDocument doc;
  tdgl::LinkedGraph& lg = doc.linked;
  try {
    const json obj = json::parse(text);
    bool in_graph2 = false;
    for (const json& n : obj.at("nodes")) {
      const int graph = n.at("graph").get<int>();
      if (graph != 1 && graph != 2) {
        throw Error(ErrorCode::kFormatError, "node graph must be 1 or 2");
      }
      if (graph == 1 && in_graph2) {
        throw Error(ErrorCode::kFormatError,
                    "graph-1 nodes must precede graph-2 nodes");
      }
      in_graph2 = graph == 2;
      if (graph == 1) ++lg.graph1_node_count;
      lg.nodes.push_back({n.at("variable").get<std::string>(),
                          n.at("concept").get<std::string>()});
    }
    for (const json& e : obj.at("edges")) lg.edges.push_back(edge_from(e));
    for (const json& a : obj.at("attributes")) {
      lg.attributes.push_back({a.at("owner").get<std::string>(),
                               a.at("relation").get<std::string>(),
                               a.at("value").get<std::string>()});
    }
    const json& roots = obj.at("roots");
    if (!roots.is_array() || roots.size() != 2) {
      throw Error(ErrorCode::kFormatError, "roots must hold two variables");
    }
    lg.roots = {roots[0].get<std::string>(), roots[1].get<std::string>()};
    lg.conflict_edge = edge_from(obj.at("conflict_edge"));
    if (lg.edges.empty() || !(lg.edges.back() == lg.conflict_edge)) {
      throw Error(ErrorCode::kFormatError,
                  "the conflict edge must be the last edge");
    }
    for (auto it = obj.at("rename_map").begin();
         it != obj.at("rename_map").end(); ++it) {
      lg.rename_map.emplace_back(it.key(), it.value().get<std::string>());
    }
    // rename_map is written in graph-2 node order; keep that order even if
    // the reader reorders object keys.
    std::vector<std::pair<std::string, std::string>> ordered;
    for (std::size_t i = lg.graph1_node_count; i < lg.nodes.size(); ++i) {
      for (const auto& entry : lg.rename_map) {
        if (entry.second == lg.nodes[i].variable) ordered.push_back(entry);
      }
    }
    if (ordered.size() != lg.nodes.size() - lg.graph1_node_count ||
        ordered.size() != lg.rename_map.size()) {
      throw Error(ErrorCode::kFormatError,
                  "rename_map must cover exactly the graph-2 nodes");
    }
    lg.rename_map = std::move(ordered);

    const json& advice = obj.at("advice");
    if (!advice.is_array() || advice.size() != 2) {
      throw Error(ErrorCode::kFormatError, "advice must hold two entries");
    }
    const amr::Graph g1 = source_graph1(lg);
    const amr::Graph g2 = source_graph2(lg);
    for (int side = 0; side < 2; ++side) {
      const json& a = advice[side];
      auto tokens = a.at("tokens").get<std::vector<std::string>>();
      auto alignment = align::parse_alignment(
          a.at("alignment").get<std::string>(), side == 0 ? g1 : g2,
          tokens.size());
      const json& s = a.at("selection");
      tdgl::TopicSelection sel{s.at("token_index").get<std::size_t>(),
                               s.at("node").get<std::string>(),
                               s.at("score").get<double>()};
      if (side == 0) {
        doc.tokens1 = std::move(tokens);
        doc.alignment1 = std::move(alignment);
        lg.selection1 = std::move(sel);
      } else {
        doc.tokens2 = std::move(tokens);
        doc.alignment2 = std::move(alignment);
        lg.selection2 = std::move(sel);
      }
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kFormatError, e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kFormatError) throw;
    throw Error(ErrorCode::kFormatError, e.what());
  }
  return doc;
}

}  // namespace hcd
