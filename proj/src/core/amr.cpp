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

#include "core/amr.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "core/error.hpp"

namespace hcd::amr {

const Node* Graph::find_node(std::string_view variable) const {
  for (const Node& n : nodes) {
    if (n.variable == variable) return &n;
  }
  return nullptr;
}

bool has_variable_shape(std::string_view token) {
  if (token.empty()) return false;
  const char c0 = token[0];
  if (!((c0 >= 'a' && c0 <= 'z') || (c0 >= 'A' && c0 <= 'Z'))) return false;
  std::size_t i = 1;
  while (i < token.size() && token[i] >= '0' && token[i] <= '9') ++i;
  while (i < token.size()) {
    if (token[i] != '_') return false;
    ++i;
    const std::size_t digits = i;
    while (i < token.size() && token[i] >= '0' && token[i] <= '9') ++i;
    if (i == digits) return false;
  }
  return true;
}

std::string inverse_relation(std::string_view relation) {
  constexpr std::string_view kSuffix = "-of";
  if (relation.size() > kSuffix.size() + 1 &&
      relation.substr(relation.size() - kSuffix.size()) == kSuffix) {
    return std::string(relation.substr(0, relation.size() - kSuffix.size()));
  }
  return std::string(relation) + std::string(kSuffix);
}

// ---------------------------------------------------------------------------
// Lexer

namespace {

enum class TokenKind { kOpen, kClose, kSlash, kRole, kSymbol, kString };

struct Token {
  TokenKind kind;
  std::string text;
  std::size_t offset;
};

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool is_symbol_char(char c) {
  return !is_space(c) && c != '(' && c != ')' && c != '/' && c != ':' &&
         c != '"' && c != '~';
}

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  bool line_start = true;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      line_start = true;
      ++i;
      continue;
    }
    if (is_space(c)) {
      ++i;
      continue;
    }
    if (c == '#' && line_start) {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    line_start = false;
    const std::size_t start = i;
    switch (c) {
      case '(':
        tokens.push_back({TokenKind::kOpen, "(", start});
        ++i;
        break;
      case ')':
        tokens.push_back({TokenKind::kClose, ")", start});
        ++i;
        break;
      case '/':
        tokens.push_back({TokenKind::kSlash, "/", start});
        ++i;
        break;
      case '~':
        // Alignment marker such as "~e.3,4"; ignored.
        ++i;
        while (i < text.size() && !is_space(text[i]) && text[i] != '(' &&
               text[i] != ')') {
          ++i;
        }
        break;
      case ':': {
        ++i;
        while (i < text.size() && is_symbol_char(text[i])) ++i;
        if (i == start + 1) {
          throw Error(ErrorCode::kMalformedExpression, "empty role name",
                      start);
        }
        tokens.push_back(
            {TokenKind::kRole, std::string(text.substr(start, i - start)),
             start});
        break;
      }
      case '"': {
        ++i;
        std::string value;
        bool closed = false;
        while (i < text.size()) {
          if (text[i] == '\\' && i + 1 < text.size()) {
            value.push_back(text[i + 1]);
            i += 2;
          } else if (text[i] == '"') {
            closed = true;
            ++i;
            break;
          } else {
            value.push_back(text[i]);
            ++i;
          }
        }
        if (!closed) {
          throw Error(ErrorCode::kMalformedExpression,
                      "unterminated string literal", start);
        }
        tokens.push_back({TokenKind::kString, std::move(value), start});
        break;
      }
      default:
        while (i < text.size() && is_symbol_char(text[i])) ++i;
        tokens.push_back(
            {TokenKind::kSymbol, std::string(text.substr(start, i - start)),
             start});
        break;
    }
  }
  return tokens;
}

void check_balance(const std::vector<Token>& tokens) {
  std::vector<std::size_t> open;
  for (const Token& t : tokens) {
    if (t.kind == TokenKind::kOpen) {
      open.push_back(t.offset);
    } else if (t.kind == TokenKind::kClose) {
      if (open.empty()) {
        throw Error(ErrorCode::kUnbalancedParens, "unmatched ')'", t.offset);
      }
      open.pop_back();
    }
  }
  if (!open.empty()) {
    throw Error(ErrorCode::kUnbalancedParens, "unclosed '('", open.back());
  }
}

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  Graph run() {
    collect_definitions();
    const std::string root = parse_node();
    if (pos_ < tokens_.size()) {
      throw Error(ErrorCode::kMalformedExpression,
                  "trailing content after the top-level expression",
                  tokens_[pos_].offset);
    }
    Graph g;
    g.root = root;
    g.nodes.reserve(mention_order_.size());
    for (const std::string& var : mention_order_) {
      g.nodes.push_back({var, concepts_.at(var)});
    }
    g.edges = std::move(edges_);
    g.attributes = std::move(attributes_);
    return g;
  }

 private:
  void collect_definitions() {
    for (std::size_t i = 0; i + 2 < tokens_.size(); ++i) {
      if (tokens_[i].kind != TokenKind::kOpen ||
          tokens_[i + 1].kind != TokenKind::kSymbol ||
          tokens_[i + 2].kind != TokenKind::kSlash) {
        continue;
      }
      const Token& var = tokens_[i + 1];
      if (i + 3 >= tokens_.size() ||
          (tokens_[i + 3].kind != TokenKind::kSymbol &&
           tokens_[i + 3].kind != TokenKind::kString)) {
        throw Error(ErrorCode::kMalformedExpression,
                    "missing concept after '/' for variable '" + var.text +
                        "'",
                    tokens_[i + 2].offset);
      }
      if (!concepts_.emplace(var.text, tokens_[i + 3].text).second) {
        throw Error(ErrorCode::kDuplicateVariableDefinition,
                    "variable '" + var.text + "' is defined twice",
                    var.offset);
      }
    }
  }

  const Token& expect(TokenKind kind, const char* what) {
    if (pos_ >= tokens_.size()) {
      const std::size_t at = tokens_.empty() ? 0 : tokens_.back().offset;
      throw Error(ErrorCode::kMalformedExpression,
                  std::string("unexpected end of input, expected ") + what, at);
    }
    const Token& t = tokens_[pos_];
    if (t.kind != kind) {
      throw Error(ErrorCode::kMalformedExpression,
                  std::string("expected ") + what + ", found '" + t.text + "'",
                  t.offset);
    }
    ++pos_;
    return t;
  }

  void mention(const std::string& var) {
    if (mentioned_.insert(var).second) mention_order_.push_back(var);
  }

  void add_edge(Edge e, std::size_t offset) {
    if (!edge_set_.insert(e).second) {
      throw Error(ErrorCode::kDuplicateEdge,
                  "edge (" + e.source + ", " + e.relation + ", " + e.target +
                      ") appears twice",
                  offset);
    }
    edges_.push_back(std::move(e));
  }

  std::string parse_node() {
    expect(TokenKind::kOpen, "'('");
    const Token& var_tok = expect(TokenKind::kSymbol, "variable");
    const std::string var = var_tok.text;
    expect(TokenKind::kSlash, "'/'");
    ++pos_;  // concept, checked in collect_definitions()
    mention(var);

    while (pos_ < tokens_.size() && tokens_[pos_].kind == TokenKind::kRole) {
      const Token& role = tokens_[pos_++];
      if (pos_ >= tokens_.size()) {
        throw Error(ErrorCode::kMalformedExpression,
                    "role '" + role.text + "' has no value", role.offset);
      }
      const Token& filler = tokens_[pos_];
      switch (filler.kind) {
        case TokenKind::kOpen: {
          const std::string child = parse_node();
          add_edge({var, role.text, child}, role.offset);
          break;
        }
        case TokenKind::kSymbol:
          ++pos_;
          if (concepts_.count(filler.text) > 0) {
            mention(filler.text);
            add_edge({var, role.text, filler.text}, role.offset);
          } else if (has_variable_shape(filler.text)) {
            throw Error(ErrorCode::kDanglingVariableReference,
                        "variable '" + filler.text + "' is never defined",
                        filler.offset);
          } else {
            attributes_.push_back({var, role.text, filler.text});
          }
          break;
        case TokenKind::kString:
          ++pos_;
          attributes_.push_back({var, role.text, filler.text});
          break;
        default:
          throw Error(ErrorCode::kMalformedExpression,
                      "role '" + role.text + "' has no value", role.offset);
      }
    }
    expect(TokenKind::kClose, "')'");
    return var;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::unordered_map<std::string, std::string> concepts_;
  std::unordered_set<std::string> mentioned_;
  std::vector<std::string> mention_order_;
  std::vector<Edge> edges_;
  std::set<Edge> edge_set_;
  std::vector<Attribute> attributes_;
};

}  // namespace

Graph parse_penman(std::string_view text) {
  std::vector<Token> tokens = lex(text);
  if (tokens.empty()) {
    throw Error(ErrorCode::kEmptyInput, "no PENMAN expression found", 0);
  }
  check_balance(tokens);
  return Parser(std::move(tokens)).run();
}

// ---------------------------------------------------------------------------
// Validation

namespace {

std::string edge_text(const Edge& e) {
  return "(" + e.source + ", " + e.relation + ", " + e.target + ")";
}

// Indices of nodes reachable from root over edges taken in both directions.
std::vector<bool> undirected_reach(const Graph& g) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    index.emplace(g.nodes[i].variable, i);
  }
  std::vector<std::vector<std::size_t>> adj(g.nodes.size());
  for (const Edge& e : g.edges) {
    auto s = index.find(e.source);
    auto t = index.find(e.target);
    if (s == index.end() || t == index.end()) continue;
    adj[s->second].push_back(t->second);
    adj[t->second].push_back(s->second);
  }
  std::vector<bool> seen(g.nodes.size(), false);
  auto r = index.find(g.root);
  if (r == index.end()) return seen;
  std::deque<std::size_t> queue{r->second};
  seen[r->second] = true;
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop_front();
    for (std::size_t v : adj[u]) {
      if (!seen[v]) {
        seen[v] = true;
        queue.push_back(v);
      }
    }
  }
  return seen;
}

}  // namespace

std::vector<std::string> validate(const Graph& g) {
  std::vector<std::string> out;
  std::set<std::string> defined;
  for (const Node& n : g.nodes) {
    if (n.variable.empty()) {
      out.push_back("EmptyVariable");
      continue;
    }
    if (!defined.insert(n.variable).second) {
      out.push_back("DuplicateVariable: " + n.variable);
    }
    if (n.concept_name.empty()) out.push_back("EmptyConcept: " + n.variable);
  }

  std::set<std::string> dangling_reported;
  auto check_ref = [&](const std::string& var) {
    if (defined.count(var) == 0 && dangling_reported.insert(var).second) {
      out.push_back("DanglingVariableReference: " + var);
    }
  };
  std::set<Edge> seen_edges;
  for (const Edge& e : g.edges) {
    check_ref(e.source);
    check_ref(e.target);
    if (e.relation.empty()) out.push_back("EmptyRelation: " + edge_text(e));
    if (!seen_edges.insert(e).second) {
      out.push_back("DuplicateEdge: " + edge_text(e));
    }
  }
  for (const Attribute& a : g.attributes) {
    check_ref(a.owner);
    if (a.relation.empty()) {
      out.push_back("EmptyRelation: (" + a.owner + ", , " + a.value + ")");
    }
  }

  if (defined.count(g.root) == 0) {
    out.push_back("UndefinedRoot: " + g.root);
    return out;
  }
  const std::vector<bool> reach = undirected_reach(g);
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    if (!reach[i] && !g.nodes[i].variable.empty()) {
      out.push_back("Disconnected: " + g.nodes[i].variable);
    }
  }
  return out;
}

bool equivalent(const Graph& a, const Graph& b) {
  if (a.root != b.root) return false;
  std::map<std::string, std::string> na;
  std::map<std::string, std::string> nb;
  for (const Node& n : a.nodes) na.emplace(n.variable, n.concept_name);
  for (const Node& n : b.nodes) nb.emplace(n.variable, n.concept_name);
  if (na != nb || a.nodes.size() != b.nodes.size()) return false;
  const std::set<Edge> ea(a.edges.begin(), a.edges.end());
  const std::set<Edge> eb(b.edges.begin(), b.edges.end());
  if (ea != eb || a.edges.size() != b.edges.size()) return false;
  const std::multiset<Attribute> aa(a.attributes.begin(), a.attributes.end());
  const std::multiset<Attribute> ab(b.attributes.begin(), b.attributes.end());
  return aa == ab;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

bool is_bare_symbol(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), is_symbol_char);
}

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

class Writer {
 public:
  explicit Writer(const Graph& g) : g_(g) {
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      index_.emplace(g.nodes[i].variable, i);
    }
    out_edges_.resize(g.nodes.size());
    in_edges_.resize(g.nodes.size());
    attrs_.resize(g.nodes.size());
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      out_edges_[index_.at(g.edges[e].source)].push_back(e);
      in_edges_[index_.at(g.edges[e].target)].push_back(e);
    }
    for (std::size_t a = 0; a < g.attributes.size(); ++a) {
      attrs_[index_.at(g.attributes[a].owner)].push_back(a);
    }
    inverted_.assign(g.edges.size(), false);
    defined_.assign(g.nodes.size(), false);
  }

  std::string run() {
    plan_attachment();
    emit(index_.at(g_.root));
    return std::move(out_);
  }

 private:
  // Forward closure from the root; nodes left over are attached by inverting
  // the first edge (in edge order) that connects them to the reached set.
  void plan_attachment() {
    std::vector<bool> reached(g_.nodes.size(), false);
    auto close_from = [&](std::size_t start) {
      std::deque<std::size_t> queue{start};
      reached[start] = true;
      while (!queue.empty()) {
        const std::size_t u = queue.front();
        queue.pop_front();
        for (std::size_t e : out_edges_[u]) {
          const std::size_t t = index_.at(g_.edges[e].target);
          if (!reached[t]) {
            reached[t] = true;
            queue.push_back(t);
          }
        }
      }
    };
    close_from(index_.at(g_.root));
    bool progress = true;
    while (progress) {
      progress = false;
      for (std::size_t e = 0; e < g_.edges.size(); ++e) {
        const std::size_t s = index_.at(g_.edges[e].source);
        const std::size_t t = index_.at(g_.edges[e].target);
        if (!reached[s] && reached[t]) {
          inverted_[e] = true;
          close_from(s);
          progress = true;
        }
      }
    }
    for (std::size_t i = 0; i < reached.size(); ++i) {
      if (!reached[i]) {
        throw Error(ErrorCode::kDisconnectedGraph,
                    "node '" + g_.nodes[i].variable +
                        "' is not reachable from root '" + g_.root + "'");
      }
    }
  }

  void emit_filler(std::size_t node) {
    if (defined_[node]) {
      out_ += g_.nodes[node].variable;
    } else {
      emit(node);
    }
  }

  void emit(std::size_t node) {
    defined_[node] = true;
    const Node& n = g_.nodes[node];
    out_ += "(";
    out_ += n.variable;
    out_ += " / ";
    out_ += is_bare_symbol(n.concept_name) ? n.concept_name
                                           : quote(n.concept_name);
    for (std::size_t a : attrs_[node]) {
      const Attribute& attr = g_.attributes[a];
      out_ += " ";
      out_ += attr.relation;
      out_ += " ";
      const bool bare = is_bare_symbol(attr.value) &&
                        !has_variable_shape(attr.value) &&
                        index_.count(attr.value) == 0;
      out_ += bare ? attr.value : quote(attr.value);
    }
    for (std::size_t e : out_edges_[node]) {
      if (inverted_[e]) continue;
      out_ += " ";
      out_ += g_.edges[e].relation;
      out_ += " ";
      emit_filler(index_.at(g_.edges[e].target));
    }
    for (std::size_t e : in_edges_[node]) {
      if (!inverted_[e]) continue;
      out_ += " ";
      out_ += inverse_relation(g_.edges[e].relation);
      out_ += " ";
      emit_filler(index_.at(g_.edges[e].source));
    }
    out_ += ")";
  }

  const Graph& g_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::vector<std::size_t>> out_edges_;
  std::vector<std::vector<std::size_t>> in_edges_;
  std::vector<std::vector<std::size_t>> attrs_;
  std::vector<bool> inverted_;
  std::vector<bool> defined_;
  std::string out_;
};

}  // namespace

std::string serialize_penman(const Graph& graph) {
  constexpr std::string_view kDisconnected = "Disconnected: ";
  for (const std::string& p : validate(graph)) {
    if (p.rfind(kDisconnected, 0) == 0) {
      throw Error(ErrorCode::kDisconnectedGraph,
                  "node '" + p.substr(kDisconnected.size()) +
                      "' is not reachable from root '" + graph.root + "'");
    }
    throw Error(ErrorCode::kInvalidArgument, "cannot serialize: " + p);
  }
  auto is_role = [](std::string_view r) {
    return r.size() > 1 && r.front() == ':' && is_bare_symbol(r.substr(1));
  };
  for (const Node& n : graph.nodes) {
    if (!is_bare_symbol(n.variable)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "variable '" + n.variable + "' is not a PENMAN symbol");
    }
  }
  for (const Edge& e : graph.edges) {
    if (!is_role(e.relation)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "relation '" + e.relation + "' is not a PENMAN role");
    }
  }
  for (const Attribute& a : graph.attributes) {
    if (!is_role(a.relation)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "relation '" + a.relation + "' is not a PENMAN role");
    }
  }
  return Writer(graph).run();
}

}  // namespace hcd::amr
