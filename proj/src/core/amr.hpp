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

// AMR graphs and their PENMAN surface form.
//
// A graph is stored as three flat, ordered collections (nodes, edges and
// constant-valued attributes) keyed by variable name. The parser preserves
// the surface form: inverse roles such as ":ARG0-of" are kept as written and
// edges always point from the enclosing node to the role filler.
//
// Role fillers are classified as follows:
//   (v / concept ...)   nested node, defines v
//   v                   reference, when v is defined anywhere in the text
//   "text"              quoted constant
//   anything else       constant, unless it has the shape of a variable
//                       (one letter, optional digits, optional "_N" groups),
//                       in which case it is reported as a dangling reference.

#ifndef HCD_CORE_AMR_HPP_
#define HCD_CORE_AMR_HPP_

#include <compare>
#include <string>
#include <string_view>
#include <vector>

namespace hcd::amr {

struct Node {
  std::string variable;
  std::string concept_name;

  bool operator==(const Node&) const = default;
};

struct Edge {
  std::string source;
  std::string relation;
  std::string target;

  auto operator<=>(const Edge&) const = default;
};

struct Attribute {
  std::string owner;
  std::string relation;
  std::string value;

  auto operator<=>(const Attribute&) const = default;
};

struct Graph {
  std::vector<Node> nodes;
  std::vector<Edge> edges;
  std::vector<Attribute> attributes;
  std::string root;

  const Node* find_node(std::string_view variable) const;
  bool has_node(std::string_view variable) const {
    return find_node(variable) != nullptr;
  }
};

// Throws hcd::Error with one of EmptyInput, UnbalancedParens,
// DuplicateVariableDefinition, DanglingVariableReference, DuplicateEdge or
// MalformedExpression. Error::offset() is the byte offset of the fault.
// Lines whose first non-blank character is '#' are treated as comments, and
// "~e.N" alignment markers are skipped.
Graph parse_penman(std::string_view text);

// One-line PENMAN. Reentrant nodes are defined at their first occurrence in
// depth-first order and referenced by bare variable afterwards. Nodes that
// can only be reached against edge direction are attached through the
// inverted role, so such graphs round-trip up to role inversion.
// Throws DisconnectedGraph, or InvalidArgument for other invariant
// violations.
std::string serialize_penman(const Graph& graph);

// Empty iff the graph satisfies all invariants. Never throws.
std::vector<std::string> validate(const Graph& graph);

// ":ARG0" <-> ":ARG0-of". Applying it twice is the identity.
std::string inverse_relation(std::string_view relation);

// Same root and the same variable-keyed node, edge and attribute sets.
bool equivalent(const Graph& a, const Graph& b);

// True for identifiers that look like AMR variables ("x", "b2", "a_2").
bool has_variable_shape(std::string_view token);

}  // namespace hcd::amr

#endif  // HCD_CORE_AMR_HPP_
