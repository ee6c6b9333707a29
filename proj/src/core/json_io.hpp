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

// JSON documents for graphs and linked pairs.
//
// A linked-pair document:
//   {
//     "nodes":      [{"variable", "concept", "graph": 1|2}, ...],
//     "edges":      [{"source", "relation", "target"}, ...],   // incl. conflict
//     "attributes": [{"owner", "relation", "value"}, ...],
//     "roots":      [root1, root2],
//     "conflict_edge": {"source", "relation", "target"},
//     "rename_map": {graph-2 variable: merged variable, ...},
//     "advice": [{"tokens": [...], "alignment": "0-1|x ...",
//                 "selection": {"token_index", "token", "node", "score"}},
//                {...}]
//   }
// Keys are written in the order shown. The alignment of advice 2 uses the
// original (un-renamed) graph-2 variables.

#ifndef HCD_CORE_JSON_IO_HPP_
#define HCD_CORE_JSON_IO_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "core/alignment.hpp"
#include "core/amr.hpp"
#include "core/tdgl.hpp"

namespace hcd {

std::string graph_to_json(const amr::Graph& g);

struct LinkedDocument {
  tdgl::LinkedGraph linked;
  std::vector<std::string> tokens1;
  std::vector<std::string> tokens2;
  align::TokenAlignment alignment1;
  align::TokenAlignment alignment2;
};

std::string linked_to_json(const LinkedDocument& doc);

// Throws FormatError on schema violations and re-validates the alignments
// against the recovered source graphs.
LinkedDocument linked_from_json(std::string_view json);

// The source graphs, recovered from the merged one; graph 2 is returned
// under its original variable names.
amr::Graph source_graph1(const tdgl::LinkedGraph& lg);
amr::Graph source_graph2(const tdgl::LinkedGraph& lg);

}  // namespace hcd

#endif  // HCD_CORE_JSON_IO_HPP_
