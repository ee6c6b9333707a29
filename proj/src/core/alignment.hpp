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

// Token-to-concept alignments.
//
// Text format: whitespace-separated items "start-end|var", where
// [start, end) is a half-open range of word indices (as produced by
// hcd::text::tokenize_words) and var is a variable of the companion graph.
// Spans may overlap; a word or a node may appear in any number of items.

#ifndef HCD_CORE_ALIGNMENT_HPP_
#define HCD_CORE_ALIGNMENT_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "core/amr.hpp"

namespace hcd::align {

struct Span {
  std::size_t start = 0;
  std::size_t end = 0;  // exclusive

  bool contains(std::size_t idx) const { return idx >= start && idx < end; }
  bool operator==(const Span&) const = default;
};

struct Entry {
  Span span;
  std::string node;

  bool operator==(const Entry&) const = default;
};

struct TokenAlignment {
  std::vector<Entry> entries;
  std::size_t token_count = 0;
};

// Throws MalformedItem, SpanOutOfRange or UnknownVariable; the message
// carries the offending item text.
TokenAlignment parse_alignment(std::string_view spec, const amr::Graph& graph,
                               std::size_t token_count);

std::string serialize_alignment(const TokenAlignment& a);

// Variables whose spans cover idx, in entry order (duplicates removed).
// Throws IndexOutOfRange when idx >= token_count.
std::vector<std::string> concepts_for_token(const TokenAlignment& a,
                                            std::size_t idx);

// Sorted, de-duplicated word indices aligned to node. Throws UnknownVariable
// when node is not part of graph.
std::vector<std::size_t> tokens_for_concept(const TokenAlignment& a,
                                            const amr::Graph& graph,
                                            std::string_view node);

}  // namespace hcd::align

#endif  // HCD_CORE_ALIGNMENT_HPP_
