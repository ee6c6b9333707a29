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

#include "core/alignment.hpp"

#include <algorithm>
#include <charconv>

#include "core/error.hpp"
#include "core/text.hpp"

namespace hcd::align {

namespace {

bool parse_index(std::string_view s, std::size_t* out) {
  if (s.empty()) return false;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, *out);
  return ec == std::errc() && ptr == end;
}

}  // namespace

TokenAlignment parse_alignment(std::string_view spec, const amr::Graph& graph,
                               std::size_t token_count) {
  TokenAlignment a;
  a.token_count = token_count;
  for (const std::string& item : text::split_whitespace(spec)) {
    const std::size_t bar = item.find('|');
    const std::size_t dash = item.find('-');
    if (bar == std::string::npos || dash == std::string::npos || dash > bar ||
        item.find('|', bar + 1) != std::string::npos) {
      throw Error(ErrorCode::kMalformedItem, "'" + item + "'");
    }
    Span span;
    const std::string_view view(item);
    if (!parse_index(view.substr(0, dash), &span.start) ||
        !parse_index(view.substr(dash + 1, bar - dash - 1), &span.end)) {
      throw Error(ErrorCode::kMalformedItem, "'" + item + "'");
    }
    std::string node = item.substr(bar + 1);
    if (node.empty()) throw Error(ErrorCode::kMalformedItem, "'" + item + "'");
    if (!(span.start < span.end && span.end <= token_count)) {
      throw Error(ErrorCode::kSpanOutOfRange,
                  "'" + item + "' with " + std::to_string(token_count) +
                      " tokens");
    }
    if (!graph.has_node(node)) {
      throw Error(ErrorCode::kUnknownVariable, "'" + item + "'");
    }
    a.entries.push_back({span, std::move(node)});
  }
  return a;
}

std::string serialize_alignment(const TokenAlignment& a) {
  std::string out;
  for (const Entry& e : a.entries) {
    if (!out.empty()) out.push_back(' ');
    out += std::to_string(e.span.start) + "-" + std::to_string(e.span.end) +
           "|" + e.node;
  }
  return out;
}

std::vector<std::string> concepts_for_token(const TokenAlignment& a,
                                            std::size_t idx) {
  if (idx >= a.token_count) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "token " + std::to_string(idx) + " of " +
                    std::to_string(a.token_count));
  }
  std::vector<std::string> out;
  for (const Entry& e : a.entries) {
    if (e.span.contains(idx) &&
        std::find(out.begin(), out.end(), e.node) == out.end()) {
      out.push_back(e.node);
    }
  }
  return out;
}

std::vector<std::size_t> tokens_for_concept(const TokenAlignment& a,
                                            const amr::Graph& graph,
                                            std::string_view node) {
  if (!graph.has_node(node)) {
    throw Error(ErrorCode::kUnknownVariable, "'" + std::string(node) + "'");
  }
  std::vector<std::size_t> out;
  for (const Entry& e : a.entries) {
    if (e.node != node) continue;
    for (std::size_t i = e.span.start; i < e.span.end; ++i) out.push_back(i);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace hcd::align
