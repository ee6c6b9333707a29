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


#include <string>
#include <vector>

#include "core/alignment.hpp"
#include "core/amr.hpp"
#include "core/error.hpp"
#include "core/text.hpp"
#include "doctest.h"

namespace {

using hcd::Error;
using hcd::ErrorCode;
using hcd::align::concepts_for_token;
using hcd::align::parse_alignment;
using hcd::align::serialize_alignment;
using hcd::align::tokens_for_concept;
using V = std::vector<std::string>;
using I = std::vector<std::size_t>;

const hcd::amr::Graph& graph_ca() {
  static const hcd::amr::Graph g =
      hcd::amr::parse_penman("(c / consume-01 :ARG1 (a / alcohol))");
  return g;
}

ErrorCode code_of(const std::string& spec, std::size_t n) {
  try {
    parse_alignment(spec, graph_ca(), n);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kOk;
}

}  // namespace

TEST_CASE("tokenize words") {
  using hcd::text::tokenize_words;
  CHECK(tokenize_words("Consume alcohol in moderation") ==
        V{"Consume", "alcohol", "in", "moderation"});
  CHECK(tokenize_words("Do not drink alcoholic beverages.") ==
        V{"Do", "not", "drink", "alcoholic", "beverages"});
  CHECK(tokenize_words("Avoid full-fat milk, don't!") ==
        V{"Avoid", "full-fat", "milk", "don't"});
  CHECK(tokenize_words("  ...  ").empty());
  CHECK(tokenize_words("café au lait") == V{"café", "au", "lait"});
}

TEST_CASE("sentence counting") {
  using hcd::text::count_sentences;
  CHECK(count_sentences("Drink water.") == 1);
  CHECK(count_sentences("Drink water. Sleep well!") == 2);
  CHECK(count_sentences("Really?! Yes.") == 2);
  CHECK(count_sentences("No terminal punctuation") == 1);
  CHECK(count_sentences("...") == 0);
}

TEST_CASE("parse alignment") {
  const auto a = parse_alignment("0-1|c 1-2|a", graph_ca(), 4);
  REQUIRE(a.entries.size() == 2);
  CHECK(a.entries[0].span == hcd::align::Span{0, 1});
  CHECK(a.entries[0].node == "c");
  CHECK(a.entries[1].span == hcd::align::Span{1, 2});
  CHECK(a.entries[1].node == "a");
  CHECK(a.token_count == 4);
}

TEST_CASE("empty spec leaves every token unaligned") {
  const auto a = parse_alignment("", graph_ca(), 3);
  CHECK(a.entries.empty());
  for (std::size_t i = 0; i < 3; ++i) CHECK(concepts_for_token(a, i).empty());
}

TEST_CASE("alignment errors") {
  CHECK(code_of("3-5|c", 4) == ErrorCode::kSpanOutOfRange);
  CHECK(code_of("2-2|c", 4) == ErrorCode::kSpanOutOfRange);
  CHECK(code_of("0-1|z", 4) == ErrorCode::kUnknownVariable);
  CHECK(code_of("0-1c", 4) == ErrorCode::kMalformedItem);
  CHECK(code_of("a-1|c", 4) == ErrorCode::kMalformedItem);
  CHECK(code_of("0-1|", 4) == ErrorCode::kMalformedItem);
  try {
    parse_alignment("0-1|c 9-10|a", graph_ca(), 4);
    FAIL("expected SpanOutOfRange");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("9-10|a") != std::string::npos);
  }
}

TEST_CASE("concepts for token") {
  const auto one = parse_alignment("0-1|c", graph_ca(), 4);
  CHECK(concepts_for_token(one, 0) == V{"c"});
  CHECK(concepts_for_token(one, 3).empty());
  const auto overlap = parse_alignment("0-2|c 1-2|a", graph_ca(), 4);
  CHECK(concepts_for_token(overlap, 1) == V{"c", "a"});
  CHECK_THROWS_AS(concepts_for_token(one, 4), Error);
}

TEST_CASE("tokens for concept") {
  const auto& g = graph_ca();
  CHECK(tokens_for_concept(parse_alignment("0-2|c", g, 4), g, "c") ==
        I{0, 1});
  CHECK(tokens_for_concept(parse_alignment("0-2|c", g, 4), g, "a").empty());
  CHECK(tokens_for_concept(parse_alignment("0-1|c 3-4|c", g, 4), g, "c") ==
        I{0, 3});
  CHECK(tokens_for_concept(parse_alignment("0-2|c 1-3|c", g, 4), g, "c") ==
        I{0, 1, 2});
  try {
    tokens_for_concept(parse_alignment("", g, 4), g, "q");
    FAIL("expected UnknownVariable");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kUnknownVariable);
  }
}

TEST_CASE("the two lookups agree") {
  const auto& g = graph_ca();
  const auto a = parse_alignment("0-3|c 1-2|a 2-4|a 3-4|c", g, 5);
  for (const std::string v : {"c", "a"}) {
    const auto toks = tokens_for_concept(a, g, v);
    for (std::size_t i = 0; i < 5; ++i) {
      const auto cs = concepts_for_token(a, i);
      const bool in_tokens =
          std::find(toks.begin(), toks.end(), i) != toks.end();
      const bool in_concepts = std::find(cs.begin(), cs.end(), v) != cs.end();
      CHECK(in_tokens == in_concepts);
    }
  }
}

TEST_CASE("serialize alignment round trip") {
  const std::string spec = "1-2|a 0-3|c 0-1|c";
  const auto a = parse_alignment(spec, graph_ca(), 4);
  CHECK(serialize_alignment(a) == spec);
  const auto b = parse_alignment("  1-2|a\t0-3|c ", graph_ca(), 4);
  CHECK(serialize_alignment(b) == "1-2|a 0-3|c");
}
