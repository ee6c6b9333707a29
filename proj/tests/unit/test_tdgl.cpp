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


#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "core/alignment.hpp"
#include "core/amr.hpp"
#include "core/error.hpp"
#include "core/json_io.hpp"
#include "core/tdgl.hpp"
#include "core/text.hpp"
#include "doctest.h"
#include "oracles/topic_oracle.hpp"
#include "support/running_example.hpp"
#include "support/random_graph.hpp"

namespace {

using hcd::Error;
using hcd::ErrorCode;
using hcd::tdgl::SimilarityKind;
using hcd::tdgl::SimilarityProvider;
using hcd::tdgl::select_topic_token;
using V = std::vector<std::string>;

const SimilarityProvider kTrigram(SimilarityKind::kTrigram);
const SimilarityProvider kExact(SimilarityKind::kExact);

struct Side {
  hcd::amr::Graph graph;
  hcd::align::TokenAlignment alignment;
  std::vector<std::string> tokens;

  Side(const char* amr, const char* align, const char* text)
      : graph(hcd::amr::parse_penman(amr)),
        tokens(hcd::text::tokenize_words(text)) {
    alignment = hcd::align::parse_alignment(align, graph, tokens.size());
  }
  hcd::tdgl::Advice advice() const { return {&graph, &alignment, &tokens}; }
};

ErrorCode select_code(const V& tokens, const std::string& topic,
                      const std::string& spec, double min_score = 0.0) {
  static const hcd::amr::Graph g =
      hcd::amr::parse_penman("(c / consume-01 :ARG1 (a / alcohol))");
  try {
    const auto a = hcd::align::parse_alignment(spec, g, tokens.size());
    select_topic_token(tokens, topic, a, kTrigram, min_score);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kOk;
}

}  // namespace

TEST_CASE("exact similarity folds case") {
  CHECK(kExact.score("Alcohol", "alcohol") == 1.0);
  CHECK(kExact.score("alcohol", "alcoholic") == 0.0);
}

TEST_CASE("trigram similarity matches enumeration") {
  CHECK(kTrigram.score("alcohol", "alcohol") == 1.0);
  // 7 and 9 padded trigrams sharing 6: 6 / 10.
  CHECK(hcd::oracle::trigram_jaccard("alcohol", "alcoholic") == 0.6);
  CHECK(kTrigram.score("alcohol", "alcoholic") == 0.6);
  CHECK(kTrigram.score("Alcohol", "ALCOHOLIC") == 0.6);
  const V words = {"a", "ab", "milk", "Milky", "drink", "drinks", "x", "wine"};
  for (const auto& a : words) {
    for (const auto& b : words) {
      CHECK(kTrigram.score(a, b) ==
            doctest::Approx(hcd::oracle::trigram_jaccard(a, b)).epsilon(1e-15));
    }
  }
}

TEST_CASE("embedding similarity") {
  const std::string table =
      "4 2\n"
      "alcohol 1 0\n"
      "Wine 0.6 0.8\n"
      "water -1 0\n"
      "zero 0 0\n";
  std::istringstream in(table);
  const auto p = SimilarityProvider::with_embeddings(in);
  CHECK(p.embedding_count() == 3);
  CHECK(p.score("alcohol", "wine") == doctest::Approx(0.6));
  CHECK(p.score("alcohol", "water") == 0.0);
  CHECK(p.score("alcohol", "alcohol") == 1.0);
  // Out of table falls back to trigrams.
  CHECK(p.score("alcohol", "alcoholic") == 0.6);
  CHECK(p.score("zero", "zero") == 1.0);

  std::istringstream bad("a 1 0\nb 1 0 0\n");
  CHECK_THROWS_AS(SimilarityProvider::with_embeddings(bad), Error);
}

TEST_CASE("topic selection on the running example") {
  const Side one(hcd::testing::kExampleAmr1, hcd::testing::kExampleAlign1,
                 hcd::testing::kExampleAdvice1);
  const auto s1 =
      select_topic_token(one.tokens, "alcohol", one.alignment, kTrigram);
  CHECK(s1.token_index == 1);
  CHECK(s1.score == 1.0);
  CHECK(s1.node == "a");

  const Side two(hcd::testing::kExampleAmr2, hcd::testing::kExampleAlign2,
                 hcd::testing::kExampleAdvice2);
  const auto s2 =
      select_topic_token(two.tokens, "alcohol", two.alignment, kTrigram);
  CHECK(s2.token_index == 3);
  CHECK(two.tokens[3] == "alcoholic");
  CHECK(s2.node == "a");

  // Exhaustive check of the same choice.
  std::vector<hcd::oracle::AlignedSpan> spans;
  for (const auto& e : two.alignment.entries) {
    spans.push_back({e.span.start, e.span.end, e.node});
  }
  const auto pick = hcd::oracle::brute_force_topic(
      two.tokens, {"alcohol"}, spans, hcd::oracle::trigram_jaccard);
  REQUIRE(pick.has_value());
  CHECK(pick->token_index == 3);
}

TEST_CASE("ties go to the lowest index") {
  const auto g = hcd::amr::parse_penman("(c / x :ARG0 (a / y))");
  const V tokens = {"eat", "more", "milk", "or", "any", "milk"};
  const auto a = hcd::align::parse_alignment("2-3|c 5-6|a", g, tokens.size());
  const auto s = select_topic_token(tokens, "milk", a, kTrigram);
  CHECK(s.token_index == 2);
  CHECK(s.score == 1.0);
}

TEST_CASE("multi-word topics score by their best word") {
  const auto g = hcd::amr::parse_penman("(c / x :ARG0 (a / y))");
  const V tokens = {"eat", "collard", "greens"};
  const auto a = hcd::align::parse_alignment("0-1|c 2-3|a", g, tokens.size());
  const auto s = select_topic_token(tokens, "collard greens", a, kTrigram);
  CHECK(s.token_index == 2);
  CHECK(s.node == "a");
}

TEST_CASE("selection errors") {
  CHECK(select_code({}, "alcohol", "") == ErrorCode::kNoTokens);
  CHECK(select_code({"drink", "alcohol"}, "alcohol", "") ==
        ErrorCode::kTopicUnalignable);
  CHECK(select_code({"drink", "alcohol"}, "alcohol", "0-1|c") ==
        ErrorCode::kOk);
  CHECK(select_code({"drink", "alcohol"}, "alcohol", "0-1|c", 0.5) ==
        ErrorCode::kTopicUnalignable);
  CHECK(select_code({"drink", "alcohol"}, "", "0-1|c") ==
        ErrorCode::kInvalidArgument);
}

TEST_CASE("property: selection equals the exhaustive argmax") {
  std::mt19937_64 rng(99);
  const V lexicon = {"alcohol", "alcoholic", "milk", "milky", "drink",
                     "drinks",  "wine",      "beer", "water", "salt",
                     "salty",   "sugar",     "eat",  "more",  "less"};
  const auto g = hcd::amr::parse_penman(
      "(a / x :ARG0 (b / y) :ARG1 (c / z) :ARG2 (d / w))");
  const V vars = {"a", "b", "c", "d"};
  auto below = [&](std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  };
  std::size_t agree = 0, total = 0;
  for (int iter = 0; iter < 1000; ++iter) {
    V tokens(1 + below(8));
    for (auto& t : tokens) t = lexicon[below(lexicon.size())];
    std::string spec;
    std::vector<hcd::oracle::AlignedSpan> spans;
    const std::size_t items = below(5);
    for (std::size_t k = 0; k < items; ++k) {
      const std::size_t s = below(tokens.size());
      const std::size_t e = s + 1 + below(tokens.size() - s);
      const std::string v = vars[below(vars.size())];
      spec += std::to_string(s) + "-" + std::to_string(e) + "|" + v + " ";
      spans.push_back({s, e, v});
    }
    V topic = {lexicon[below(lexicon.size())]};
    if (below(3) == 0) topic.push_back(lexicon[below(lexicon.size())]);
    const double min_score = below(4) == 0 ? 0.5 : 0.0;
    const auto a = hcd::align::parse_alignment(spec, g, tokens.size());
    const auto expected = hcd::oracle::brute_force_topic(
        tokens, topic, spans, hcd::oracle::trigram_jaccard, min_score);
    ++total;
    try {
      const auto s = select_topic_token(tokens, hcd::text::join(topic, " "), a,
                                        kTrigram, min_score);
      if (expected && expected->token_index == s.token_index &&
          expected->node == s.node && expected->score == s.score) {
        ++agree;
      }
    } catch (const Error& e) {
      if (!expected && e.code() == ErrorCode::kTopicUnalignable) ++agree;
    }
  }
  CHECK(agree == total);
}

TEST_CASE("link: cardinality and renaming") {
  const Side one("(c / consume-01 :ARG1 (a / alcohol) :time (d / day))",
                 "0-1|c 1-2|a 2-3|d", "consume alcohol daily");
  const Side two("(a / avoid-01 :ARG1 (w / wine))", "0-1|a 1-2|w",
                 "avoid wine");
  const auto lg = hcd::tdgl::link_graphs(one.advice(), two.advice(), "wine",
                                         kTrigram);
  CHECK(lg.nodes.size() == 5);
  CHECK(lg.edges.size() == 4);
  CHECK(lg.graph1_node_count == 3);
  CHECK(lg.renamed("a") == "a_2");
  CHECK(lg.renamed("w") == "w_2");
  CHECK(lg.roots == std::pair<std::string, std::string>{"c", "a_2"});
  CHECK(lg.edges.back() == lg.conflict_edge);
  CHECK(lg.conflict_edge.relation == ":conflict");
  CHECK(lg.conflict_edge.target == "w_2");
  std::set<std::string> vars;
  for (const auto& n : lg.nodes) vars.insert(n.variable);
  CHECK(vars.size() == lg.nodes.size());
}

TEST_CASE("link: suffix collisions are numbered") {
  const Side one("(a / x :ARG0 (a_2 / y))", "0-1|a 1-2|a_2", "milk milk");
  const Side two("(a / z)", "0-1|a", "milk");
  const auto lg =
      hcd::tdgl::link_graphs(one.advice(), two.advice(), "milk", kTrigram);
  CHECK(lg.renamed("a") == "a_2_1");
  CHECK(lg.conflict_edge.source == "a");
  CHECK(lg.conflict_edge.target == "a_2_1");
}

TEST_CASE("link: errors name the advice") {
  const Side one("(a / x)", "0-1|a", "milk");
  const Side two("(b / z)", "", "milk");
  try {
    hcd::tdgl::link_graphs(one.advice(), two.advice(), "milk", kTrigram);
    FAIL("expected TopicUnalignable");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kTopicUnalignable);
    CHECK(std::string(e.what()).find("advice 2") != std::string::npos);
  }
}

TEST_CASE("link: running example") {
  const Side one(hcd::testing::kExampleAmr1, hcd::testing::kExampleAlign1,
                 hcd::testing::kExampleAdvice1);
  const Side two(hcd::testing::kExampleAmr2, hcd::testing::kExampleAlign2,
                 hcd::testing::kExampleAdvice2);
  const auto lg = hcd::tdgl::link_graphs(one.advice(), two.advice(),
                                         hcd::testing::kExampleTopic, kTrigram);
  CHECK(lg.conflict_edge == hcd::amr::Edge{"a", ":conflict", "a_2"});
  CHECK(lg.nodes.size() == 6);
  CHECK(lg.edges.size() == 5);

  SUBCASE("swapping the advices swaps the endpoints") {
    const auto back = hcd::tdgl::link_graphs(two.advice(), one.advice(),
                                             hcd::testing::kExampleTopic,
                                             kTrigram);
    CHECK(back.conflict_edge.source == "a");
    CHECK(back.renamed("a") == back.conflict_edge.target);
    CHECK(back.selection1.token_index == lg.selection2.token_index);
    CHECK(back.selection2.token_index == lg.selection1.token_index);
  }
  SUBCASE("graph 2 is recovered by undoing the renaming") {
    CHECK(hcd::testing::same_graph(hcd::source_graph2(lg), two.graph));
    CHECK(hcd::testing::same_graph(hcd::source_graph1(lg), one.graph));
  }
  SUBCASE("json round trip") {
    hcd::LinkedDocument doc{lg, one.tokens, two.tokens, one.alignment,
                            two.alignment};
    const std::string text = hcd::linked_to_json(doc);
    const auto back = hcd::linked_from_json(text);
    CHECK(hcd::linked_to_json(back) == text);
    CHECK_THROWS_AS(hcd::linked_from_json("{}"), Error);
  }
  SUBCASE("lossy export keeps both graphs under one root") {
    const std::string p = hcd::tdgl::to_penman(lg);
    const auto g = hcd::amr::parse_penman(p);
    CHECK(g.nodes.size() == lg.nodes.size() + 1);
    CHECK(g.edges.size() == lg.edges.size() + 2);
  }
}

TEST_CASE("property: linked cardinality") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 300; ++i) {
    const auto r1 = hcd::testing::random_graph(rng);
    const auto r2 = hcd::testing::random_graph(rng);
    const auto g1 = hcd::amr::parse_penman(r1.text);
    const auto g2 = hcd::amr::parse_penman(r2.text);
    V t1(g1.nodes.size(), "w"), t2(g2.nodes.size(), "w");
    std::string s1, s2;
    for (std::size_t k = 0; k < g1.nodes.size(); ++k) {
      s1 += std::to_string(k) + "-" + std::to_string(k + 1) + "|" +
            g1.nodes[k].variable + " ";
    }
    for (std::size_t k = 0; k < g2.nodes.size(); ++k) {
      s2 += std::to_string(k) + "-" + std::to_string(k + 1) + "|" +
            g2.nodes[k].variable + " ";
    }
    const auto a1 = hcd::align::parse_alignment(s1, g1, t1.size());
    const auto a2 = hcd::align::parse_alignment(s2, g2, t2.size());
    const auto lg = hcd::tdgl::link_graphs({&g1, &a1, &t1}, {&g2, &a2, &t2},
                                           "w", kTrigram);
    CHECK(lg.nodes.size() == g1.nodes.size() + g2.nodes.size());
    CHECK(lg.edges.size() == g1.edges.size() + g2.edges.size() + 1);
    CHECK(lg.attributes.size() == g1.attributes.size() + g2.attributes.size());
  }
}
