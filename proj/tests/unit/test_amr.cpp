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


#include <random>
#include <string>
#include <thread>
#include <vector>

#include "core/amr.hpp"
#include "core/error.hpp"
#include "doctest.h"
#include "oracles/penman_count_oracle.hpp"
#include "support/random_graph.hpp"

namespace {

using hcd::Error;
using hcd::ErrorCode;
using hcd::amr::Graph;
using hcd::amr::parse_penman;
using hcd::amr::serialize_penman;
using hcd::amr::validate;

ErrorCode code_of(const std::string& text) {
  try {
    parse_penman(text);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kOk;
}

std::size_t offset_of(const std::string& text) {
  try {
    parse_penman(text);
  } catch (const Error& e) {
    return e.offset();
  }
  return hcd::kNoOffset;
}

}  // namespace

TEST_CASE("parse: two-node graph") {
  const Graph g = parse_penman("(d / drink-01 :ARG0 (i / i))");
  REQUIRE(g.nodes.size() == 2);
  CHECK(g.nodes[0].variable == "d");
  CHECK(g.nodes[0].concept_name == "drink-01");
  CHECK(g.nodes[1].variable == "i");
  CHECK(g.nodes[1].concept_name == "i");
  REQUIRE(g.edges.size() == 1);
  CHECK(g.edges[0] == hcd::amr::Edge{"d", ":ARG0", "i"});
  CHECK(g.attributes.empty());
  CHECK(g.root == "d");
}

TEST_CASE("parse: constant becomes an attribute") {
  const Graph g =
      parse_penman("(c / consume-01 :mode imperative :ARG1 (a / alcohol))");
  CHECK(g.nodes.size() == 2);
  REQUIRE(g.edges.size() == 1);
  CHECK(g.edges[0] == hcd::amr::Edge{"c", ":ARG1", "a"});
  REQUIRE(g.attributes.size() == 1);
  CHECK(g.attributes[0] == hcd::amr::Attribute{"c", ":mode", "imperative"});
  CHECK(g.root == "c");
}

TEST_CASE("parse: reentrancy agrees with the token-scanning reader") {
  const std::string text = "(a / and :op1 (b / b-cpt) :op2 b)";
  const Graph g = parse_penman(text);
  const auto counts = hcd::oracle::count_penman(text);
  CHECK(counts.nodes == 2);
  CHECK(counts.edges == 2);
  CHECK(g.nodes.size() == counts.nodes);
  REQUIRE(g.edges.size() == counts.edges);
  CHECK(g.edges[0].target == "b");
  CHECK(g.edges[1].target == "b");
  CHECK(g.root == "a");
}

TEST_CASE("parse: literal forms") {
  const Graph g = parse_penman(
      "(p / person :name \"New York\" :quant 5 :value 2.5 :polarity -\n"
      "   # a comment line\n"
      "   :li \"say \\\"hi\\\"\")");
  REQUIRE(g.attributes.size() == 5);
  CHECK(g.attributes[0].value == "New York");
  CHECK(g.attributes[1].value == "5");
  CHECK(g.attributes[2].value == "2.5");
  CHECK(g.attributes[3].value == "-");
  CHECK(g.attributes[4].value == "say \"hi\"");
}

TEST_CASE("parse: inverse roles are kept as written") {
  const Graph g = parse_penman("(a / alcohol :ARG1-of (c / consume-01))");
  REQUIRE(g.edges.size() == 1);
  CHECK(g.edges[0] == hcd::amr::Edge{"a", ":ARG1-of", "c"});
}

TEST_CASE("parse: node order follows first mention") {
  const Graph g = parse_penman("(a / and :op1 c :op2 (b / x :ARG0 (c / y)))");
  REQUIRE(g.nodes.size() == 3);
  CHECK(g.nodes[0].variable == "a");
  CHECK(g.nodes[1].variable == "c");
  CHECK(g.nodes[2].variable == "b");
}

TEST_CASE("parse: errors") {
  CHECK(code_of("") == ErrorCode::kEmptyInput);
  CHECK(code_of("   \n# only a comment\n") == ErrorCode::kEmptyInput);
  CHECK(code_of("(a / b :ARG0 (c / d)") == ErrorCode::kUnbalancedParens);
  CHECK(code_of("(a / b))") == ErrorCode::kUnbalancedParens);
  CHECK(code_of("(a / b :ARG0 (a / c))") ==
        ErrorCode::kDuplicateVariableDefinition);
  CHECK(code_of("(a / b :ARG0 x)") == ErrorCode::kDanglingVariableReference);
  CHECK(code_of("(a / b :ARG0 c :ARG0 c :x (c / d))") ==
        ErrorCode::kDuplicateEdge);
  CHECK(code_of("(a / b) (c / d)") == ErrorCode::kMalformedExpression);
  CHECK(code_of("(a :ARG0 (b / c))") == ErrorCode::kMalformedExpression);
}

TEST_CASE("parse: error offsets point at the fault") {
  CHECK(offset_of("(a / b :ARG0 x)") == 13);
  CHECK(offset_of("(a / b :ARG0 (a / c))") == 14);
  CHECK(offset_of("(a / b))") == 7);
  CHECK(offset_of("(a / b :ARG0 (c / d)") == 0);
}

TEST_CASE("serialize: canonical single line") {
  const Graph g = parse_penman("(d / drink-01\n   :ARG0 (i / i))");
  CHECK(serialize_penman(g) == "(d / drink-01 :ARG0 (i / i))");
}

TEST_CASE("serialize: constants stay bare when safe") {
  const Graph g =
      parse_penman("(c / consume-01 :mode imperative :ARG1 (a / alcohol))");
  const std::string out = serialize_penman(g);
  CHECK(out.find(":mode imperative") != std::string::npos);
  CHECK(out == "(c / consume-01 :mode imperative :ARG1 (a / alcohol))");
}

TEST_CASE("serialize: quoted values that look like variables stay strings") {
  const Graph g = parse_penman("(a / x :name \"a\" :li \"b7\" :op1 \"c d\")");
  const Graph back = parse_penman(serialize_penman(g));
  CHECK(hcd::testing::same_graph(g, back));
  CHECK(back.edges.empty());
}

TEST_CASE("serialize: edges pointing back at the root use inversion") {
  Graph g;
  g.nodes = {{"a", "alcohol"}, {"c", "consume-01"}};
  g.edges = {{"c", ":ARG1", "a"}};
  g.root = "a";
  const std::string out = serialize_penman(g);
  CHECK(out == "(a / alcohol :ARG1-of (c / consume-01))");
  // The parser keeps surface form, so the edge comes back inverted.
  const Graph back = parse_penman(out);
  REQUIRE(back.edges.size() == 1);
  CHECK(back.edges[0] == hcd::amr::Edge{"a", ":ARG1-of", "c"});
}

TEST_CASE("serialize: disconnected graph") {
  Graph g;
  g.nodes = {{"a", "x"}, {"b", "y"}};
  g.root = "a";
  CHECK_THROWS_AS(serialize_penman(g), Error);
  try {
    serialize_penman(g);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDisconnectedGraph);
  }
}

TEST_CASE("validate") {
  SUBCASE("well-formed") {
    CHECK(validate(parse_penman("(d / drink-01 :ARG0 (i / i))")).empty());
  }
  SUBCASE("dangling edge") {
    Graph g;
    g.nodes = {{"a", "x"}};
    g.edges = {{"a", ":ARG0", "x"}};
    g.root = "a";
    const auto v = validate(g);
    REQUIRE(v.size() == 1);
    CHECK(v[0] == "DanglingVariableReference: x");
  }
  SUBCASE("unreachable node") {
    Graph g;
    g.nodes = {{"a", "x"}, {"b", "y"}};
    g.root = "a";
    const auto v = validate(g);
    REQUIRE(v.size() == 1);
    CHECK(v[0] == "Disconnected: b");
  }
  SUBCASE("reachability ignores direction") {
    Graph g;
    g.nodes = {{"a", "x"}, {"b", "y"}};
    g.edges = {{"b", ":ARG0", "a"}};
    g.root = "a";
    CHECK(validate(g).empty());
  }
  SUBCASE("several faults") {
    Graph g;
    g.nodes = {{"a", "x"}, {"a", ""}, {"", "z"}};
    g.edges = {{"a", "", "a"}};
    g.root = "q";
    const auto v = validate(g);
    auto has = [&](const std::string& s) {
      return std::find(v.begin(), v.end(), s) != v.end();
    };
    CHECK(has("DuplicateVariable: a"));
    CHECK(has("EmptyConcept: a"));
    CHECK(has("EmptyVariable"));
    CHECK(has("UndefinedRoot: q"));
  }
}

TEST_CASE("inverse relations collapse") {
  CHECK(hcd::amr::inverse_relation(":ARG1") == ":ARG1-of");
  CHECK(hcd::amr::inverse_relation(":ARG1-of") == ":ARG1");
}

TEST_CASE("property: random graphs parse to their construction") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 300; ++i) {
    const auto rg = hcd::testing::random_graph(rng);
    INFO(rg.text);
    const Graph g = parse_penman(rg.text);
    REQUIRE(hcd::testing::same_graph(g, rg.expected));
    CHECK(validate(g).empty());
    const auto counts = hcd::oracle::count_penman(rg.text);
    CHECK(g.nodes.size() == counts.nodes);
    CHECK(g.edges.size() == counts.edges);
  }
}

TEST_CASE("property: round trip") {
  std::mt19937_64 rng(77);
  for (int i = 0; i < 300; ++i) {
    const auto rg = hcd::testing::random_graph(rng);
    const Graph g = parse_penman(rg.text);
    const std::string once = serialize_penman(g);
    INFO(rg.text);
    INFO(once);
    const Graph back = parse_penman(once);
    REQUIRE(hcd::testing::same_graph(g, back));
    // Serialization is a fixed point after one pass.
    CHECK(serialize_penman(back) == once);
  }
}

TEST_CASE("parsing is pure across threads") {
  std::mt19937_64 rng(5);
  std::vector<std::string> texts;
  for (int i = 0; i < 50; ++i) texts.push_back(hcd::testing::random_graph(rng).text);
  std::vector<std::string> expected;
  for (const auto& t : texts) expected.push_back(serialize_penman(parse_penman(t)));
  std::vector<std::vector<std::string>> got(4);
  std::vector<std::thread> pool;
  for (int k = 0; k < 4; ++k) {
    pool.emplace_back([&, k] {
      for (const auto& t : texts) got[k].push_back(serialize_penman(parse_penman(t)));
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& g : got) CHECK(g == expected);
}
