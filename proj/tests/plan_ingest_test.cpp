// Copyright 2026 The qdagprint Authors.
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

#include "qdagprint/plan_ingest.hpp"

#include <gtest/gtest.h>

#include "qdagprint/error.hpp"
#include "qdagprint/fingerprint.hpp"
#include "support/test_support.hpp"

namespace qdagprint {
namespace {

using testing::make_node;

ErrorCode error_of(const std::function<void()>& f, std::string* message = nullptr) {
  try {
    f();
  } catch (const Error& e) {
    if (message) *message = e.what();
    return e.code();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorCode::kIo;
}

TEST(ParseJson, MinimalDocument) {
  PlanDocument d = parse_plan_json(
      R"({"plan_id":"q1","nodes":[{"id":0,"operator":"Scan","fact":"Scan lineitem"}],"edges":[]})");
  EXPECT_EQ(d.plan_id, "q1");
  EXPECT_FALSE(d.runtime_seconds.has_value());
  ASSERT_EQ(d.graph.node_count(), 1u);
  EXPECT_EQ(d.graph.nodes()[0].fact, "Scan lineitem");
  EXPECT_TRUE(d.graph.edges().empty());
}

TEST(ParseJson, RuntimePresentAndEdgesOptional) {
  PlanDocument d = parse_plan_json(
      R"({"plan_id":"q1","runtime_seconds":4.2,"nodes":[{"id":0,"operator":"Scan","fact":"Scan lineitem"}]})");
  ASSERT_TRUE(d.runtime_seconds.has_value());
  EXPECT_DOUBLE_EQ(*d.runtime_seconds, 4.2);
}

TEST(ParseJson, SelfLoopIsCycle) {
  EXPECT_EQ(error_of([] {
              parse_plan_json(
                  R"({"plan_id":"q1","nodes":[{"id":0,"operator":"Scan","fact":"Scan t"}],"edges":[[0,0]]})");
            }),
            ErrorCode::kCycleDetected);
}

TEST(ParseJson, MalformedReportsPosition) {
  std::string msg;
  EXPECT_EQ(error_of([] { parse_plan_json("{\n  \"plan_id\": \"q1\",\n  \"nodes\": [,]\n}"); }, &msg),
            ErrorCode::kMalformedDocument);
  EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
  EXPECT_NE(msg.find("offset"), std::string::npos) << msg;
}

TEST(ParseJson, SchemaViolationsNameTheField) {
  std::string msg;
  EXPECT_EQ(error_of([] { parse_plan_json(R"({"nodes":[]})"); }, &msg), ErrorCode::kSchemaViolation);
  EXPECT_NE(msg.find("plan_id"), std::string::npos);
  EXPECT_EQ(error_of([] { parse_plan_json(R"({"plan_id":"q"})"); }, &msg),
            ErrorCode::kSchemaViolation);
  EXPECT_NE(msg.find("nodes"), std::string::npos);
  EXPECT_EQ(error_of([] { parse_plan_json(R"({"plan_id":"q","nodes":[{"id":0,"fact":"Scan"}]})"); },
                     &msg),
            ErrorCode::kSchemaViolation);
  EXPECT_NE(msg.find("operator"), std::string::npos);
  EXPECT_EQ(error_of([] {
              parse_plan_json(R"({"plan_id":"q","nodes":[{"id":-1,"operator":"Scan","fact":"Scan"}]})");
            }),
            ErrorCode::kSchemaViolation);
  EXPECT_EQ(error_of([] {
              parse_plan_json(
                  R"({"plan_id":"q","runtime_seconds":-1,"nodes":[{"id":0,"operator":"Scan","fact":"Scan"}]})");
            }),
            ErrorCode::kSchemaViolation);
}

TEST(ParseJson, NormalizesKeysAndKeepsUnknownInFact) {
  PlanDocument d = parse_plan_json(R"({"plan_id":"q","nodes":[{"id":0,"operator":"SortMergeJoin",
      "fact":"SortMergeJoin [a], [b]",
      "properties":{"joinType":"Inner","numKeys":2,"spill_hint":"low"}}]})");
  const PlanNode& n = d.graph.nodes()[0];
  EXPECT_EQ(n.properties.at("join_semantics"), PropertyValue(std::string("Inner")));
  EXPECT_EQ(n.properties.at("num_keys"), PropertyValue(std::int64_t{2}));
  EXPECT_FALSE(n.properties.contains("spill_hint"));
  EXPECT_NE(n.fact.find("spill_hint=low"), std::string::npos) << n.fact;
}

TEST(NormalizeKey, CamelAndAliases) {
  EXPECT_EQ(normalize_property_key("rowWidth"), "row_width");
  EXPECT_EQ(normalize_property_key("num-partitions"), "num_partitions");
  EXPECT_EQ(normalize_property_key("numPartitions"), "num_partitions");
  EXPECT_EQ(normalize_property_key("joinType"), "join_semantics");
  EXPECT_EQ(normalize_property_key("num_keys"), "num_keys");
}

TEST(ParseText, StraightLinePlan) {
  PlanDocument d = parse_plan_text("Project [a]\n  Filter (x > 5)\n    Scan t1");
  ASSERT_EQ(d.graph.node_count(), 3u);
  EXPECT_EQ(d.graph.node(0).operator_name, "Project");
  EXPECT_EQ(d.graph.node(1).operator_name, "Filter");
  EXPECT_EQ(d.graph.node(1).fact, "Filter (x > 5)");
  EXPECT_EQ(d.graph.node(2).operator_name, "Scan");
  EXPECT_EQ(d.graph.edges(), (std::vector<Edge>{{1, 0}, {2, 1}}));
  EXPECT_EQ(d.plan_id, "plan");
}

TEST(ParseText, JoinShapeAndHeaders) {
  PlanDocument d = parse_plan_text(
      "-- plan_id: q7\n-- runtime_seconds: 12.5\n"
      "SortMergeJoin [k], [k], Inner\n  Sort [k ASC]\n    Scan a\n  Sort [k ASC]\n    Scan b\n");
  EXPECT_EQ(d.plan_id, "q7");
  EXPECT_DOUBLE_EQ(d.runtime_seconds.value(), 12.5);
  ASSERT_EQ(d.graph.node_count(), 5u);
  int into_root = 0;
  for (const Edge& e : d.graph.edges()) into_root += e.target == 0;
  EXPECT_EQ(into_root, 2);
  const PlanNode& root = d.graph.node(0);
  EXPECT_EQ(root.properties.at("join_semantics"), PropertyValue(std::string("inner")));
  EXPECT_EQ(root.properties.at("join_algorithm"), PropertyValue(std::string("sort-merge")));
  EXPECT_EQ(root.properties.at("num_keys"), PropertyValue(std::int64_t{1}));
}

TEST(ParseText, IndentErrors) {
  EXPECT_EQ(error_of([] { parse_plan_text("Project\n    Scan t"); }), ErrorCode::kIndentError);
  EXPECT_EQ(error_of([] { parse_plan_text("Project\n\tScan t"); }), ErrorCode::kIndentError);
  EXPECT_EQ(error_of([] { parse_plan_text("Project\n   Scan t"); }), ErrorCode::kIndentError);
  EXPECT_EQ(error_of([] { parse_plan_text("Project\nScan t"); }), ErrorCode::kIndentError);
  EXPECT_EQ(error_of([] { parse_plan_text("  Project"); }), ErrorCode::kIndentError);
  EXPECT_EQ(error_of([] { parse_plan_text(""); }), ErrorCode::kEmptyPlan);
  EXPECT_EQ(error_of([] { parse_plan_text("-- plan_id: x\n\n"); }), ErrorCode::kEmptyPlan);
}

TEST(ExtractTextProperties, Patterns) {
  PropertyMap ex = extract_text_properties(
      "Exchange", "Exchange hashpartitioning(l_orderkey#1, l_partkey#2, 200), width=48");
  EXPECT_EQ(ex.at("partitioning_type"), PropertyValue(std::string("hash")));
  EXPECT_EQ(ex.at("num_partitions"), PropertyValue(std::int64_t{200}));
  EXPECT_EQ(ex.at("row_width"), PropertyValue(std::int64_t{48}));

  PropertyMap bhj = extract_text_properties(
      "BroadcastHashJoin", "BroadcastHashJoin [a#1], [b#2], LeftSemi, BuildRight");
  EXPECT_EQ(bhj.at("join_algorithm"), PropertyValue(std::string("broadcast")));
  EXPECT_EQ(bhj.at("join_semantics"), PropertyValue(std::string("leftsemi")));
  EXPECT_EQ(bhj.at("build_side"), PropertyValue(std::string("right")));

  PropertyMap bx = extract_text_properties(
      "BroadcastExchange", "BroadcastExchange HashedRelationBroadcastMode(List(a#1))");
  EXPECT_EQ(bx.at("broadcast_mode"), PropertyValue(std::string("hashed-relation")));

  PropertyMap agg = extract_text_properties(
      "HashAggregate", "HashAggregate(keys=[a#1:int, b#2:string], functions=[sum(c#3)])");
  EXPECT_EQ(agg.at("num_grouping_exprs"), PropertyValue(std::int64_t{2}));
  EXPECT_EQ(agg.at("num_result_exprs"), PropertyValue(std::int64_t{1}));
  EXPECT_EQ(agg.at("num_numeric_attrs"), PropertyValue(std::int64_t{1}));
  EXPECT_EQ(agg.at("num_string_attrs"), PropertyValue(std::int64_t{1}));

  EXPECT_TRUE(extract_text_properties("Scan", "Scan lineitem").empty());
}

PlanDocument reuse_plan() {
  // Scan0 -> Filter1 -> Exchange2 -> SMJ4 <- ReusedExchange3 (reuses 2)
  return PlanDocument{
      "r", 10.0,
      QDag("r",
           {make_node(0, "Scan", "t"), make_node(1, "Filter", "(x > 1)"),
            make_node(2, "Exchange", "hashpartitioning(x, 8)"),
            make_node(3, "ReusedExchange", "reuses=2", {{"reuses", std::int64_t{2}}}),
            make_node(4, "SortMergeJoin", "[x], [x], Inner")},
           {{0, 1}, {1, 2}, {2, 4}, {3, 4}})};
}

TEST(ResolveReuse, NoReuseIsIdentity) {
  PlanDocument d{"p", std::nullopt,
                 QDag("p", {make_node(0, "Scan"), make_node(1, "Filter")}, {{0, 1}})};
  EXPECT_TRUE(structurally_equal(resolve_reuse_references(d), d));
}

TEST(ResolveReuse, ExpandsSubtreeInPlace) {
  PlanDocument out = resolve_reuse_references(reuse_plan());
  PlanDocument expected{
      "r", 10.0,
      QDag("r",
           {make_node(0, "Scan", "t"), make_node(1, "Filter", "(x > 1)"),
            make_node(2, "Exchange", "hashpartitioning(x, 8)"),
            make_node(4, "SortMergeJoin", "[x], [x], Inner"), make_node(5, "Scan", "t"),
            make_node(6, "Filter", "(x > 1)"), make_node(7, "Exchange", "hashpartitioning(x, 8)")},
           {{0, 1}, {1, 2}, {2, 4}, {7, 4}, {5, 6}, {6, 7}})};
  EXPECT_EQ(out.graph.node_count(), reuse_plan().graph.node_count() + 2);
  EXPECT_TRUE(structurally_equal(out, expected));
  EXPECT_TRUE(structurally_equal(resolve_reuse_references(out), out));
}

TEST(ResolveReuse, ChainedReuseAndErrors) {
  // A reuse pointing at a subtree that itself contains a reuse.
  PlanDocument chained{
      "c", std::nullopt,
      QDag("c",
           {make_node(0, "Scan", "t"), make_node(1, "Exchange"),
            make_node(2, "ReusedExchange", "", {{"reuses", std::int64_t{1}}}),
            make_node(3, "Filter", "(y)"),
            make_node(4, "ReusedExchange", "", {{"reuses", std::int64_t{3}}}),
            make_node(5, "Union")},
           {{0, 1}, {2, 3}, {1, 5}, {3, 5}, {4, 5}})};
  PlanDocument out = resolve_reuse_references(chained);
  for (const PlanNode& n : out.graph.nodes()) EXPECT_FALSE(is_reuse_operator(n.operator_name));
  // 6 nodes; first expansion +1 (reuse 2 -> Scan, Exchange), second +2 (reuse 4
  // -> Scan, Exchange, Filter).
  EXPECT_EQ(out.graph.node_count(), 9u);
  EXPECT_TRUE(structurally_equal(resolve_reuse_references(out), out));

  PlanDocument missing{"m", std::nullopt,
                       QDag("m", {make_node(0, "ReusedExchange", "", {{"reuses", std::int64_t{42}}})}, {})};
  EXPECT_EQ(error_of([&] { resolve_reuse_references(missing); }), ErrorCode::kUnresolvedReference);

  PlanDocument loop{"l", std::nullopt,
                    QDag("l",
                         {make_node(0, "ReusedExchange", "", {{"reuses", std::int64_t{1}}}),
                          make_node(1, "ReusedExchange", "", {{"reuses", std::int64_t{0}}})},
                         {})};
  EXPECT_EQ(error_of([&] { resolve_reuse_references(loop); }), ErrorCode::kReferenceCycle);
}

TEST(RoundTrip, JsonRenderParseOnGeneratedDocuments) {
  SplitRng rng(18);
  for (int i = 0; i < 100; ++i) {
    QDag g = testing::random_dag(rng, static_cast<std::size_t>(rng.uniform_int(1, 30)), 40,
                                 "doc" + std::to_string(i));
    std::optional<double> runtime;
    if (rng.bernoulli(0.7)) runtime = rng.uniform_real(0, 500);
    PlanDocument d{g.id(), runtime, g};
    PlanDocument back = parse_plan_json(render_plan_json(d));
    EXPECT_TRUE(structurally_equal(back, d)) << render_plan_json(d);
    EXPECT_EQ(render_plan_json(back), render_plan_json(d));
  }
}

TEST(RoundTrip, TextThroughJsonFingerprintsIdentically) {
  std::string text =
      "-- plan_id: t1\n-- runtime_seconds: 3\n"
      "Project [a#1:int, b#2:string]\n"
      "  BroadcastHashJoin [a#1], [a#3], Inner, BuildRight\n"
      "    Filter (b#2 > 5)\n      Scan t1 [a#1:int, b#2:string]\n"
      "    BroadcastExchange HashedRelationBroadcastMode(List(a#3))\n"
      "      Exchange hashpartitioning(a#3, 16), width=24\n        Scan t2 [a#3:int]\n";
  PlanDocument d = parse_plan_text(text);
  PlanDocument j = parse_plan_json(render_plan_json(d));
  EXPECT_TRUE(structurally_equal(d, j));
  for (Approach a : {Approach::kStructured, Approach::kNgram}) {
    FingerprintConfig c;
    c.approach = a;
    EXPECT_EQ(fingerprint(d.graph, c), fingerprint(j.graph, c));
  }
}

TEST(LoadCorpus, SortedDirectory) {
  auto dir = testing::scratch_dir("corpus_sorted");
  for (std::string name : {"c", "a", "b"}) {
    testing::write_file(dir / (name + ".json"),
                        R"({"plan_id":")" + name +
                            R"(","runtime_seconds":1,"nodes":[{"id":0,"operator":"Scan","fact":"Scan t"}]})");
  }
  testing::write_file(dir / "notes.txt", "ignored");
  Corpus c = load_corpus(dir);
  ASSERT_EQ(c.documents.size(), 3u);
  EXPECT_EQ(c.documents[0].plan_id, "a");
  EXPECT_EQ(c.documents[1].plan_id, "b");
  EXPECT_EQ(c.documents[2].plan_id, "c");
}

TEST(LoadCorpus, MixedFormatsAndReuseResolution) {
  auto dir = testing::scratch_dir("corpus_mixed");
  testing::write_file(dir / "x.plan", "Union\n  Exchange hashpartitioning(k, 4)\n    Scan t\n  ReusedExchange reuses=1\n");
  Corpus c = load_corpus(dir);
  ASSERT_EQ(c.documents.size(), 1u);
  EXPECT_EQ(c.documents[0].plan_id, "x");
  EXPECT_EQ(c.documents[0].graph.node_count(), 5u);
}

TEST(LoadCorpus, MalformedFileIsNamed) {
  auto dir = testing::scratch_dir("corpus_bad");
  testing::write_file(dir / "good.json",
                      R"({"plan_id":"g","nodes":[{"id":0,"operator":"Scan","fact":"Scan t"}]})");
  testing::write_file(dir / "broken.json", "{\"plan_id\": ");
  std::string msg;
  EXPECT_EQ(error_of([&] { load_corpus(dir); }, &msg), ErrorCode::kCorpusError);
  EXPECT_NE(msg.find("broken.json"), std::string::npos) << msg;
  EXPECT_EQ(msg.find("good.json"), std::string::npos) << msg;
}

TEST(LoadCorpus, DuplicatePlanId) {
  auto dir = testing::scratch_dir("corpus_dup");
  for (std::string name : {"one", "two"}) {
    testing::write_file(dir / (name + ".json"),
                        R"({"plan_id":"q1","nodes":[{"id":0,"operator":"Scan","fact":"Scan t"}]})");
  }
  std::string msg;
  EXPECT_EQ(error_of([&] { load_corpus(dir); }, &msg), ErrorCode::kDuplicatePlanId);
  EXPECT_NE(msg.find("one.json"), std::string::npos);
  EXPECT_NE(msg.find("two.json"), std::string::npos);
}

TEST(LoadCorpus, MissingPath) {
  EXPECT_EQ(error_of([] { load_corpus("/nonexistent/qdagprint/corpus"); }), ErrorCode::kIo);
}

}  // namespace
}  // namespace qdagprint
