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

#include "qdagprint/edge_fingerprint.hpp"

#include <gtest/gtest.h>

#include <sstream>

#include "qdagprint/error.hpp"
#include "support/test_support.hpp"

namespace qdagprint {
namespace {

using testing::make_node;

const OperatorRegistry& reg() { return OperatorRegistry::builtin(); }

Hash64 sig(const QDag& g) { return edge_signature(g, structural_profile(g), reg()); }

// Oracle packing with literal shifts, clamped by hand.
std::uint64_t literal_pack(std::uint64_t sop, std::uint64_t sf, std::uint64_t sb,
                           std::uint64_t si, std::uint64_t so, std::uint64_t top,
                           std::uint64_t tf, std::uint64_t tb, std::uint64_t ti,
                           std::uint64_t to) {
  auto c = [](std::uint64_t v, std::uint64_t max) { return v > max ? max : v; };
  return c(sop, 63) << 58 | c(sf, 255) << 50 | c(sb, 255) << 42 | c(si, 7) << 39 |
         c(so, 7) << 36 | c(top, 63) << 30 | c(tf, 255) << 22 | c(tb, 255) << 14 |
         c(ti, 7) << 11 | c(to, 7) << 8;
}

TEST(Registry, FixedCodes) {
  EXPECT_EQ(operator_code("Scan", reg()), 1);
  EXPECT_EQ(operator_code("Filter", reg()), 2);
  EXPECT_EQ(operator_code("SortMergeJoin", reg()), 8);
  EXPECT_EQ(operator_code("SortMergeJoinExec", reg()), 8);
  EXPECT_TRUE(reg().is_registered("ReusedExchange"));
}

TEST(Registry, FallbackIsDeterministicAndInRange) {
  int a = operator_code("MyCustomOp", reg());
  EXPECT_EQ(a, operator_code("MyCustomOp", reg()));
  EXPECT_GE(a, 32);
  EXPECT_LE(a, 62);
  EXPECT_EQ(a, static_cast<int>(32 + string_hash64("MyCustomOp").bits % 31));
  EXPECT_FALSE(reg().is_registered("MyCustomOp"));
  SplitRng rng(4);
  for (int i = 0; i < 500; ++i) {
    int code = operator_code("Op" + std::to_string(rng.next()), reg());
    EXPECT_GE(code, 32);
    EXPECT_LE(code, 62);
  }
}

TEST(Registry, DataFileMatchesBuiltin) {
  OperatorRegistry file =
      OperatorRegistry::from_file((testing::source_dir() / "data/operators.v1.txt").string());
  EXPECT_EQ(file.codes(), reg().codes());
  EXPECT_EQ(file.version(), reg().version());
  EXPECT_EQ(file.version(), "operators-v1");
  for (const auto& [name, code] : file.codes()) {
    EXPECT_GE(code, 1);
    EXPECT_LE(code, 31);
  }
}

TEST(Registry, ParseRejectsBadLines) {
  std::istringstream bad_code("# version: x\nScan 40\n");
  EXPECT_THROW(OperatorRegistry::parse(bad_code), Error);
  std::istringstream missing("Scan\n");
  EXPECT_THROW(OperatorRegistry::parse(missing), Error);
  std::istringstream ok("# version: tiny\nScan 3\n\nFilter 4\n");
  OperatorRegistry r = OperatorRegistry::parse(ok);
  EXPECT_EQ(r.version(), "tiny");
  EXPECT_EQ(r.code("Scan"), 3);
  EXPECT_EQ(r.code("Filter"), 4);
}

TEST(EdgeLayout, ConstantsAreDisjointAndLeaveLowByteFree) {
  std::uint64_t used = 0;
  int total = 0;
  for (const EdgeField& f : kEdgeLayout) {
    std::uint64_t mask = ((std::uint64_t{1} << f.width) - 1) << f.offset;
    EXPECT_EQ(used & mask, 0u) << f.name;
    used |= mask;
    total += f.width;
  }
  EXPECT_EQ(total, 56);
  EXPECT_EQ(used, ~std::uint64_t{0xff});
}

TEST(EdgeSignature, SingleEdgeHandPacked) {
  QDag g("g", {make_node(0, "Scan", "t"), make_node(1, "Filter", "(x > 5)")}, {{0, 1}});
  // Scan(code 1, fwd 0, bwd 1, in 0, out 1) -> Filter(code 2, fwd 1, bwd 0, in 1, out 0)
  std::uint64_t expected = (std::uint64_t{1} << 58) | (std::uint64_t{1} << 42) |
                           (std::uint64_t{1} << 36) | (std::uint64_t{2} << 30) |
                           (std::uint64_t{1} << 22) | (std::uint64_t{1} << 11);
  EXPECT_EQ(sig(g).bits, expected);
  EXPECT_EQ(literal_pack(1, 0, 1, 0, 1, 2, 1, 0, 1, 0), expected);
}

TEST(EdgeSignature, EdgelessGraphPacksSourceFields) {
  QDag one("one", {make_node(0, "Scan")}, {});
  EXPECT_EQ(sig(one).bits, literal_pack(1, 0, 0, 0, 0, 0, 0, 0, 0, 0));
  QDag two("two", {make_node(0, "Scan"), make_node(1, "Filter")}, {});
  EXPECT_EQ(sig(two).bits,
            literal_pack(1, 0, 0, 0, 0, 0, 0, 0, 0, 0) + literal_pack(2, 1, 1, 0, 0, 0, 0, 0, 0, 0));
}

TEST(EdgeSignature, SaturatesOnLongChain) {
  std::vector<PlanNode> nodes;
  std::vector<Edge> edges;
  for (NodeId i = 0; i < 300; ++i) {
    nodes.push_back(make_node(i, i == 0 ? "Scan" : "Filter"));
    if (i > 0) edges.push_back({i - 1, i});
  }
  QDag g("chain300", nodes, edges);
  StructuralProfile p = structural_profile(g);
  EXPECT_EQ(p.forward_order[299], 299u);

  std::array<std::uint64_t, kEdgeFieldCount> v{};
  v[kTgtForward] = 299;
  v[kTgtInDegree] = 12;
  EXPECT_EQ(pack_edge_fields(v), (std::uint64_t{255} << 22) | (std::uint64_t{7} << 11));

  std::uint64_t expected = 0;
  for (NodeId i = 1; i < 300; ++i) {
    expected += literal_pack(i == 1 ? 1 : 2, i - 1, 300 - i, i == 1 ? 0 : 1, 1, 2, i, 299 - i, 1,
                             i == 299 ? 0 : 1);
  }
  EXPECT_EQ(sig(g).bits, expected);
}

TEST(EdgeSignature, MatchesLiteralPackingOnRandomDags) {
  SplitRng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    auto n = static_cast<std::size_t>(rng.uniform_int(2, 60));
    QDag g = testing::random_dag(rng, n, n + rng.uniform_int(0, n));
    StructuralProfile p = structural_profile(g);
    std::uint64_t expected = 0;
    for (const Edge& e : g.edges()) {
      auto op = [&](NodeId id) {
        return static_cast<std::uint64_t>(reg().code(g.node(id).operator_name));
      };
      expected += literal_pack(op(e.source), p.forward_order[e.source], p.backward_order[e.source],
                               p.in_degree[e.source], p.out_degree[e.source], op(e.target),
                               p.forward_order[e.target], p.backward_order[e.target],
                               p.in_degree[e.target], p.out_degree[e.target]);
    }
    EXPECT_EQ(sig(g).bits, expected);
  }
}

TEST(EdgeSignature, EdgeOrderPermutationInvariant) {
  SplitRng rng(12);
  QDag g = testing::random_dag(rng, 8, 10);
  ASSERT_EQ(g.edges().size(), 10u);
  Hash64 base = sig(g);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(sig(testing::permuted(g, rng)), base);
}

TEST(EdgeSignature, LeafRenameIsCloserThanRandomPairs) {
  SplitRng rng(99);
  double random_total = 0;
  for (int i = 0; i < 100; ++i) {
    QDag a = testing::random_dag(rng, 20, 24);
    QDag b = testing::random_dag(rng, 20, 24);
    random_total += hamming(sig(a), sig(b));
  }
  double random_mean = random_total / 100;

  QDag g = testing::random_dag(rng, 20, 24);
  StructuralProfile p = structural_profile(g);
  NodeId leaf = 0;
  for (auto [id, out] : p.out_degree) {
    if (out == 0) leaf = id;
  }
  std::vector<PlanNode> nodes = g.nodes();
  for (PlanNode& n : nodes) {
    if (n.id == leaf) {
      n.operator_name = n.operator_name == "Limit" ? "Sort" : "Limit";
      n.fact = n.operator_name;
    }
  }
  QDag renamed(g.id(), nodes, g.edges());
  int d = hamming(sig(g), sig(renamed));
  EXPECT_GT(d, 0);
  EXPECT_LT(d, random_mean);
}

}  // namespace
}  // namespace qdagprint
