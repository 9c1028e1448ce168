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

#include "qdagprint/synthetic.hpp"

#include <gtest/gtest.h>

#include <map>
#include <regex>

#include "qdagprint/error.hpp"
#include "qdagprint/fingerprint.hpp"
#include "qdagprint/fingerprint_index.hpp"
#include "support/test_support.hpp"

namespace qdagprint {
namespace {

namespace fs = std::filesystem;

std::map<std::string, std::string> directory_bytes(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    out[e.path().filename().string()] = testing::read_file(e.path());
  }
  return out;
}

std::string strip_ids(const std::string& s) {
  static const std::regex kId("#[0-9]+");
  return std::regex_replace(s, kId, "");
}

TEST(SplitRng, RangesAndDeterminism) {
  SplitRng a(42), b(42);
  for (int i = 0; i < 1000; ++i) {
    std::int64_t x = a.uniform_int(-3, 9);
    EXPECT_EQ(x, b.uniform_int(-3, 9));
    EXPECT_GE(x, -3);
    EXPECT_LE(x, 9);
    double r = a.uniform_real(2.0, 3.0);
    EXPECT_EQ(r, b.uniform_real(2.0, 3.0));
    EXPECT_GE(r, 2.0);
    EXPECT_LT(r, 3.0);
  }
  // mt19937_64's 10000th output with the default seed is fixed by the C++ standard.
  SplitRng standard(5489);
  std::uint64_t v = 0;
  for (int i = 0; i < 10000; ++i) v = standard.next();
  EXPECT_EQ(v, 9981545732273789042ULL);
}

TEST(Generate, SameSeedByteIdenticalDirectories) {
  SyntheticSpec spec = SyntheticSpec::standard(42, 20, 0.1);
  auto d1 = testing::scratch_dir("gen_a");
  auto d2 = testing::scratch_dir("gen_b");
  generate_corpus(spec, d1);
  generate_corpus(spec, d2);
  auto b1 = directory_bytes(d1);
  EXPECT_EQ(b1.size(), 60u);
  EXPECT_EQ(b1, directory_bytes(d2));

  auto d3 = testing::scratch_dir("gen_c");
  generate_corpus(SyntheticSpec::standard(43, 20, 0.1), d3);
  EXPECT_NE(b1, directory_bytes(d3));
}

TEST(Generate, ThreeHundredFilesInTheirBands) {
  SyntheticSpec spec = SyntheticSpec::standard(7, 100, 0.1);
  auto dir = testing::scratch_dir("gen_300");
  Corpus written = generate_corpus(spec, dir);
  EXPECT_EQ(directory_bytes(dir).size(), 300u);
  Corpus loaded = load_corpus(dir);
  ASSERT_EQ(loaded.documents.size(), 300u);
  std::map<std::string, ComplexityLabel> band = {{"simple", ComplexityLabel::kSimple},
                                                 {"medium", ComplexityLabel::kMedium},
                                                 {"complex", ComplexityLabel::kComplex}};
  for (std::size_t i = 0; i < 300; ++i) {
    const PlanDocument& d = loaded.documents[i];
    EXPECT_TRUE(structurally_equal(d, written.documents[i])) << d.plan_id;
    std::string family = d.plan_id.substr(0, d.plan_id.find('-'));
    ASSERT_TRUE(band.contains(family)) << d.plan_id;
    EXPECT_EQ(classify_runtime(d.runtime_seconds.value()), band[family]) << d.plan_id;
  }
}

TEST(Generate, ZeroRateDiffersOnlyInRuntimeAndExpressionIds) {
  std::vector<SyntheticPlan> plans = generate_plans(SyntheticSpec::standard(11, 15, 0.0));
  std::map<std::string, const PlanDocument*> first;
  for (const SyntheticPlan& p : plans) {
    auto [it, inserted] = first.emplace(p.family, &p.document);
    if (inserted) continue;
    const QDag& a = it->second->graph;
    const QDag& b = p.document.graph;
    ASSERT_EQ(a.node_count(), b.node_count());
    EXPECT_EQ(a.edges(), b.edges());
    for (std::size_t i = 0; i < a.node_count(); ++i) {
      EXPECT_EQ(a.nodes()[i].operator_name, b.nodes()[i].operator_name);
      EXPECT_EQ(a.nodes()[i].properties, b.nodes()[i].properties);
      EXPECT_EQ(strip_ids(a.nodes()[i].fact), strip_ids(b.nodes()[i].fact));
    }
    for (Approach ap : {Approach::kStructured, Approach::kNgram}) {
      FingerprintConfig c;
      c.approach = ap;
      EXPECT_EQ(fingerprint(a, c), fingerprint(b, c)) << p.document.plan_id;
    }
  }
  EXPECT_EQ(first.size(), 3u);
}

TEST(Generate, PerturbationsStayWithinBudget) {
  SyntheticSpec spec = SyntheticSpec::standard(12, 40, 0.1);
  for (std::size_t fi = 0; fi < spec.families.size(); ++fi) {
    SplitRng rng(99 + fi);
    PlanSkeleton base = make_skeleton(spec.families[fi], rng);
    EXPECT_GE(static_cast<int>(base.nodes.size()), spec.families[fi].min_nodes);
    EXPECT_LE(static_cast<int>(base.nodes.size()), spec.families[fi].max_nodes);
    PlanDocument a = render_plan(base, "a", 1.0, 5, 6);
    PlanSkeleton changed = base;
    perturb_once(changed, rng);
    PlanDocument b = render_plan(changed, "b", 1.0, 5, 6);
    ASSERT_EQ(a.graph.node_count(), b.graph.node_count());
    int differing = 0;
    for (std::size_t i = 0; i < a.graph.node_count(); ++i) {
      differing += a.graph.nodes()[i].properties != b.graph.nodes()[i].properties;
    }
    EXPECT_EQ(differing, 1) << spec.families[fi].name;
  }
}

TEST(Generate, NamesDoNotReachProperties) {
  SplitRng rng(13);
  SyntheticSpec spec = SyntheticSpec::standard(1, 1, 0.0);
  for (const FamilyTemplate& f : spec.families) {
    PlanSkeleton s = make_skeleton(f, rng);
    PlanDocument a = render_plan(s, "a", std::nullopt, 100, 1);
    PlanDocument b = render_plan(s, "a", std::nullopt, 200, 2);
    bool any_fact_differs = false;
    for (std::size_t i = 0; i < a.graph.node_count(); ++i) {
      EXPECT_EQ(a.graph.nodes()[i].properties, b.graph.nodes()[i].properties);
      any_fact_differs |= a.graph.nodes()[i].fact != b.graph.nodes()[i].fact;
    }
    EXPECT_TRUE(any_fact_differs);
  }
}

TEST(Generate, FamiliesAreSeparableUnderBothApproaches) {
  std::vector<SyntheticPlan> plans = generate_plans(SyntheticSpec::standard(42, 30, 0.1));
  for (Approach ap : {Approach::kStructured, Approach::kNgram}) {
    FingerprintConfig c;
    c.approach = ap;
    std::vector<Hash64> sigs;
    for (const SyntheticPlan& p : plans) sigs.push_back(fingerprint(p.document.graph, c).node_sig);
    double intra = 0, inter = 0;
    std::size_t n_intra = 0, n_inter = 0;
    for (std::size_t i = 0; i < plans.size(); ++i) {
      for (std::size_t j = i + 1; j < plans.size(); ++j) {
        int d = hamming(sigs[i], sigs[j]);
        if (plans[i].family == plans[j].family) {
          intra += d;
          ++n_intra;
        } else {
          inter += d;
          ++n_inter;
        }
      }
    }
    EXPECT_GT(inter / n_inter, intra / n_intra) << approach_name(ap);
  }
}

TEST(SyntheticSpec, Validation) {
  SyntheticSpec spec = SyntheticSpec::standard(1, 10, 0.1);
  EXPECT_NO_THROW(spec.validate());
  SyntheticSpec bad = spec;
  bad.perturbation_rate = 1.5;
  EXPECT_THROW(bad.validate(), Error);
  bad = spec;
  bad.families[0].runtime_max = 10.0;  // spans Simple and Medium
  EXPECT_THROW(bad.validate(), Error);
  bad = spec;
  bad.families.clear();
  EXPECT_THROW(bad.validate(), Error);
  bad = spec;
  bad.families[1].join_operators.clear();
  EXPECT_THROW(bad.validate(), Error);
}

}  // namespace
}  // namespace qdagprint
