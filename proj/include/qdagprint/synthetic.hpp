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

// Seeded synthetic plan corpora. Each family is one plan skeleton (operator
// shape plus per-node column/key/partitioning knobs) bound to a runtime band;
// every plan of a family is that skeleton with a few knob perturbations and
// a fresh runtime drawn from the band.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qdagprint/plan_ingest.hpp"

namespace qdagprint {

// Portable draws over mt19937_64 (whose output sequence is standardized),
// so generated corpora are identical across standard libraries.
class SplitRng {
 public:
  explicit SplitRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform in [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  // Uniform in [lo, hi).
  double uniform_real(double lo, double hi);
  bool bernoulli(double p) { return uniform_real(0.0, 1.0) < p; }

 private:
  std::mt19937_64 engine_;
};

enum class FanIn {
  kChain,     // unary operators only
  kJoinTree,  // binary joins over several scan pipelines
  kWide,      // joins plus n-ary unions
};

struct FamilyTemplate {
  std::string name;
  int min_nodes = 4;
  int max_nodes = 8;
  // Unary operators drawn between scans and combiners.
  std::vector<std::string> unary_operators;
  // Binary join operators (kJoinTree, kWide).
  std::vector<std::string> join_operators;
  FanIn fan_in = FanIn::kChain;
  // Runtime drawn uniformly from [runtime_min, runtime_max); both ends must
  // fall in one complexity band.
  double runtime_min = 0.5;
  double runtime_max = 4.5;
};

struct SyntheticSpec {
  std::uint64_t seed = 42;
  std::vector<FamilyTemplate> families;
  std::size_t count_per_family = 100;
  // Each plan changes between 0 and floor(rate * property count) knobs of
  // its family skeleton.
  double perturbation_rate = 0.1;

  // Three families: a short Simple pipeline, a Medium sort-merge join tree
  // and a Complex wide plan with broadcasts, windows and unions.
  static SyntheticSpec standard(std::uint64_t seed, std::size_t count_per_family,
                                double perturbation_rate);

  // Throws Error(InvalidArgument) for empty families, bad node ranges,
  // runtime ranges spanning two bands or a rate outside [0, 1].
  void validate() const;
};

struct SkeletonNode {
  std::string op;
  std::vector<std::string> columns;  // type names: "int", "string", ...
  std::vector<std::string> keys;     // grouping, sort or join key types
  std::string partitioning;          // Exchange: hash, range, single
  std::int64_t partitions = 0;
  std::string join_semantics;        // joins: Inner, LeftOuter, LeftAnti, LeftSemi
  std::string build_side;            // hash joins: Left, Right
  std::string broadcast_mode;        // BroadcastExchange
};

struct PlanSkeleton {
  std::vector<SkeletonNode> nodes;  // node id = position
  std::vector<Edge> edges;          // child -> parent

  // Number of feature properties the rendered plan carries.
  std::size_t property_count() const;
};

PlanSkeleton make_skeleton(const FamilyTemplate& family, SplitRng& rng);

// Applies one knob change to one node: add or drop a column or key, or
// switch partition count, join semantics or build side.
void perturb_once(PlanSkeleton& skeleton, SplitRng& rng);

// Renders facts and properties. `name_seed` picks table and column names,
// `expr_id_seed` the per-instance "#<n>" expression ids; neither affects
// the properties.
PlanDocument render_plan(const PlanSkeleton& skeleton, const std::string& plan_id,
                         std::optional<double> runtime_seconds,
                         std::uint64_t name_seed, std::uint64_t expr_id_seed);

struct SyntheticPlan {
  PlanDocument document;
  std::string family;
};

// Pure function of the spec. Plan ids are "<family>-<NNN>".
std::vector<SyntheticPlan> generate_plans(const SyntheticSpec& spec);

// Writes one "<plan_id>.json" per plan into `out_dir` (created if needed)
// and returns the generated corpus.
Corpus generate_corpus(const SyntheticSpec& spec, const std::filesystem::path& out_dir);

}  // namespace qdagprint
