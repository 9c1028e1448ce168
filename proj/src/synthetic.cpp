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

#include <algorithm>
#include <cmath>
#include <fstream>

#include "qdagprint/error.hpp"
#include "qdagprint/fingerprint_index.hpp"

namespace qdagprint {

std::int64_t SplitRng::uniform_int(std::int64_t lo, std::int64_t hi) {
  auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(span == 0 ? next() : next() % span);
}

double SplitRng::uniform_real(double lo, double hi) {
  double unit = static_cast<double>(next() >> 11) * 0x1.0p-53;
  return lo + unit * (hi - lo);
}

namespace {

std::uint64_t mix(std::uint64_t x) {
  // splitmix64 finalizer
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t mix(std::uint64_t a, std::uint64_t b) { return mix(a ^ mix(b)); }

constexpr std::string_view kNumericTypes[] = {"int", "bigint", "double",
                                              "decimal(12,2)", "date"};
constexpr std::string_view kNameWords[] = {
    "order", "item", "price", "qty", "cust", "supp", "part", "nation",
    "region", "ship", "date", "key", "name", "addr", "phone", "comment",
    "status", "mode", "brand", "size", "store", "web", "promo", "income"};
constexpr std::int64_t kPartitionChoices[] = {50, 100, 200, 400};
constexpr std::string_view kSemantics[] = {"Inner", "Inner", "Inner",
                                           "LeftOuter", "LeftSemi", "LeftAnti"};

template <typename T, std::size_t N>
const T& pick(const T (&items)[N], SplitRng& rng) {
  return items[rng.uniform_int(0, N - 1)];
}

std::string random_type(SplitRng& rng) {
  if (rng.bernoulli(0.35)) return "string";
  return std::string(pick(kNumericTypes, rng));
}

std::vector<std::string> random_types(SplitRng& rng, int lo, int hi) {
  std::vector<std::string> out(rng.uniform_int(lo, hi));
  for (auto& t : out) t = random_type(rng);
  return out;
}

int type_width(const std::string& type) {
  if (type == "string") return 20;
  if (type == "int" || type == "date") return 4;
  if (type == "decimal(12,2)") return 16;
  return 8;
}

bool is_join(const std::string& op) { return op.find("Join") != std::string::npos; }
bool is_hash_join(const std::string& op) {
  return op == "BroadcastHashJoin" || op == "ShuffledHashJoin";
}
bool is_aggregate(const std::string& op) { return op.find("Aggregate") != std::string::npos; }

SkeletonNode make_unary(const std::string& op, SplitRng& rng) {
  SkeletonNode n;
  n.op = op;
  if (op == "Filter") {
    n.columns = random_types(rng, 1, 2);
  } else if (op == "Project") {
    n.columns = random_types(rng, 2, 6);
  } else if (is_aggregate(op)) {
    n.keys = random_types(rng, 1, 3);
    n.columns = random_types(rng, 1, 4);
  } else if (op == "Exchange") {
    n.partitioning = rng.bernoulli(0.7) ? "hash" : "range";
    n.keys = random_types(rng, 1, 2);
    n.partitions = pick(kPartitionChoices, rng);
  } else if (op == "Sort") {
    n.keys = random_types(rng, 1, 3);
  } else if (op == "Window") {
    n.columns = random_types(rng, 1, 3);
    n.keys = random_types(rng, 1, 2);
  } else if (op == "Expand") {
    n.columns = random_types(rng, 2, 5);
  } else if (op == "BroadcastExchange") {
    n.broadcast_mode = "HashedRelation";
  }
  return n;
}

SkeletonNode make_join(const std::string& op, SplitRng& rng) {
  SkeletonNode n;
  n.op = op;
  n.keys = random_types(rng, 1, 3);
  n.join_semantics = std::string(pick(kSemantics, rng));
  if (is_hash_join(op)) n.build_side = rng.bernoulli(0.8) ? "Right" : "Left";
  return n;
}

// Feature properties implied by a skeleton node.
PropertyMap derive_properties(const SkeletonNode& n) {
  PropertyMap p;
  std::int64_t numeric = 0;
  std::int64_t strings = 0;
  for (const auto* list : {&n.columns, &n.keys}) {
    for (const std::string& t : *list) (t == "string" ? strings : numeric)++;
  }
  if (numeric > 0) p["num_numeric_attrs"] = numeric;
  if (strings > 0) p["num_string_attrs"] = strings;

  auto count = [](const std::vector<std::string>& v) {
    return static_cast<std::int64_t>(v.size());
  };
  if (n.op == "Scan") {
    std::int64_t width = 0;
    for (const std::string& t : n.columns) width += type_width(t);
    p["row_width"] = width;
  } else if (n.op == "Project" || n.op == "Window" || n.op == "Expand") {
    p["num_result_exprs"] = count(n.columns);
  }
  if (is_aggregate(n.op)) {
    p["num_grouping_exprs"] = count(n.keys);
    p["num_result_exprs"] = count(n.columns);
  }
  if (n.op == "Sort") p["num_keys"] = count(n.keys);
  if (n.op == "Exchange") {
    p["partitioning_type"] = n.partitioning;
    p["num_partitions"] = n.partitioning == "single" ? 1 : n.partitions;
  }
  if (is_join(n.op)) {
    p["num_keys"] = count(n.keys);
    p["join_semantics"] = n.join_semantics;
    if (n.op == "SortMergeJoin") p["join_algorithm"] = std::string("sort-merge");
    if (n.op == "BroadcastHashJoin") p["join_algorithm"] = std::string("broadcast");
    if (n.op == "ShuffledHashJoin") p["join_algorithm"] = std::string("hash");
    if (!n.build_side.empty()) p["build_side"] = n.build_side;
  }
  if (!n.broadcast_mode.empty()) p["broadcast_mode"] = std::string("hashed-relation");
  return p;
}

class FactRenderer {
 public:
  FactRenderer(std::uint64_t name_seed, std::uint64_t expr_id_seed)
      : name_seed_(name_seed), next_expr_id_(expr_id_seed % 9000 + 1) {}

  std::string column(std::size_t node, std::size_t slot, const std::string& type) {
    std::uint64_t h = mix(name_seed_, mix(node, slot));
    std::string name = std::string(kNameWords[h % std::size(kNameWords)]) + "_" +
                       std::to_string((h >> 16) % 50);
    return name + "#" + std::to_string(next_expr_id_++) + ":" + type;
  }

  std::string table(std::size_t node) {
    std::uint64_t h = mix(name_seed_, mix(node, 0xfeed));
    return "t_" + std::string(kNameWords[h % std::size(kNameWords)]) +
           std::to_string((h >> 20) % 10);
  }

  std::string list(std::size_t node, std::size_t first_slot,
                   const std::vector<std::string>& types, std::string_view wrap = {},
                   std::string_view suffix = {}) {
    std::string out;
    for (std::size_t i = 0; i < types.size(); ++i) {
      if (i > 0) out += ", ";
      std::string col = column(node, first_slot + i, types[i]);
      out += wrap.empty() ? col : std::string(wrap) + "(" + col + ")";
      out += suffix;
    }
    return out;
  }

  std::string fact(std::size_t id, const SkeletonNode& n) {
    const std::string& op = n.op;
    if (op == "Scan") return "Scan " + table(id) + " [" + list(id, 0, n.columns) + "]";
    if (op == "Filter") {
      std::string cond;
      for (std::size_t i = 0; i < n.columns.size(); ++i) {
        if (i > 0) cond += " AND ";
        cond += "isnotnull(" + column(id, i, n.columns[i]) + ")";
      }
      return "Filter (" + cond + ")";
    }
    if (op == "Project" || op == "Expand") return op + " [" + list(id, 0, n.columns) + "]";
    if (is_aggregate(op)) {
      return op + " keys=[" + list(id, 0, n.keys) + "], functions=[" +
             list(id, 100, n.columns, "sum") + "]";
    }
    if (op == "Exchange") {
      if (n.partitioning == "single") return "Exchange SinglePartition";
      if (n.partitioning == "range") {
        return "Exchange rangepartitioning(" + list(id, 0, n.keys, {}, " ASC") + ", " +
               std::to_string(n.partitions) + ")";
      }
      return "Exchange hashpartitioning(" + list(id, 0, n.keys) + ", " +
             std::to_string(n.partitions) + ")";
    }
    if (op == "Sort") return "Sort [" + list(id, 0, n.keys, {}, " ASC NULLS FIRST") + "]";
    if (op == "Window") {
      return "Window [" + list(id, 100, n.columns, "rank") + "], [" + list(id, 0, n.keys) + "]";
    }
    if (is_join(op)) {
      std::string f = op + " [" + list(id, 0, n.keys) + "], [" + list(id, 50, n.keys) +
                      "], " + n.join_semantics;
      if (!n.build_side.empty()) f += ", Build" + n.build_side;
      return f;
    }
    if (op == "BroadcastExchange") return "BroadcastExchange HashedRelationBroadcastMode";
    if (op == "Limit") return "Limit 100";
    return op;
  }

 private:
  std::uint64_t name_seed_;
  std::uint64_t next_expr_id_;
};

bool in_band(double lo, double hi_exclusive) {
  double hi = std::nextafter(hi_exclusive, lo);
  return lo >= 0 && lo < hi_exclusive && classify_runtime(lo) == classify_runtime(hi);
}

}  // namespace

std::size_t PlanSkeleton::property_count() const {
  std::size_t total = 0;
  for (const SkeletonNode& n : nodes) total += derive_properties(n).size();
  return total;
}

SyntheticSpec SyntheticSpec::standard(std::uint64_t seed, std::size_t count_per_family,
                                      double perturbation_rate) {
  SyntheticSpec spec;
  spec.seed = seed;
  spec.count_per_family = count_per_family;
  spec.perturbation_rate = perturbation_rate;
  spec.families = {
      {"simple", 4, 7, {"Filter", "Project", "HashAggregate", "Exchange", "Sort", "Limit"},
       {}, FanIn::kChain, 0.5, 4.5},
      {"medium", 9, 14, {"Filter", "Project", "Exchange", "Sort", "HashAggregate"},
       {"SortMergeJoin"}, FanIn::kJoinTree, 6.0, 28.0},
      {"complex", 18, 28, {"Project", "Window", "Expand", "HashAggregate", "Filter", "Exchange"},
       {"BroadcastHashJoin", "ShuffledHashJoin", "SortMergeJoin"}, FanIn::kWide, 35.0, 300.0},
  };
  return spec;
}

void SyntheticSpec::validate() const {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kInvalidArgument, "synthetic spec: " + what);
  };
  if (families.empty()) fail("no families");
  if (count_per_family == 0) fail("count per family must be positive");
  if (!(perturbation_rate >= 0 && perturbation_rate <= 1)) fail("perturbation rate outside [0, 1]");
  for (const FamilyTemplate& f : families) {
    if (f.name.empty()) fail("family without a name");
    if (f.min_nodes < 1 || f.max_nodes < f.min_nodes) fail(f.name + ": bad node range");
    if (f.fan_in == FanIn::kChain && f.unary_operators.empty() && f.max_nodes > 1) {
      fail(f.name + ": chain family needs unary operators");
    }
    if (f.fan_in != FanIn::kChain && f.join_operators.empty()) {
      fail(f.name + ": join family needs join operators");
    }
    if (!std::isfinite(f.runtime_min) || !std::isfinite(f.runtime_max) ||
        !in_band(f.runtime_min, f.runtime_max)) {
      fail(f.name + ": runtime range must lie within one complexity band");
    }
  }
}

PlanSkeleton make_skeleton(const FamilyTemplate& family, SplitRng& rng) {
  PlanSkeleton s;
  auto target = static_cast<std::size_t>(rng.uniform_int(family.min_nodes, family.max_nodes));
  auto add = [&](SkeletonNode node, std::initializer_list<NodeId> inputs) {
    auto id = static_cast<NodeId>(s.nodes.size());
    s.nodes.push_back(std::move(node));
    for (NodeId in : inputs) s.edges.push_back({in, id});
    return id;
  };

  std::size_t leaves = 1;
  if (family.fan_in == FanIn::kJoinTree) leaves = std::max<std::size_t>(2, target / 5);
  if (family.fan_in == FanIn::kWide) leaves = std::max<std::size_t>(3, target / 4);

  std::vector<NodeId> frontier;
  for (std::size_t i = 0; i < leaves; ++i) {
    SkeletonNode scan;
    scan.op = "Scan";
    scan.columns = random_types(rng, 3, 7);
    frontier.push_back(add(std::move(scan), {}));
  }

  while (s.nodes.size() < target || frontier.size() > 1) {
    if (frontier.size() == 1 && family.unary_operators.empty()) break;
    bool budget_left = s.nodes.size() < target;
    bool combine = frontier.size() > 1 && (!budget_left || rng.bernoulli(0.35) ||
                                           family.unary_operators.empty());
    if (combine) {
      if (family.fan_in == FanIn::kWide && frontier.size() >= 3 && rng.bernoulli(0.4)) {
        auto arity = static_cast<std::size_t>(
            rng.uniform_int(3, std::min<std::int64_t>(4, frontier.size())));
        SkeletonNode u;
        u.op = "Union";
        auto id = static_cast<NodeId>(s.nodes.size());
        s.nodes.push_back(std::move(u));
        for (std::size_t i = 0; i < arity; ++i) s.edges.push_back({frontier[i], id});
        frontier.erase(frontier.begin(), frontier.begin() + arity);
        frontier.push_back(id);
        continue;
      }
      const std::string& op = family.join_operators[rng.uniform_int(
          0, static_cast<std::int64_t>(family.join_operators.size()) - 1)];
      NodeId left = frontier[0];
      NodeId right = frontier[1];
      if (op == "BroadcastHashJoin") {
        right = add(make_unary("BroadcastExchange", rng), {right});
      }
      NodeId join = add(make_join(op, rng), {left, right});
      frontier.erase(frontier.begin(), frontier.begin() + 2);
      frontier.push_back(join);
      continue;
    }
    auto slot = static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<std::int64_t>(frontier.size()) - 1));
    const std::string& op = family.unary_operators[rng.uniform_int(
        0, static_cast<std::int64_t>(family.unary_operators.size()) - 1)];
    frontier[slot] = add(make_unary(op, rng), {frontier[slot]});
  }
  return s;
}

void perturb_once(PlanSkeleton& skeleton, SplitRng& rng) {
  enum Knob { kAddColumn, kDropColumn, kAddKey, kDropKey, kPartitionCount, kJoinKind, kBuildSide };
  struct Choice {
    std::size_t node;
    Knob knob;
  };
  std::vector<Choice> choices;
  for (std::size_t i = 0; i < skeleton.nodes.size(); ++i) {
    const SkeletonNode& n = skeleton.nodes[i];
    if (!n.columns.empty()) {
      choices.push_back({i, kAddColumn});
      if (n.columns.size() > 1) choices.push_back({i, kDropColumn});
    }
    if (!n.keys.empty()) {
      choices.push_back({i, kAddKey});
      if (n.keys.size() > 1) choices.push_back({i, kDropKey});
    }
    if (n.op == "Exchange" && n.partitioning != "single") choices.push_back({i, kPartitionCount});
    if (!n.join_semantics.empty()) choices.push_back({i, kJoinKind});
    if (!n.build_side.empty()) choices.push_back({i, kBuildSide});
  }
  if (choices.empty()) return;
  Choice c = choices[rng.uniform_int(0, static_cast<std::int64_t>(choices.size()) - 1)];
  SkeletonNode& n = skeleton.nodes[c.node];
  switch (c.knob) {
    case kAddColumn: n.columns.push_back(random_type(rng)); break;
    case kDropColumn: n.columns.pop_back(); break;
    case kAddKey: n.keys.push_back(random_type(rng)); break;
    case kDropKey: n.keys.pop_back(); break;
    case kPartitionCount: {
      std::int64_t p = n.partitions;
      while (p == n.partitions) p = pick(kPartitionChoices, rng);
      n.partitions = p;
      break;
    }
    case kJoinKind: {
      std::string s = n.join_semantics;
      while (s == n.join_semantics) s = std::string(pick(kSemantics, rng));
      n.join_semantics = s;
      break;
    }
    case kBuildSide: n.build_side = n.build_side == "Left" ? "Right" : "Left"; break;
  }
}

PlanDocument render_plan(const PlanSkeleton& skeleton, const std::string& plan_id,
                         std::optional<double> runtime_seconds, std::uint64_t name_seed,
                         std::uint64_t expr_id_seed) {
  FactRenderer renderer(name_seed, expr_id_seed);
  std::vector<PlanNode> nodes;
  nodes.reserve(skeleton.nodes.size());
  for (std::size_t i = 0; i < skeleton.nodes.size(); ++i) {
    const SkeletonNode& n = skeleton.nodes[i];
    nodes.push_back(PlanNode{static_cast<NodeId>(i), n.op, renderer.fact(i, n),
                             derive_properties(n)});
  }
  return PlanDocument{plan_id, runtime_seconds, QDag(plan_id, std::move(nodes), skeleton.edges)};
}

std::vector<SyntheticPlan> generate_plans(const SyntheticSpec& spec) {
  spec.validate();
  std::size_t width = std::max<std::size_t>(3, std::to_string(spec.count_per_family - 1).size());
  std::vector<SyntheticPlan> plans;
  plans.reserve(spec.families.size() * spec.count_per_family);
  for (std::size_t fi = 0; fi < spec.families.size(); ++fi) {
    const FamilyTemplate& family = spec.families[fi];
    SplitRng family_rng(mix(spec.seed, fi));
    PlanSkeleton base = make_skeleton(family, family_rng);
    std::uint64_t name_seed = family_rng.next();
    auto budget = static_cast<std::int64_t>(
        std::floor(spec.perturbation_rate * static_cast<double>(base.property_count())));

    for (std::size_t i = 0; i < spec.count_per_family; ++i) {
      SplitRng rng(mix(mix(spec.seed, fi), i + 1));
      PlanSkeleton skeleton = base;
      std::int64_t changes = rng.uniform_int(0, budget);
      for (std::int64_t c = 0; c < changes; ++c) perturb_once(skeleton, rng);
      double runtime = std::floor(rng.uniform_real(family.runtime_min, family.runtime_max) * 1000) / 1000;
      runtime = std::max(runtime, family.runtime_min);
      std::string index = std::to_string(i);
      std::string plan_id = family.name + "-" + std::string(width - index.size(), '0') + index;
      plans.push_back({render_plan(skeleton, plan_id, runtime, name_seed, rng.next()), family.name});
    }
  }
  std::sort(plans.begin(), plans.end(), [](const SyntheticPlan& a, const SyntheticPlan& b) {
    return a.document.plan_id < b.document.plan_id;
  });
  return plans;
}

Corpus generate_corpus(const SyntheticSpec& spec, const std::filesystem::path& out_dir) {
  std::vector<SyntheticPlan> plans = generate_plans(spec);
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + out_dir.string() + ": " + ec.message());

  Corpus corpus;
  corpus.source_path = out_dir.string();
  for (SyntheticPlan& p : plans) {
    std::filesystem::path file = out_dir / (p.document.plan_id + ".json");
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    out << render_plan_json(p.document);
    if (!out.flush()) throw Error(ErrorCode::kIo, "cannot write " + file.string());
    corpus.documents.push_back(std::move(p.document));
  }
  return corpus;
}

}  // namespace qdagprint
