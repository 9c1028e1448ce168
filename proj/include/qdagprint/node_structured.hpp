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

// Approach #1 node signature: each node becomes a fixed-slot feature vector
// built only from counts and categories (never table or column names), the
// vector is rendered as "v0|v1|...|v12" and hashed, and the node hashes are
// combined with a SimHash weighted by node depth.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

#include "qdagprint/operator_registry.hpp"
#include "qdagprint/qdag.hpp"
#include "qdagprint/simhash.hpp"

namespace qdagprint {

inline constexpr std::string_view kFeatureSchemaVersion = "features-v1";

enum FeatureSlot : int {
  kOperatorCode,
  kJoinAlgorithm,
  kJoinSemantics,
  kBuildSide,
  kPartitioningType,
  kNumPartitions,
  kBroadcastMode,
  kNumNumericAttrs,
  kNumStringAttrs,
  kNumGroupingExprs,
  kNumResultExprs,
  kNumKeys,
  kRowWidth,
  kFeatureSlotCount,
};

// Canonical property keys, indexed by FeatureSlot. Slot 0 is derived from
// the operator name and has no property key of its own.
inline constexpr std::array<std::string_view, kFeatureSlotCount> kFeatureKeys = {
    "operator_code",    "join_algorithm",    "join_semantics",
    "build_side",       "partitioning_type", "num_partitions",
    "broadcast_mode",   "num_numeric_attrs", "num_string_attrs",
    "num_grouping_exprs", "num_result_exprs", "num_keys",
    "row_width",
};

std::optional<FeatureSlot> feature_slot(std::string_view key);
bool is_categorical(FeatureSlot slot);

// Categorical vocabularies; 0 is the absent sentinel, real codes start at 1.
//   join_algorithm:    hash 1, sort-merge 2, broadcast 3
//   join_semantics:    inner 1, outer 2, anti 3, semi 4
//   build_side:        left 1, right 2
//   partitioning_type: hash 1, range 2, single 3
//   broadcast_mode:    hashed-relation 1, identity 2
// Matching ignores case and any non-alphanumeric characters, and accepts
// common plan spellings ("LeftOuter", "BuildRight", "hashpartitioning").
// Unknown values encode as 0.
std::int64_t encode_category(FeatureSlot slot, std::string_view value);

// Nearest power of two, ties toward the smaller one; 0 stays 0.
std::int64_t bucketize_row_width(std::int64_t width);

struct NodeFeatureVector {
  NodeId node_id = 0;
  std::array<std::int64_t, kFeatureSlotCount> values{};

  friend bool operator==(const NodeFeatureVector&,
                         const NodeFeatureVector&) = default;
};

NodeFeatureVector extract_features(const PlanNode& node,
                                   const OperatorRegistry& registry);

std::string canonical_feature_string(const NodeFeatureVector& fv);

Hash64 node_hash_structured(const NodeFeatureVector& fv);

Hash64 node_signature_structured(const QDag& graph,
                                 const StructuralProfile& profile,
                                 const OperatorRegistry& registry);

}  // namespace qdagprint
