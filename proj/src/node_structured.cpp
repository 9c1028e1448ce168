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

#include "qdagprint/node_structured.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

namespace qdagprint {
namespace {

struct Alias {
  std::string_view spelling;
  std::int64_t code;
};

constexpr Alias kJoinAlgorithmAliases[] = {
    {"hash", 1},           {"shuffledhash", 1},      {"shuffledhashjoin", 1},
    {"sortmerge", 2},      {"sortmergejoin", 2},     {"broadcast", 3},
    {"broadcasthash", 3},  {"broadcasthashjoin", 3}, {"broadcastnestedloop", 3},
};
constexpr Alias kJoinSemanticsAliases[] = {
    {"inner", 1},     {"outer", 2},     {"leftouter", 2}, {"rightouter", 2},
    {"fullouter", 2}, {"anti", 3},      {"leftanti", 3},  {"semi", 4},
    {"leftsemi", 4},
};
constexpr Alias kBuildSideAliases[] = {
    {"left", 1}, {"buildleft", 1}, {"right", 2}, {"buildright", 2},
};
constexpr Alias kPartitioningAliases[] = {
    {"hash", 1},  {"hashpartitioning", 1},  {"range", 2},
    {"rangepartitioning", 2}, {"single", 3}, {"singlepartition", 3},
};
constexpr Alias kBroadcastModeAliases[] = {
    {"hashedrelation", 1}, {"hashedrelationbroadcastmode", 1},
    {"identity", 2},       {"identitybroadcastmode", 2},
};

std::string fold(std::string_view value) {
  std::string out;
  for (char c : value) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  return out;
}

template <std::size_t N>
std::int64_t lookup(const Alias (&table)[N], std::string_view folded) {
  for (const Alias& a : table) {
    if (a.spelling == folded) return a.code;
  }
  return 0;
}

std::int64_t to_count(const PropertyValue& value) {
  struct Visitor {
    std::int64_t operator()(bool b) const { return b ? 1 : 0; }
    std::int64_t operator()(std::int64_t i) const { return i; }
    std::int64_t operator()(double d) const {
      return std::isfinite(d) ? std::llround(d) : 0;
    }
    std::int64_t operator()(const std::string& s) const {
      std::int64_t v = 0;
      auto res = std::from_chars(s.data(), s.data() + s.size(), v);
      return res.ec == std::errc() ? v : 0;
    }
  };
  return std::max<std::int64_t>(0, std::visit(Visitor{}, value));
}

}  // namespace

std::optional<FeatureSlot> feature_slot(std::string_view key) {
  for (int i = 1; i < kFeatureSlotCount; ++i) {
    if (kFeatureKeys[i] == key) return static_cast<FeatureSlot>(i);
  }
  return std::nullopt;
}

bool is_categorical(FeatureSlot slot) {
  switch (slot) {
    case kJoinAlgorithm:
    case kJoinSemantics:
    case kBuildSide:
    case kPartitioningType:
    case kBroadcastMode:
      return true;
    default:
      return false;
  }
}

std::int64_t encode_category(FeatureSlot slot, std::string_view value) {
  std::string folded = fold(value);
  switch (slot) {
    case kJoinAlgorithm: return lookup(kJoinAlgorithmAliases, folded);
    case kJoinSemantics: return lookup(kJoinSemanticsAliases, folded);
    case kBuildSide: return lookup(kBuildSideAliases, folded);
    case kPartitioningType: return lookup(kPartitioningAliases, folded);
    case kBroadcastMode: return lookup(kBroadcastModeAliases, folded);
    default: return 0;
  }
}

std::int64_t bucketize_row_width(std::int64_t width) {
  if (width <= 0) return 0;
  std::int64_t lower = 1;
  while (lower <= width / 2) lower *= 2;
  std::int64_t upper = lower * 2;
  return (width - lower <= upper - width) ? lower : upper;
}

NodeFeatureVector extract_features(const PlanNode& node,
                                   const OperatorRegistry& registry) {
  NodeFeatureVector fv;
  fv.node_id = node.id;
  fv.values[kOperatorCode] = registry.code(node.operator_name);
  for (int i = 1; i < kFeatureSlotCount; ++i) {
    auto slot = static_cast<FeatureSlot>(i);
    auto it = node.properties.find(std::string(kFeatureKeys[i]));
    if (it == node.properties.end()) continue;
    const PropertyValue& value = it->second;
    std::int64_t v = 0;
    if (is_categorical(slot)) {
      if (const auto* s = std::get_if<std::string>(&value)) {
        v = encode_category(slot, *s);
      } else {
        v = to_count(value);
      }
    } else {
      v = to_count(value);
    }
    if (slot == kRowWidth) v = bucketize_row_width(v);
    fv.values[i] = v;
  }
  return fv;
}

std::string canonical_feature_string(const NodeFeatureVector& fv) {
  std::string out;
  for (int i = 0; i < kFeatureSlotCount; ++i) {
    if (i > 0) out.push_back('|');
    out += std::to_string(fv.values[i]);
  }
  return out;
}

Hash64 node_hash_structured(const NodeFeatureVector& fv) {
  return string_hash64(canonical_feature_string(fv));
}

Hash64 node_signature_structured(const QDag& graph,
                                 const StructuralProfile& profile,
                                 const OperatorRegistry& registry) {
  std::vector<WeightedHash> weighted;
  weighted.reserve(graph.node_count());
  for (const PlanNode& n : graph.nodes()) {
    weighted.push_back({node_hash_structured(extract_features(n, registry)),
                        static_cast<double>(profile.depth.at(n.id))});
  }
  return simhash(weighted);
}

}  // namespace qdagprint
