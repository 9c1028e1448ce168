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

#include <algorithm>

namespace qdagprint {

namespace {

constexpr bool layout_is_disjoint() {
  std::uint64_t used = 0;
  for (const EdgeField& f : kEdgeLayout) {
    std::uint64_t mask = f.max_value() << f.offset;
    if (used & mask) return false;
    if (f.offset + f.width > 64) return false;
    used |= mask;
  }
  return (used & 0xff) == 0;
}
static_assert(layout_is_disjoint());

void fill_endpoint(std::array<std::uint64_t, kEdgeFieldCount>& values,
                   int first_field, NodeId id, const QDag& graph,
                   const StructuralProfile& profile,
                   const OperatorRegistry& registry) {
  values[first_field + 0] = registry.code(graph.node(id).operator_name);
  values[first_field + 1] = profile.forward_order.at(id);
  values[first_field + 2] = profile.backward_order.at(id);
  values[first_field + 3] = profile.in_degree.at(id);
  values[first_field + 4] = profile.out_degree.at(id);
}

}  // namespace

std::uint64_t pack_edge_fields(
    const std::array<std::uint64_t, kEdgeFieldCount>& values) {
  std::uint64_t word = 0;
  for (int i = 0; i < kEdgeFieldCount; ++i) {
    const EdgeField& f = kEdgeLayout[i];
    word |= std::min(values[i], f.max_value()) << f.offset;
  }
  return word;
}

Hash64 edge_signature(const QDag& graph, const StructuralProfile& profile,
                      const OperatorRegistry& registry) {
  std::uint64_t sum = 0;
  std::array<std::uint64_t, kEdgeFieldCount> values{};
  if (graph.edges().empty()) {
    for (const PlanNode& n : graph.nodes()) {
      values.fill(0);
      fill_endpoint(values, kSrcOperator, n.id, graph, profile, registry);
      sum += pack_edge_fields(values);
    }
    return Hash64{sum};
  }
  for (const Edge& e : graph.edges()) {
    fill_endpoint(values, kSrcOperator, e.source, graph, profile, registry);
    fill_endpoint(values, kTgtOperator, e.target, graph, profile, registry);
    sum += pack_edge_fields(values);
  }
  return Hash64{sum};
}

}  // namespace qdagprint
