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

// Graph model for query-execution DAGs (QDAGs) and the structural
// quantities every fingerprint is computed from.
//
// Edges follow data flow: child operator -> parent operator. A scan is a
// source, the final operator of a plan is usually the single sink.

#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

namespace qdagprint {

using NodeId = std::uint32_t;

// Scalar property value as it appears in a plan document.
using PropertyValue = std::variant<bool, std::int64_t, double, std::string>;
using PropertyMap = std::map<std::string, PropertyValue>;

std::string render_property(const PropertyValue& value);

struct PlanNode {
  NodeId id = 0;
  std::string operator_name;
  // Full plan line: operator name followed by its rendered attributes.
  std::string fact;
  PropertyMap properties;

  friend bool operator==(const PlanNode&, const PlanNode&) = default;
};

struct Edge {
  NodeId source = 0;
  NodeId target = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Throws Error (EmptyGraph, InvalidNode, DuplicateNodeId, DanglingEdge,
// CycleDetected) when nodes/edges do not form a well-formed DAG. The
// CycleDetected message lists one offending cycle.
void validate_dag(std::span<const PlanNode> nodes, std::span<const Edge> edges);

// Immutable, validated DAG. Construction runs validate_dag.
class QDag {
 public:
  QDag(std::string id, std::vector<PlanNode> nodes, std::vector<Edge> edges);

  const std::string& id() const { return id_; }
  const std::vector<PlanNode>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t node_count() const { return nodes_.size(); }

  bool contains(NodeId id) const { return position_.contains(id); }
  // Throws Error(DanglingEdge) for an unknown id.
  const PlanNode& node(NodeId id) const;

  // Same node and edge lists, order-sensitive.
  friend bool operator==(const QDag& a, const QDag& b) {
    return a.id_ == b.id_ && a.nodes_ == b.nodes_ && a.edges_ == b.edges_;
  }

 private:
  std::string id_;
  std::vector<PlanNode> nodes_;
  std::vector<Edge> edges_;
  std::unordered_map<NodeId, std::size_t> position_;
};

// Order-insensitive comparison: same id, same node set, same edge multiset.
bool structurally_equal(const QDag& a, const QDag& b);

struct StructuralProfile {
  std::map<NodeId, std::uint32_t> forward_order;
  std::map<NodeId, std::uint32_t> backward_order;
  std::map<NodeId, std::uint32_t> in_degree;
  std::map<NodeId, std::uint32_t> out_degree;
  // 1 for sources, otherwise 1 + longest path (in edges) from a source.
  std::map<NodeId, std::uint32_t> depth;

  friend bool operator==(const StructuralProfile&,
                         const StructuralProfile&) = default;
};

// Kahn's algorithm; ties in the ready set go to the smallest node id, so the
// result depends only on ids and edges, not on list order.
std::vector<NodeId> topological_order(const QDag& graph);

StructuralProfile structural_profile(const QDag& graph);

QDag reverse_edges(const QDag& graph);

}  // namespace qdagprint
