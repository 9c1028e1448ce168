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

#include "qdagprint/qdag.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <queue>
#include <sstream>

#include "qdagprint/error.hpp"

namespace qdagprint {

std::string render_property(const PropertyValue& value) {
  struct Renderer {
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(std::int64_t i) const { return std::to_string(i); }
    std::string operator()(double d) const {
      char buf[64];
      auto res = std::to_chars(buf, buf + sizeof(buf), d);
      return std::string(buf, res.ptr);
    }
    std::string operator()(const std::string& s) const { return s; }
  };
  return std::visit(Renderer{}, value);
}

namespace {

using Adjacency = std::unordered_map<NodeId, std::vector<NodeId>>;

// Returns one cycle (first node repeated at the end) among nodes that
// Kahn's algorithm could not order.
std::vector<NodeId> find_cycle(const std::vector<NodeId>& remaining,
                               const Adjacency& successors) {
  std::unordered_map<NodeId, int> state;  // 0 unvisited, 1 on stack, 2 done
  std::vector<NodeId> stack;
  std::vector<NodeId> cycle;

  std::function<bool(NodeId)> dfs = [&](NodeId u) {
    state[u] = 1;
    stack.push_back(u);
    auto it = successors.find(u);
    if (it != successors.end()) {
      for (NodeId v : it->second) {
        if (state[v] == 1) {
          auto from = std::find(stack.begin(), stack.end(), v);
          cycle.assign(from, stack.end());
          cycle.push_back(v);
          return true;
        }
        if (state[v] == 0 && dfs(v)) return true;
      }
    }
    stack.pop_back();
    state[u] = 2;
    return false;
  };

  for (NodeId start : remaining) {
    if (state[start] == 0 && dfs(start)) break;
  }
  return cycle;
}

// Kahn's algorithm with a min-heap ready set over an explicit edge list.
// Returns a (possibly partial, if cyclic) order.
std::vector<NodeId> kahn_order(std::span<const NodeId> ids,
                               std::span<const Edge> edges, bool reversed) {
  Adjacency successors;
  std::unordered_map<NodeId, std::uint32_t> indegree;
  for (NodeId id : ids) indegree[id] = 0;
  for (const Edge& e : edges) {
    NodeId from = reversed ? e.target : e.source;
    NodeId to = reversed ? e.source : e.target;
    successors[from].push_back(to);
    ++indegree[to];
  }

  std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>> ready;
  for (NodeId id : ids) {
    if (indegree[id] == 0) ready.push(id);
  }
  std::vector<NodeId> order;
  order.reserve(ids.size());
  while (!ready.empty()) {
    NodeId u = ready.top();
    ready.pop();
    order.push_back(u);
    auto it = successors.find(u);
    if (it == successors.end()) continue;
    for (NodeId v : it->second) {
      if (--indegree[v] == 0) ready.push(v);
    }
  }
  return order;
}

std::vector<NodeId> node_ids(std::span<const PlanNode> nodes) {
  std::vector<NodeId> ids;
  ids.reserve(nodes.size());
  for (const PlanNode& n : nodes) ids.push_back(n.id);
  return ids;
}

}  // namespace

void validate_dag(std::span<const PlanNode> nodes, std::span<const Edge> edges) {
  if (nodes.empty()) {
    throw Error(ErrorCode::kEmptyGraph, "graph has no nodes");
  }
  std::unordered_map<NodeId, bool> seen;
  for (const PlanNode& n : nodes) {
    if (n.operator_name.empty()) {
      throw Error(ErrorCode::kInvalidNode,
                  "node " + std::to_string(n.id) + " has an empty operator name");
    }
    if (!n.fact.starts_with(n.operator_name)) {
      throw Error(ErrorCode::kInvalidNode,
                  "node " + std::to_string(n.id) + " fact \"" + n.fact +
                      "\" does not begin with operator \"" + n.operator_name +
                      "\"");
    }
    if (!seen.emplace(n.id, true).second) {
      throw Error(ErrorCode::kDuplicateNodeId,
                  "duplicate node id " + std::to_string(n.id));
    }
  }
  for (const Edge& e : edges) {
    for (NodeId endpoint : {e.source, e.target}) {
      if (!seen.contains(endpoint)) {
        throw Error(ErrorCode::kDanglingEdge,
                    "edge " + std::to_string(e.source) + "->" +
                        std::to_string(e.target) + " references missing node " +
                        std::to_string(endpoint));
      }
    }
  }

  std::vector<NodeId> ids = node_ids(nodes);
  std::vector<NodeId> order = kahn_order(ids, edges, /*reversed=*/false);
  if (order.size() == ids.size()) return;

  std::unordered_map<NodeId, bool> ordered;
  for (NodeId id : order) ordered[id] = true;
  std::vector<NodeId> remaining;
  for (NodeId id : ids) {
    if (!ordered.contains(id)) remaining.push_back(id);
  }
  std::sort(remaining.begin(), remaining.end());
  Adjacency successors;
  for (const Edge& e : edges) {
    if (!ordered.contains(e.source) && !ordered.contains(e.target)) {
      successors[e.source].push_back(e.target);
    }
  }
  std::vector<NodeId> cycle = find_cycle(remaining, successors);
  std::ostringstream msg;
  msg << "cycle detected:";
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    msg << (i == 0 ? " " : " -> ") << cycle[i];
  }
  throw Error(ErrorCode::kCycleDetected, msg.str());
}

QDag::QDag(std::string id, std::vector<PlanNode> nodes, std::vector<Edge> edges)
    : id_(std::move(id)), nodes_(std::move(nodes)), edges_(std::move(edges)) {
  validate_dag(nodes_, edges_);
  position_.reserve(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    position_.emplace(nodes_[i].id, i);
  }
}

const PlanNode& QDag::node(NodeId id) const {
  auto it = position_.find(id);
  if (it == position_.end()) {
    throw Error(ErrorCode::kDanglingEdge,
                "no node with id " + std::to_string(id) + " in " + id_);
  }
  return nodes_[it->second];
}

bool structurally_equal(const QDag& a, const QDag& b) {
  if (a.id() != b.id() || a.node_count() != b.node_count() ||
      a.edges().size() != b.edges().size()) {
    return false;
  }
  for (const PlanNode& n : a.nodes()) {
    if (!b.contains(n.id) || !(b.node(n.id) == n)) return false;
  }
  std::vector<Edge> ea = a.edges();
  std::vector<Edge> eb = b.edges();
  std::sort(ea.begin(), ea.end());
  std::sort(eb.begin(), eb.end());
  return ea == eb;
}

std::vector<NodeId> topological_order(const QDag& graph) {
  std::vector<NodeId> ids = node_ids(graph.nodes());
  return kahn_order(ids, graph.edges(), /*reversed=*/false);
}

StructuralProfile structural_profile(const QDag& graph) {
  StructuralProfile p;
  std::vector<NodeId> ids = node_ids(graph.nodes());
  std::vector<NodeId> forward = kahn_order(ids, graph.edges(), false);
  std::vector<NodeId> backward = kahn_order(ids, graph.edges(), true);
  for (std::uint32_t i = 0; i < forward.size(); ++i) {
    p.forward_order[forward[i]] = i;
  }
  for (std::uint32_t i = 0; i < backward.size(); ++i) {
    p.backward_order[backward[i]] = i;
  }

  Adjacency predecessors;
  for (NodeId id : ids) {
    p.in_degree[id] = 0;
    p.out_degree[id] = 0;
  }
  for (const Edge& e : graph.edges()) {
    ++p.out_degree[e.source];
    ++p.in_degree[e.target];
    predecessors[e.target].push_back(e.source);
  }

  for (NodeId v : forward) {
    std::uint32_t d = 1;
    auto it = predecessors.find(v);
    if (it != predecessors.end()) {
      for (NodeId u : it->second) d = std::max(d, p.depth[u] + 1);
    }
    p.depth[v] = d;
  }
  return p;
}

QDag reverse_edges(const QDag& graph) {
  std::vector<Edge> reversed;
  reversed.reserve(graph.edges().size());
  for (const Edge& e : graph.edges()) reversed.push_back({e.target, e.source});
  return QDag(graph.id(), graph.nodes(), std::move(reversed));
}

}  // namespace qdagprint
