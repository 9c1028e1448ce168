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

// Plan ingestion: JSON and indented-text plan documents, reuse-reference
// expansion, and corpus loading.
//
// JSON document:
//   {"plan_id": "q1", "runtime_seconds": 4.2,
//    "nodes": [{"id": 0, "operator": "Scan", "fact": "Scan lineitem",
//               "properties": {"row_width": 48}}],
//    "edges": [[0, 1]]}
//
// Text document (.plan): optional "-- key: value" header lines, then one
// operator per line, root first, two spaces of indentation per level:
//   -- plan_id: q1
//   -- runtime_seconds: 12.5
//   Project [a:int]
//     Filter (a > 5)
//       Scan t1

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qdagprint/qdag.hpp"

namespace qdagprint {

struct PlanDocument {
  std::string plan_id;
  std::optional<double> runtime_seconds;
  QDag graph;
};

// Order-insensitive equality of the graphs plus equal id and runtime.
bool structurally_equal(const PlanDocument& a, const PlanDocument& b);

struct Corpus {
  std::vector<PlanDocument> documents;
  std::string source_path;
};

// Property carrying the target node id on reuse nodes.
inline constexpr std::string_view kReusesKey = "reuses";

bool is_reuse_operator(std::string_view operator_name);

// Lowercases, converts camelCase and dashes to snake_case and applies a small
// alias table ("joinType" -> "join_semantics", "numPartitions" ->
// "num_partitions", ...).
std::string normalize_property_key(std::string_view key);

// Best-effort extraction of feature properties from a plan line: join and
// build-side tokens, partitioning, broadcast mode, typed attribute counts,
// key/grouping/result list sizes, "width=N" and "reuses=N".
PropertyMap extract_text_properties(std::string_view operator_name,
                                    std::string_view fact);

// Throws Error(MalformedDocument) with line and column for invalid JSON and
// Error(SchemaViolation) naming the offending field. Properties whose keys
// are not feature keys are appended to the node fact as " key=value".
PlanDocument parse_plan_json(std::string_view bytes);

// Deterministic rendering accepted by parse_plan_json.
std::string render_plan_json(const PlanDocument& doc);

// Edges run child -> parent. Throws Error(IndentError) for tabs, odd
// indentation, a jump of more than one level or a second root, and
// Error(EmptyPlan) when there are no operator lines. `fallback_id` is used
// when the text has no plan_id header.
PlanDocument parse_plan_text(std::string_view text,
                             std::string_view fallback_id = "plan");

// Replaces every reuse node with a fresh-id copy of the subgraph feeding its
// target node. Throws Error(UnresolvedReference) or Error(ReferenceCycle).
PlanDocument resolve_reuse_references(const PlanDocument& doc);

// Parses a .json or .plan file and resolves reuse references. Error messages
// are prefixed with the file path.
PlanDocument load_plan_file(const std::filesystem::path& path);

// A single file or every .json/.plan file of a directory, sorted by file
// name. Per-file failures are collected into one Error(CorpusError); repeated
// plan ids raise Error(DuplicatePlanId).
Corpus load_corpus(const std::filesystem::path& path);

}  // namespace qdagprint
