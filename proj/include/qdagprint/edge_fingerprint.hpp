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

// Edge-structure signature S(G): every edge is packed into one 64-bit word
// from the features of its two endpoints, and the words of all edges are
// added together (wrapping).
//
// Word layout, most significant bits first:
//
//   63      58      50      42  39  36      30      22      14  11   8      0
//   | src op | src fwd| src bwd|in |out| tgt op | tgt fwd| tgt bwd|in |out| 0 |
//      6        8        8      3   3     6        8        8      3   3   8
//
// Values larger than a field saturate at the field maximum.

#pragma once

#include <array>
#include <cstdint>
#include <string_view>

#include "qdagprint/operator_registry.hpp"
#include "qdagprint/qdag.hpp"
#include "qdagprint/simhash.hpp"

namespace qdagprint {

inline constexpr std::string_view kEdgeLayoutVersion = "edge-v1:6.8.8.3.3";

struct EdgeField {
  std::string_view name;
  int width;
  int offset;

  constexpr std::uint64_t max_value() const {
    return (std::uint64_t{1} << width) - 1;
  }
};

enum EdgeFieldIndex : int {
  kSrcOperator,
  kSrcForward,
  kSrcBackward,
  kSrcInDegree,
  kSrcOutDegree,
  kTgtOperator,
  kTgtForward,
  kTgtBackward,
  kTgtInDegree,
  kTgtOutDegree,
  kEdgeFieldCount,
};

inline constexpr std::array<EdgeField, kEdgeFieldCount> kEdgeLayout = {{
    {"src_operator_code", 6, 58},
    {"src_forward_order", 8, 50},
    {"src_backward_order", 8, 42},
    {"src_in_degree", 3, 39},
    {"src_out_degree", 3, 36},
    {"tgt_operator_code", 6, 30},
    {"tgt_forward_order", 8, 22},
    {"tgt_backward_order", 8, 14},
    {"tgt_in_degree", 3, 11},
    {"tgt_out_degree", 3, 8},
}};

// Packs field values per kEdgeLayout, saturating each at its width.
std::uint64_t pack_edge_fields(
    const std::array<std::uint64_t, kEdgeFieldCount>& values);

// A graph without edges packs each node into the source fields (target
// fields zero) and sums those words instead.
Hash64 edge_signature(const QDag& graph, const StructuralProfile& profile,
                      const OperatorRegistry& registry);

}  // namespace qdagprint
