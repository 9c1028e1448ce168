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

// 128-bit QDAG fingerprint: edge-structure signature plus node signature
// from one of the two node approaches.

#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "qdagprint/node_ngram.hpp"
#include "qdagprint/operator_registry.hpp"
#include "qdagprint/qdag.hpp"
#include "qdagprint/simhash.hpp"

namespace qdagprint {

enum class Approach { kStructured, kNgram };

std::string_view approach_name(Approach a);
// Accepts "structured" and "ngram". Throws Error(InvalidArgument).
Approach parse_approach(std::string_view name);

struct Fingerprint128 {
  Hash64 edge_sig;
  Hash64 node_sig;
  Approach approach = Approach::kStructured;

  friend bool operator==(const Fingerprint128&, const Fingerprint128&) = default;
};

struct FingerprintConfig {
  Approach approach = Approach::kStructured;
  NGramConfig ngram;
  const OperatorRegistry* registry = &OperatorRegistry::builtin();

  // Feature schema version for the structured approach, NGramConfig::id()
  // for the n-gram approach.
  std::string node_config_id() const;
};

Fingerprint128 fingerprint(const QDag& graph, const FingerprintConfig& config);

}  // namespace qdagprint
