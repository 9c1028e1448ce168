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

#include "qdagprint/fingerprint.hpp"

#include "qdagprint/edge_fingerprint.hpp"
#include "qdagprint/error.hpp"
#include "qdagprint/node_structured.hpp"

namespace qdagprint {

std::string_view approach_name(Approach a) {
  return a == Approach::kStructured ? "structured" : "ngram";
}

Approach parse_approach(std::string_view name) {
  if (name == "structured") return Approach::kStructured;
  if (name == "ngram") return Approach::kNgram;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown approach \"" + std::string(name) +
                  "\" (expected structured or ngram)");
}

std::string FingerprintConfig::node_config_id() const {
  return approach == Approach::kStructured ? std::string(kFeatureSchemaVersion)
                                           : ngram.id();
}

Fingerprint128 fingerprint(const QDag& graph, const FingerprintConfig& config) {
  StructuralProfile profile = structural_profile(graph);
  Fingerprint128 fp;
  fp.approach = config.approach;
  fp.edge_sig = edge_signature(graph, profile, *config.registry);
  fp.node_sig = config.approach == Approach::kStructured
                    ? node_signature_structured(graph, profile, *config.registry)
                    : node_signature_ngram(graph, config.ngram);
  return fp;
}

}  // namespace qdagprint
