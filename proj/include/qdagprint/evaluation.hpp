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

// Leave-one-out evaluation of 1-NN complexity prediction and its report.

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qdagprint/fingerprint.hpp"
#include "qdagprint/fingerprint_index.hpp"
#include "qdagprint/plan_ingest.hpp"

namespace qdagprint {

// Accuracy grouped by the node distance to the predicted-from neighbor.
struct DistanceBucket {
  std::string name;
  int min_distance = 0;  // inclusive
  int max_distance = 0;  // inclusive
  std::size_t total = 0;
  std::size_t correct = 0;

  std::optional<double> accuracy() const;
  friend bool operator==(const DistanceBucket&, const DistanceBucket&) = default;
};

// Buckets 0, (0,2], (2,5], (5,7], >7.
std::vector<DistanceBucket> standard_buckets();

struct EvalCase {
  std::string plan_id;
  ComplexityLabel actual = ComplexityLabel::kSimple;
  ComplexityLabel predicted = ComplexityLabel::kSimple;
  std::string neighbor_id;
  int edge_distance = 0;
  int node_distance = 0;

  friend bool operator==(const EvalCase&, const EvalCase&) = default;
};

struct EvalReport {
  std::string approach;
  std::size_t corpus_size = 0;
  std::size_t k = kDefaultCandidates;
  double accuracy = 0;
  // Actual Simple predicted Medium or Complex, over actual Simple.
  std::optional<double> err_simple_as_heavier;
  // Actual Medium or Complex predicted Simple, over actual Medium/Complex.
  std::optional<double> err_heavy_as_simple;
  // confusion[actual][predicted], Simple/Medium/Complex order.
  std::array<std::array<std::size_t, 3>, 3> confusion{};
  std::vector<DistanceBucket> buckets;
  std::vector<EvalCase> cases;  // sorted by plan_id

  friend bool operator==(const EvalReport&, const EvalReport&) = default;
};

// Every document is predicted from an index over all the others. Throws
// Error(MissingRuntime) naming the first unlabeled plan and
// Error(CorpusTooSmall) below two documents.
EvalReport eval_leave_one_out(const Corpus& corpus, const FingerprintConfig& config,
                              std::size_t k = kDefaultCandidates);

// Fills accuracy, error rates, confusion matrix and buckets from `cases`.
EvalReport summarize_cases(std::string approach, std::size_t k,
                           std::vector<EvalCase> cases);

std::string render_report_text(const EvalReport& report);
std::string render_report_json(const EvalReport& report);
// Inverse of render_report_json. Throws Error(MalformedDocument).
EvalReport parse_report_json(std::string_view text);

}  // namespace qdagprint
