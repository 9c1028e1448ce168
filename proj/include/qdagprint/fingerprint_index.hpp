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

// Lookup table of past executions keyed by fingerprint, with two-step
// nearest-neighbor matching and 1-NN complexity prediction.

#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "qdagprint/fingerprint.hpp"

namespace qdagprint {

enum class ComplexityLabel { kSimple = 0, kMedium = 1, kComplex = 2 };

std::string_view label_name(ComplexityLabel label);
// Throws Error(InvalidArgument) for anything but Simple, Medium or Complex.
ComplexityLabel parse_label(std::string_view name);

inline constexpr double kSimpleUpperBound = 5.0;
inline constexpr double kMediumUpperBound = 30.0;

// [0, 5) Simple, [5, 30) Medium, [30, inf) Complex. Throws
// Error(NegativeRuntime) or Error(NonFiniteRuntime).
ComplexityLabel classify_runtime(double runtime_seconds);

struct IndexRecord {
  std::string plan_id;
  Fingerprint128 fingerprint;
  double runtime_seconds = 0;
  ComplexityLabel label = ComplexityLabel::kSimple;

  friend bool operator==(const IndexRecord&, const IndexRecord&) = default;
};

// Labels the record from its runtime.
IndexRecord make_record(std::string plan_id, const Fingerprint128& fingerprint,
                        double runtime_seconds);

struct MatchResult {
  std::string plan_id;
  int edge_distance = 0;
  int node_distance = 0;
  ComplexityLabel label = ComplexityLabel::kSimple;
  double runtime_seconds = 0;

  friend bool operator==(const MatchResult&, const MatchResult&) = default;
};

struct Prediction {
  ComplexityLabel label;
  MatchResult evidence;
};

inline constexpr int kIndexFormatVersion = 1;
inline constexpr std::size_t kDefaultCandidates = 10;

// Everything that must agree between an index and the fingerprints matched
// against it.
struct IndexHeader {
  int version = kIndexFormatVersion;
  std::string hash_algo;
  Approach approach = Approach::kStructured;
  // Feature schema version (structured) or n-gram config id (ngram).
  std::string node_config;
  std::string edge_layout_version;
  std::string operator_registry;

  static IndexHeader for_config(const FingerprintConfig& config);

  // Name of the first field that differs from `other`, if any.
  std::optional<std::string> first_mismatch(const IndexHeader& other) const;

  friend bool operator==(const IndexHeader&, const IndexHeader&) = default;
};

// Readers (match, predict, snapshots) may run concurrently; writers take an
// exclusive lock, so a reader sees either the whole record or none of it.
class Index {
 public:
  explicit Index(IndexHeader header);
  Index(const Index& other);
  Index& operator=(const Index& other);

  const IndexHeader& header() const { return header_; }
  std::size_t size() const;
  bool empty() const { return size() == 0; }
  std::vector<IndexRecord> records() const;

  // Throws Error(ConfigMismatch) naming the first differing header field.
  void require_compatible(const IndexHeader& other) const;

  // Appends, or replaces the record with the same plan_id. Throws
  // Error(ConfigMismatch) if the record's approach differs from the header,
  // Error(InvalidArgument) if its label disagrees with its runtime.
  void add(IndexRecord record);

  // Step 1 keeps the k records closest by edge distance, ties broken by
  // node distance then plan_id. Step 2 orders those by node distance, ties
  // broken by edge distance then plan_id. Returns the first top_n.
  std::vector<MatchResult> match(const Fingerprint128& probe, std::size_t k,
                                 std::size_t top_n) const;

  // Label of the first match (1-NN).
  Prediction predict(const Fingerprint128& probe,
                     std::size_t k = kDefaultCandidates) const;

  // Majority label over the first `votes` matches; ties go to the label of
  // the nearest match among the tied labels. Not used by evaluation.
  Prediction predict_majority(const Fingerprint128& probe, std::size_t k,
                              std::size_t votes) const;

  friend bool operator==(const Index& a, const Index& b);

 private:
  IndexHeader header_;
  mutable std::shared_mutex mutex_;
  std::vector<IndexRecord> records_;
  std::unordered_map<std::string, std::size_t> by_plan_id_;
};

// Line 1: header object; every further line: one record object
//   {"plan_id", "edge_fp" (16 hex), "node_fp" (16 hex), "runtime_seconds",
//    "label"}.
void save_index(const Index& index, const std::filesystem::path& path);

// Rejects unknown format versions and edge layout / feature schema versions
// other than the ones this build produces (Error(ConfigMismatch)); other
// header fields are checked at use via require_compatible. Malformed lines
// raise Error(CorruptIndex) naming the line number.
Index load_index(const std::filesystem::path& path);

}  // namespace qdagprint
