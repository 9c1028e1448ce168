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

#include "qdagprint/fingerprint_index.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <mutex>
#include <tuple>

#include "json.hpp"
#include "qdagprint/edge_fingerprint.hpp"
#include "qdagprint/error.hpp"
#include "qdagprint/node_structured.hpp"

namespace qdagprint {

using nlohmann::json;
using nlohmann::ordered_json;

std::string_view label_name(ComplexityLabel label) {
  switch (label) {
    case ComplexityLabel::kSimple: return "Simple";
    case ComplexityLabel::kMedium: return "Medium";
    case ComplexityLabel::kComplex: return "Complex";
  }
  return "Simple";
}

ComplexityLabel parse_label(std::string_view name) {
  if (name == "Simple") return ComplexityLabel::kSimple;
  if (name == "Medium") return ComplexityLabel::kMedium;
  if (name == "Complex") return ComplexityLabel::kComplex;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown complexity label \"" + std::string(name) + "\"");
}

ComplexityLabel classify_runtime(double runtime_seconds) {
  if (!std::isfinite(runtime_seconds)) {
    throw Error(ErrorCode::kNonFiniteRuntime, "runtime is not finite");
  }
  if (runtime_seconds < 0) {
    throw Error(ErrorCode::kNegativeRuntime,
                "runtime " + std::to_string(runtime_seconds) + " is negative");
  }
  if (runtime_seconds < kSimpleUpperBound) return ComplexityLabel::kSimple;
  if (runtime_seconds < kMediumUpperBound) return ComplexityLabel::kMedium;
  return ComplexityLabel::kComplex;
}

IndexRecord make_record(std::string plan_id, const Fingerprint128& fingerprint,
                        double runtime_seconds) {
  return IndexRecord{std::move(plan_id), fingerprint, runtime_seconds,
                     classify_runtime(runtime_seconds)};
}

IndexHeader IndexHeader::for_config(const FingerprintConfig& config) {
  IndexHeader h;
  h.hash_algo = std::string(kHashAlgorithm);
  h.approach = config.approach;
  h.node_config = config.node_config_id();
  h.edge_layout_version = std::string(kEdgeLayoutVersion);
  h.operator_registry = config.registry->version();
  return h;
}

std::optional<std::string> IndexHeader::first_mismatch(const IndexHeader& other) const {
  if (version != other.version) return "version";
  if (hash_algo != other.hash_algo) return "hash_algo";
  if (approach != other.approach) return "approach";
  if (node_config != other.node_config) {
    return approach == Approach::kStructured ? "feature_schema_version"
                                             : "ngram_config";
  }
  if (edge_layout_version != other.edge_layout_version) return "edge_layout_version";
  if (operator_registry != other.operator_registry) return "operator_registry";
  return std::nullopt;
}

Index::Index(IndexHeader header) : header_(std::move(header)) {}

Index::Index(const Index& other) : header_(other.header_) {
  std::shared_lock lock(other.mutex_);
  records_ = other.records_;
  by_plan_id_ = other.by_plan_id_;
}

Index& Index::operator=(const Index& other) {
  if (this == &other) return *this;
  std::scoped_lock lock(mutex_, other.mutex_);
  header_ = other.header_;
  records_ = other.records_;
  by_plan_id_ = other.by_plan_id_;
  return *this;
}

std::size_t Index::size() const {
  std::shared_lock lock(mutex_);
  return records_.size();
}

std::vector<IndexRecord> Index::records() const {
  std::shared_lock lock(mutex_);
  return records_;
}

void Index::require_compatible(const IndexHeader& other) const {
  if (auto field = header_.first_mismatch(other)) {
    throw Error(ErrorCode::kConfigMismatch,
                "index header field " + *field + " does not match the requested configuration");
  }
}

void Index::add(IndexRecord record) {
  if (record.fingerprint.approach != header_.approach) {
    throw Error(ErrorCode::kConfigMismatch,
                "index header field approach is " +
                    std::string(approach_name(header_.approach)) + ", record " +
                    record.plan_id + " uses " +
                    std::string(approach_name(record.fingerprint.approach)));
  }
  if (record.label != classify_runtime(record.runtime_seconds)) {
    throw Error(ErrorCode::kInvalidArgument,
                "record " + record.plan_id + " label does not match its runtime");
  }
  std::unique_lock lock(mutex_);
  auto it = by_plan_id_.find(record.plan_id);
  if (it != by_plan_id_.end()) {
    records_[it->second] = std::move(record);
    return;
  }
  by_plan_id_.emplace(record.plan_id, records_.size());
  records_.push_back(std::move(record));
}

std::vector<MatchResult> Index::match(const Fingerprint128& probe, std::size_t k,
                                      std::size_t top_n) const {
  if (k == 0 || top_n == 0) {
    throw Error(ErrorCode::kInvalidArgument, "k and top_n must be positive");
  }
  if (probe.approach != header_.approach) {
    throw Error(ErrorCode::kConfigMismatch,
                "index header field approach does not match the probe");
  }
  std::shared_lock lock(mutex_);
  if (records_.empty()) throw Error(ErrorCode::kEmptyIndex, "index is empty");

  struct Scored {
    int edge;
    int node;
    const IndexRecord* record;
  };
  std::vector<Scored> scored;
  scored.reserve(records_.size());
  for (const IndexRecord& r : records_) {
    scored.push_back({hamming(probe.edge_sig, r.fingerprint.edge_sig),
                      hamming(probe.node_sig, r.fingerprint.node_sig), &r});
  }

  auto by_edge = [](const Scored& a, const Scored& b) {
    return std::tie(a.edge, a.node, a.record->plan_id) <
           std::tie(b.edge, b.node, b.record->plan_id);
  };
  auto by_node = [](const Scored& a, const Scored& b) {
    return std::tie(a.node, a.edge, a.record->plan_id) <
           std::tie(b.node, b.edge, b.record->plan_id);
  };
  std::size_t candidates = std::min(k, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + candidates, scored.end(), by_edge);
  scored.resize(candidates);
  std::sort(scored.begin(), scored.end(), by_node);

  std::vector<MatchResult> out;
  std::size_t n = std::min(top_n, scored.size());
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const IndexRecord& r = *scored[i].record;
    out.push_back({r.plan_id, scored[i].edge, scored[i].node, r.label, r.runtime_seconds});
  }
  return out;
}

Prediction Index::predict(const Fingerprint128& probe, std::size_t k) const {
  std::vector<MatchResult> nearest = match(probe, k, 1);
  return Prediction{nearest.front().label, nearest.front()};
}

Prediction Index::predict_majority(const Fingerprint128& probe, std::size_t k,
                                   std::size_t votes) const {
  std::vector<MatchResult> nearest = match(probe, k, votes);
  std::array<std::size_t, 3> tally{};
  for (const MatchResult& m : nearest) ++tally[static_cast<int>(m.label)];
  std::size_t best = *std::max_element(tally.begin(), tally.end());
  for (const MatchResult& m : nearest) {
    if (tally[static_cast<int>(m.label)] == best) return Prediction{m.label, m};
  }
  return Prediction{nearest.front().label, nearest.front()};
}

bool operator==(const Index& a, const Index& b) {
  if (&a == &b) return true;
  std::shared_lock la(a.mutex_, std::defer_lock);
  std::shared_lock lb(b.mutex_, std::defer_lock);
  std::lock(la, lb);
  return a.header_ == b.header_ && a.records_ == b.records_;
}

namespace {

ordered_json header_to_json(const IndexHeader& h) {
  ordered_json j;
  j["version"] = h.version;
  j["hash_algo"] = h.hash_algo;
  j["approach"] = approach_name(h.approach);
  if (h.approach == Approach::kStructured) {
    j["feature_schema_version"] = h.node_config;
  } else {
    j["ngram_config"] = h.node_config;
  }
  j["edge_layout_version"] = h.edge_layout_version;
  j["operator_registry"] = h.operator_registry;
  return j;
}

[[noreturn]] void corrupt(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::kCorruptIndex,
              "index line " + std::to_string(line) + ": " + what);
}

std::string string_field(const json& j, const char* key, std::size_t line) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_string()) {
    corrupt(line, std::string("missing or non-string field ") + key);
  }
  return it->get<std::string>();
}

IndexHeader header_from_json(const json& j) {
  IndexHeader h;
  auto version = j.find("version");
  if (version == j.end() || !version->is_number_integer()) {
    corrupt(1, "missing integer field version");
  }
  h.version = version->get<int>();
  if (h.version != kIndexFormatVersion) {
    throw Error(ErrorCode::kConfigMismatch,
                "index header field version is " + std::to_string(h.version) +
                    ", expected " + std::to_string(kIndexFormatVersion));
  }
  h.hash_algo = string_field(j, "hash_algo", 1);
  try {
    h.approach = parse_approach(string_field(j, "approach", 1));
  } catch (const Error& e) {
    corrupt(1, e.what());
  }
  h.node_config = string_field(
      j, h.approach == Approach::kStructured ? "feature_schema_version" : "ngram_config", 1);
  h.edge_layout_version = string_field(j, "edge_layout_version", 1);
  h.operator_registry = string_field(j, "operator_registry", 1);

  if (h.edge_layout_version != kEdgeLayoutVersion) {
    throw Error(ErrorCode::kConfigMismatch,
                "index header field edge_layout_version is " + h.edge_layout_version +
                    ", this build uses " + std::string(kEdgeLayoutVersion));
  }
  if (h.approach == Approach::kStructured && h.node_config != kFeatureSchemaVersion) {
    throw Error(ErrorCode::kConfigMismatch,
                "index header field feature_schema_version is " + h.node_config +
                    ", this build uses " + std::string(kFeatureSchemaVersion));
  }
  return h;
}

}  // namespace

void save_index(const Index& index, const std::filesystem::path& path) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + tmp.string());
    out << header_to_json(index.header()).dump() << '\n';
    for (const IndexRecord& r : index.records()) {
      ordered_json j;
      j["plan_id"] = r.plan_id;
      j["edge_fp"] = to_hex(r.fingerprint.edge_sig);
      j["node_fp"] = to_hex(r.fingerprint.node_sig);
      j["runtime_seconds"] = r.runtime_seconds;
      j["label"] = label_name(r.label);
      out << j.dump() << '\n';
    }
    if (!out.flush()) throw Error(ErrorCode::kIo, "cannot write " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot replace " + path.string() + ": " + ec.message());
}

Index load_index(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open index " + path.string());

  std::string line;
  std::size_t line_no = 0;
  std::optional<Index> index;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    json j = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded() || !j.is_object()) corrupt(line_no, "not a JSON object");
    if (!index) {
      if (line_no != 1) corrupt(line_no, "header must be on line 1");
      index.emplace(header_from_json(j));
      continue;
    }
    IndexRecord r;
    r.plan_id = string_field(j, "plan_id", line_no);
    r.fingerprint.approach = index->header().approach;
    try {
      r.fingerprint.edge_sig = hash_from_hex(string_field(j, "edge_fp", line_no));
      r.fingerprint.node_sig = hash_from_hex(string_field(j, "node_fp", line_no));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kCorruptIndex) throw;
      corrupt(line_no, e.what());
    }
    auto runtime = j.find("runtime_seconds");
    if (runtime == j.end() || !runtime->is_number()) {
      corrupt(line_no, "missing numeric field runtime_seconds");
    }
    r.runtime_seconds = runtime->get<double>();
    try {
      r.label = parse_label(string_field(j, "label", line_no));
      if (r.label != classify_runtime(r.runtime_seconds)) {
        corrupt(line_no, "label does not match runtime_seconds");
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kCorruptIndex) throw;
      corrupt(line_no, e.what());
    }
    index->add(std::move(r));
  }
  if (!index) corrupt(1, "missing header");
  return std::move(*index);
}

}  // namespace qdagprint
