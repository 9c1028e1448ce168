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

#include "qdagprint/evaluation.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "qdagprint/error.hpp"

namespace qdagprint {

using nlohmann::json;
using nlohmann::ordered_json;

std::optional<double> DistanceBucket::accuracy() const {
  if (total == 0) return std::nullopt;
  return static_cast<double>(correct) / static_cast<double>(total);
}

std::vector<DistanceBucket> standard_buckets() {
  return {
      {"0", 0, 0, 0, 0},     {"(0,2]", 1, 2, 0, 0}, {"(2,5]", 3, 5, 0, 0},
      {"(5,7]", 6, 7, 0, 0}, {">7", 8, 64, 0, 0},
  };
}

EvalReport summarize_cases(std::string approach, std::size_t k,
                           std::vector<EvalCase> cases) {
  std::sort(cases.begin(), cases.end(),
            [](const EvalCase& a, const EvalCase& b) { return a.plan_id < b.plan_id; });
  EvalReport r;
  r.approach = std::move(approach);
  r.k = k;
  r.corpus_size = cases.size();
  r.buckets = standard_buckets();

  std::size_t correct = 0;
  std::size_t simple = 0, simple_wrong = 0, heavy = 0, heavy_wrong = 0;
  for (const EvalCase& c : cases) {
    auto actual = static_cast<int>(c.actual);
    auto predicted = static_cast<int>(c.predicted);
    ++r.confusion[actual][predicted];
    bool hit = c.actual == c.predicted;
    correct += hit;
    if (c.actual == ComplexityLabel::kSimple) {
      ++simple;
      simple_wrong += c.predicted != ComplexityLabel::kSimple;
    } else {
      ++heavy;
      heavy_wrong += c.predicted == ComplexityLabel::kSimple;
    }
    for (DistanceBucket& b : r.buckets) {
      if (c.node_distance >= b.min_distance && c.node_distance <= b.max_distance) {
        ++b.total;
        b.correct += hit;
      }
    }
  }
  auto fraction = [](std::size_t num, std::size_t den) -> std::optional<double> {
    if (den == 0) return std::nullopt;
    return static_cast<double>(num) / static_cast<double>(den);
  };
  r.accuracy = fraction(correct, cases.size()).value_or(0.0);
  r.err_simple_as_heavier = fraction(simple_wrong, simple);
  r.err_heavy_as_simple = fraction(heavy_wrong, heavy);
  r.cases = std::move(cases);
  return r;
}

EvalReport eval_leave_one_out(const Corpus& corpus, const FingerprintConfig& config,
                              std::size_t k) {
  const auto& docs = corpus.documents;
  if (docs.size() < 2) {
    throw Error(ErrorCode::kCorpusTooSmall,
                "leave-one-out needs at least 2 documents, got " + std::to_string(docs.size()));
  }
  for (const PlanDocument& d : docs) {
    if (!d.runtime_seconds) {
      throw Error(ErrorCode::kMissingRuntime, "plan " + d.plan_id + " has no runtime_seconds");
    }
  }

  std::vector<IndexRecord> records;
  records.reserve(docs.size());
  for (const PlanDocument& d : docs) {
    records.push_back(make_record(d.plan_id, fingerprint(d.graph, config), *d.runtime_seconds));
  }

  IndexHeader header = IndexHeader::for_config(config);
  std::vector<EvalCase> cases;
  cases.reserve(docs.size());
  for (std::size_t held_out = 0; held_out < records.size(); ++held_out) {
    Index index(header);
    for (std::size_t i = 0; i < records.size(); ++i) {
      if (i != held_out) index.add(records[i]);
    }
    const IndexRecord& probe = records[held_out];
    Prediction p = index.predict(probe.fingerprint, k);
    cases.push_back({probe.plan_id, probe.label, p.label, p.evidence.plan_id,
                     p.evidence.edge_distance, p.evidence.node_distance});
  }
  return summarize_cases(std::string(approach_name(config.approach)), k, std::move(cases));
}

namespace {

std::string percent(std::optional<double> v) {
  if (!v) return "n/a";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f%%", *v * 100.0);
  return buf;
}

json optional_number(std::optional<double> v) { return v ? json(*v) : json(nullptr); }

std::optional<double> read_optional(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

}  // namespace

std::string render_report_text(const EvalReport& r) {
  static constexpr const char* kLabels[] = {"Simple", "Medium", "Complex"};
  std::ostringstream out;
  out << "approach:   " << r.approach << "\n"
      << "documents:  " << r.corpus_size << " (one fingerprint per plan document)\n"
      << "candidates: k=" << r.k << ", prediction: 1-NN\n\n";

  char line[160];
  std::snprintf(line, sizeof(line), "%-64s %10s\n", "metric", "value");
  out << line;
  std::snprintf(line, sizeof(line), "%-64s %10s\n", "Accuracy", percent(r.accuracy).c_str());
  out << line;
  std::snprintf(line, sizeof(line), "%-64s %10s\n",
                "Prediction error (actual Simple, predicted Medium or Complex)",
                percent(r.err_simple_as_heavier).c_str());
  out << line;
  std::snprintf(line, sizeof(line), "%-64s %10s\n",
                "Prediction error (actual Medium or Complex, predicted Simple)",
                percent(r.err_heavy_as_simple).c_str());
  out << line << "\nconfusion (rows actual, columns predicted)\n";
  std::snprintf(line, sizeof(line), "%-10s %8s %8s %8s\n", "", kLabels[0], kLabels[1], kLabels[2]);
  out << line;
  for (int a = 0; a < 3; ++a) {
    std::snprintf(line, sizeof(line), "%-10s %8zu %8zu %8zu\n", kLabels[a], r.confusion[a][0],
                  r.confusion[a][1], r.confusion[a][2]);
    out << line;
  }
  out << "\naccuracy by nearest-neighbor node distance\n";
  std::snprintf(line, sizeof(line), "%-10s %8s %10s\n", "distance", "plans", "accuracy");
  out << line;
  for (const DistanceBucket& b : r.buckets) {
    std::snprintf(line, sizeof(line), "%-10s %8zu %10s\n", b.name.c_str(), b.total,
                  percent(b.accuracy()).c_str());
    out << line;
  }
  return out.str();
}

std::string render_report_json(const EvalReport& r) {
  ordered_json j;
  j["approach"] = r.approach;
  j["corpus_size"] = r.corpus_size;
  j["k"] = r.k;
  j["granularity"] = "document";
  j["accuracy"] = r.accuracy;
  j["err_simple_as_heavier"] = optional_number(r.err_simple_as_heavier);
  j["err_heavy_as_simple"] = optional_number(r.err_heavy_as_simple);
  j["confusion"] = r.confusion;
  j["buckets"] = ordered_json::array();
  for (const DistanceBucket& b : r.buckets) {
    ordered_json jb;
    jb["name"] = b.name;
    jb["min_distance"] = b.min_distance;
    jb["max_distance"] = b.max_distance;
    jb["total"] = b.total;
    jb["correct"] = b.correct;
    jb["accuracy"] = optional_number(b.accuracy());
    j["buckets"].push_back(std::move(jb));
  }
  j["cases"] = ordered_json::array();
  for (const EvalCase& c : r.cases) {
    ordered_json jc;
    jc["plan_id"] = c.plan_id;
    jc["actual"] = label_name(c.actual);
    jc["predicted"] = label_name(c.predicted);
    jc["neighbor"] = c.neighbor_id;
    jc["edge_distance"] = c.edge_distance;
    jc["node_distance"] = c.node_distance;
    j["cases"].push_back(std::move(jc));
  }
  return j.dump(2) + "\n";
}

EvalReport parse_report_json(std::string_view text) {
  try {
    json j = json::parse(text.begin(), text.end());
    EvalReport r;
    r.approach = j.at("approach").get<std::string>();
    r.corpus_size = j.at("corpus_size").get<std::size_t>();
    r.k = j.at("k").get<std::size_t>();
    r.accuracy = j.at("accuracy").get<double>();
    r.err_simple_as_heavier = read_optional(j.at("err_simple_as_heavier"));
    r.err_heavy_as_simple = read_optional(j.at("err_heavy_as_simple"));
    r.confusion = j.at("confusion").get<std::array<std::array<std::size_t, 3>, 3>>();
    for (const json& jb : j.at("buckets")) {
      r.buckets.push_back({jb.at("name").get<std::string>(), jb.at("min_distance").get<int>(),
                           jb.at("max_distance").get<int>(), jb.at("total").get<std::size_t>(),
                           jb.at("correct").get<std::size_t>()});
    }
    for (const json& jc : j.at("cases")) {
      r.cases.push_back({jc.at("plan_id").get<std::string>(),
                         parse_label(jc.at("actual").get<std::string>()),
                         parse_label(jc.at("predicted").get<std::string>()),
                         jc.at("neighbor").get<std::string>(), jc.at("edge_distance").get<int>(),
                         jc.at("node_distance").get<int>()});
    }
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kMalformedDocument, std::string("eval report: ") + e.what());
  } catch (const Error& e) {
    throw Error(ErrorCode::kMalformedDocument, std::string("eval report: ") + e.what());
  }
}

}  // namespace qdagprint
