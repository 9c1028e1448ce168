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

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qdagprint/error.hpp"
#include "qdagprint/evaluation.hpp"
#include "qdagprint/fingerprint.hpp"
#include "qdagprint/fingerprint_index.hpp"
#include "qdagprint/plan_ingest.hpp"
#include "qdagprint/synthetic.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace qdagprint;

namespace {

struct Options {
  std::string approach = "structured";
  bool approach_given = false;
  std::size_t k = kDefaultCandidates;
  int ngram_n = 3;
  std::string index_path;
  bool json = false;
  std::uint64_t seed = 42;
  bool keep_ids = false;
  bool no_normalize = false;
  bool lowercase = false;
  bool dedupe_grams = false;
  std::string registry_path;
  std::size_t top = 5;
  std::size_t majority = 0;
  std::size_t count = 100;
  double rate = 0.1;
  std::vector<std::string> inputs;
  std::string output;
};

class Session {
 public:
  explicit Session(const Options& o) : opts_(o) {
    if (!o.registry_path.empty()) {
      registry_ = std::make_unique<OperatorRegistry>(OperatorRegistry::from_file(o.registry_path));
    }
  }

  FingerprintConfig config(std::optional<Approach> approach = std::nullopt) const {
    FingerprintConfig c;
    c.approach = approach.value_or(parse_approach(opts_.approach));
    c.ngram.n = opts_.ngram_n;
    c.ngram.strip_operator_ids = !opts_.keep_ids;
    c.ngram.collapse_whitespace = !opts_.no_normalize;
    c.ngram.lowercase = opts_.lowercase;
    c.ngram.dedupe_grams = opts_.dedupe_grams;
    if (registry_) c.registry = registry_.get();
    return c;
  }

  // An explicit --approach wins; otherwise an index decides.
  FingerprintConfig config_for(const Index& index) const {
    return opts_.approach_given ? config() : config(index.header().approach);
  }

  const Options& opts() const { return opts_; }

 private:
  const Options& opts_;
  std::unique_ptr<OperatorRegistry> registry_;
};

std::vector<PlanDocument> load_inputs(const std::vector<std::string>& inputs) {
  std::vector<PlanDocument> docs;
  for (const std::string& in : inputs) {
    if (fs::is_directory(in)) {
      Corpus c = load_corpus(in);
      for (PlanDocument& d : c.documents) docs.push_back(std::move(d));
    } else {
      if (!fs::exists(in)) throw Error(ErrorCode::kIo, in + ": no such file");
      docs.push_back(load_plan_file(in));
    }
  }
  return docs;
}

Index open_index(const std::string& path) {
  if (path.empty()) throw Error(ErrorCode::kInvalidArgument, "--index is required");
  return load_index(path);
}

ordered_json match_json(const MatchResult& m) {
  ordered_json j;
  j["plan_id"] = m.plan_id;
  j["edge_distance"] = m.edge_distance;
  j["node_distance"] = m.node_distance;
  j["label"] = label_name(m.label);
  j["runtime_seconds"] = m.runtime_seconds;
  return j;
}

int cmd_fingerprint(const Session& s) {
  FingerprintConfig config = s.config();
  IndexHeader header = IndexHeader::for_config(config);
  ordered_json all = ordered_json::array();
  for (const PlanDocument& d : load_inputs(s.opts().inputs)) {
    Fingerprint128 f = fingerprint(d.graph, config);
    if (s.opts().json) {
      ordered_json j;
      j["plan_id"] = d.plan_id;
      j["edge_fp"] = to_hex(f.edge_sig);
      j["node_fp"] = to_hex(f.node_sig);
      j["approach"] = approach_name(config.approach);
      j["hash_algo"] = header.hash_algo;
      j["node_config"] = header.node_config;
      j["edge_layout_version"] = header.edge_layout_version;
      j["operator_registry"] = header.operator_registry;
      all.push_back(std::move(j));
    } else {
      std::cout << d.plan_id << "\t" << to_hex(f.edge_sig) << "\t" << to_hex(f.node_sig) << "\t"
                << approach_name(config.approach) << "\t" << header.hash_algo << "\t"
                << header.node_config << "\t" << header.edge_layout_version << "\n";
    }
  }
  if (s.opts().json) std::cout << all.dump(2) << "\n";
  return 0;
}

int cmd_index_add(const Session& s) {
  const std::string& path = s.opts().index_path;
  if (path.empty()) throw Error(ErrorCode::kInvalidArgument, "--index is required");
  std::optional<Index> index;
  FingerprintConfig config;
  if (fs::exists(path)) {
    index.emplace(load_index(path));
    config = s.config_for(*index);
    index->require_compatible(IndexHeader::for_config(config));
  } else {
    config = s.config();
    index.emplace(IndexHeader::for_config(config));
  }
  std::size_t added = 0;
  for (const PlanDocument& d : load_inputs(s.opts().inputs)) {
    if (!d.runtime_seconds) {
      throw Error(ErrorCode::kMissingRuntime, "plan " + d.plan_id + " has no runtime_seconds");
    }
    index->add(make_record(d.plan_id, fingerprint(d.graph, config), *d.runtime_seconds));
    ++added;
  }
  save_index(*index, path);
  std::cout << "added " << added << " record(s); index " << path << " holds " << index->size()
            << "\n";
  return 0;
}

int cmd_index_show(const Session& s) {
  Index index = open_index(s.opts().index_path);
  const IndexHeader& h = index.header();
  if (s.opts().json) {
    ordered_json j;
    j["version"] = h.version;
    j["hash_algo"] = h.hash_algo;
    j["approach"] = approach_name(h.approach);
    j["node_config"] = h.node_config;
    j["edge_layout_version"] = h.edge_layout_version;
    j["operator_registry"] = h.operator_registry;
    j["records"] = ordered_json::array();
    for (const IndexRecord& r : index.records()) {
      ordered_json jr;
      jr["plan_id"] = r.plan_id;
      jr["edge_fp"] = to_hex(r.fingerprint.edge_sig);
      jr["node_fp"] = to_hex(r.fingerprint.node_sig);
      jr["runtime_seconds"] = r.runtime_seconds;
      jr["label"] = label_name(r.label);
      j["records"].push_back(std::move(jr));
    }
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "version:     " << h.version << "\n"
            << "hash_algo:   " << h.hash_algo << "\n"
            << "approach:    " << approach_name(h.approach) << "\n"
            << "node_config: " << h.node_config << "\n"
            << "edge_layout: " << h.edge_layout_version << "\n"
            << "registry:    " << h.operator_registry << "\n"
            << "records:     " << index.size() << "\n";
  for (const IndexRecord& r : index.records()) {
    std::cout << r.plan_id << "\t" << to_hex(r.fingerprint.edge_sig) << "\t"
              << to_hex(r.fingerprint.node_sig) << "\t" << r.runtime_seconds << "\t"
              << label_name(r.label) << "\n";
  }
  return 0;
}

int cmd_match(const Session& s) {
  Index index = open_index(s.opts().index_path);
  FingerprintConfig config = s.config_for(index);
  index.require_compatible(IndexHeader::for_config(config));
  ordered_json all = ordered_json::array();
  for (const PlanDocument& d : load_inputs(s.opts().inputs)) {
    std::vector<MatchResult> matches =
        index.match(fingerprint(d.graph, config), s.opts().k, s.opts().top);
    if (s.opts().json) {
      ordered_json j;
      j["plan_id"] = d.plan_id;
      j["matches"] = ordered_json::array();
      for (const MatchResult& m : matches) j["matches"].push_back(match_json(m));
      all.push_back(std::move(j));
      continue;
    }
    std::cout << d.plan_id << " (k=" << s.opts().k << ")\n";
    char line[256];
    std::snprintf(line, sizeof(line), "  %-4s %-32s %6s %6s %-8s %12s\n", "rank", "plan_id", "edge",
                  "node", "label", "runtime_s");
    std::cout << line;
    for (std::size_t i = 0; i < matches.size(); ++i) {
      const MatchResult& m = matches[i];
      std::snprintf(line, sizeof(line), "  %-4zu %-32s %6d %6d %-8s %12.3f\n", i + 1,
                    m.plan_id.c_str(), m.edge_distance, m.node_distance,
                    std::string(label_name(m.label)).c_str(), m.runtime_seconds);
      std::cout << line;
    }
  }
  if (s.opts().json) std::cout << all.dump(2) << "\n";
  return 0;
}

int cmd_predict(const Session& s) {
  Index index = open_index(s.opts().index_path);
  FingerprintConfig config = s.config_for(index);
  index.require_compatible(IndexHeader::for_config(config));
  ordered_json all = ordered_json::array();
  for (const PlanDocument& d : load_inputs(s.opts().inputs)) {
    Fingerprint128 probe = fingerprint(d.graph, config);
    Prediction p = s.opts().majority > 0
                       ? index.predict_majority(probe, s.opts().k, s.opts().majority)
                       : index.predict(probe, s.opts().k);
    if (s.opts().json) {
      ordered_json j;
      j["plan_id"] = d.plan_id;
      j["predicted"] = label_name(p.label);
      if (d.runtime_seconds) j["actual"] = label_name(classify_runtime(*d.runtime_seconds));
      j["nearest"] = match_json(p.evidence);
      all.push_back(std::move(j));
      continue;
    }
    std::cout << d.plan_id << "\t" << label_name(p.label) << "\tnearest " << p.evidence.plan_id
              << " (edge " << p.evidence.edge_distance << ", node " << p.evidence.node_distance
              << ", " << label_name(p.evidence.label) << ")";
    if (d.runtime_seconds) std::cout << "\tactual " << label_name(classify_runtime(*d.runtime_seconds));
    std::cout << "\n";
  }
  if (s.opts().json) std::cout << all.dump(2) << "\n";
  return 0;
}

int cmd_eval(const Session& s) {
  Corpus corpus;
  corpus.documents = load_inputs(s.opts().inputs);
  EvalReport r = eval_leave_one_out(corpus, s.config(), s.opts().k);
  std::cout << (s.opts().json ? render_report_json(r) : render_report_text(r));
  return 0;
}

int cmd_gen(const Session& s) {
  SyntheticSpec spec = SyntheticSpec::standard(s.opts().seed, s.opts().count, s.opts().rate);
  Corpus c = generate_corpus(spec, s.opts().output);
  std::cout << "wrote " << c.documents.size() << " plans to " << s.opts().output << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Query-plan fingerprinting and complexity prediction"};
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--approach", o.approach, "Node fingerprint approach")
      ->check(CLI::IsMember({"structured", "ngram"}));
  app.add_option("--k", o.k, "Candidates kept by edge distance")->check(CLI::PositiveNumber);
  app.add_option("--ngram-n", o.ngram_n, "N-gram size")->check(CLI::PositiveNumber);
  app.add_option("--index", o.index_path, "Index file");
  app.add_flag("--json", o.json, "Machine-readable output");
  app.add_option("--seed", o.seed, "Generator seed");
  app.add_flag("--keep-ids", o.keep_ids, "Keep #<digits> expression ids in n-gram facts");
  app.add_flag("--no-normalize", o.no_normalize, "Keep whitespace runs in n-gram facts");
  app.add_flag("--lowercase", o.lowercase, "Lowercase n-gram facts");
  app.add_flag("--dedupe-grams", o.dedupe_grams, "Count each distinct gram once per node");
  app.add_option("--registry", o.registry_path, "Operator registry file")->check(CLI::ExistingFile);

  auto* fp = app.add_subcommand("fingerprint", "Print fingerprints of plan files or directories");
  fp->add_option("plans", o.inputs)->required();

  auto* index = app.add_subcommand("index", "Build or inspect an index");
  index->require_subcommand(1);
  auto* add = index->add_subcommand("add", "Add labeled plans to the index (created if missing)");
  add->add_option("plans", o.inputs)->required();
  auto* show = index->add_subcommand("show", "Print the index header and records");

  auto* match = app.add_subcommand("match", "Two-step nearest-neighbor match against the index");
  match->add_option("plans", o.inputs)->required();
  match->add_option("--top", o.top, "Matches to print")->check(CLI::PositiveNumber);

  auto* predict = app.add_subcommand("predict", "Predict complexity from the nearest neighbor");
  predict->add_option("plans", o.inputs)->required();
  predict->add_option("--majority", o.majority,
                      "Vote over this many nearest matches instead of 1-NN");

  auto* eval = app.add_subcommand("eval", "Leave-one-out evaluation over a labeled corpus");
  eval->add_option("corpus", o.inputs)->required();

  auto* gen = app.add_subcommand("gen", "Write a synthetic labeled corpus");
  gen->add_option("out_dir", o.output)->required();
  gen->add_option("--count", o.count, "Plans per family")->check(CLI::PositiveNumber);
  gen->add_option("--rate", o.rate, "Perturbation rate")->check(CLI::Range(0.0, 1.0));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  o.approach_given = app.count("--approach") > 0;

  try {
    Session s(o);
    if (*fp) return cmd_fingerprint(s);
    if (*add) return cmd_index_add(s);
    if (*show) return cmd_index_show(s);
    if (*match) return cmd_match(s);
    if (*predict) return cmd_predict(s);
    if (*eval) return cmd_eval(s);
    if (*gen) return cmd_gen(s);
  } catch (const Error& e) {
    std::cerr << "qdagprint: " << error_code_name(e.code()) << ": " << e.what() << "\n";
    return is_input_error(e.code()) ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "qdagprint: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
