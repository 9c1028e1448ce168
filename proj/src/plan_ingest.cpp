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

#include "qdagprint/plan_ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <regex>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"
#include "qdagprint/error.hpp"
#include "qdagprint/node_structured.hpp"

namespace qdagprint {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

const std::map<std::string, std::string, std::less<>>& key_aliases() {
  static const std::map<std::string, std::string, std::less<>> aliases = {
      {"join_type", "join_semantics"},
      {"join_kind", "join_semantics"},
      {"join_strategy", "join_algorithm"},
      {"partitioning", "partitioning_type"},
      {"partitions", "num_partitions"},
      {"mode", "broadcast_mode"},
      {"width", "row_width"},
      {"numeric_attrs", "num_numeric_attrs"},
      {"string_attrs", "num_string_attrs"},
      {"grouping_exprs", "num_grouping_exprs"},
      {"result_exprs", "num_result_exprs"},
      {"keys", "num_keys"},
      {"reuse", "reuses"},
  };
  return aliases;
}

bool is_known_key(std::string_view key) {
  return key == kReusesKey || feature_slot(key).has_value();
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::pair<std::size_t, std::size_t> line_and_column(std::string_view bytes,
                                                    std::size_t offset) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < offset && i < bytes.size(); ++i) {
    if (bytes[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

[[noreturn]] void schema_error(const std::string& what) {
  throw Error(ErrorCode::kSchemaViolation, what);
}

PropertyValue property_from_json(const json& v, const std::string& where) {
  switch (v.type()) {
    case json::value_t::boolean: return v.get<bool>();
    case json::value_t::number_integer: return v.get<std::int64_t>();
    case json::value_t::number_unsigned: {
      auto u = v.get<std::uint64_t>();
      if (u > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
        schema_error(where + " is out of range");
      }
      return static_cast<std::int64_t>(u);
    }
    case json::value_t::number_float: return v.get<double>();
    case json::value_t::string: return v.get<std::string>();
    default: schema_error(where + " must be a scalar");
  }
}

json property_to_json(const PropertyValue& v) {
  return std::visit([](const auto& x) { return json(x); }, v);
}

NodeId node_id_from_json(const json& v, const std::string& where) {
  if (!v.is_number_integer()) schema_error(where + " must be an integer");
  auto i = v.get<std::int64_t>();
  if (i < 0 || i > std::numeric_limits<NodeId>::max()) {
    schema_error(where + " must be a non-negative 32-bit integer");
  }
  return static_cast<NodeId>(i);
}

// Splits normalized properties from ones that only survive in the fact.
void apply_property(PlanNode& node, const std::string& raw_key,
                    PropertyValue value) {
  std::string key = normalize_property_key(raw_key);
  if (is_known_key(key)) {
    node.properties[key] = std::move(value);
    return;
  }
  std::string rendered = raw_key + "=" + render_property(value);
  if (node.fact.find(rendered) == std::string::npos) {
    node.fact += " " + rendered;
  }
}

// Number of top-level comma-separated items in `list` (0 for blank).
std::int64_t count_items(std::string_view list) {
  if (trim(list).empty()) return 0;
  std::int64_t items = 1;
  int nesting = 0;
  for (char c : list) {
    if (c == '(' || c == '[' || c == '{') ++nesting;
    if (c == ')' || c == ']' || c == '}') --nesting;
    if (c == ',' && nesting == 0) ++items;
  }
  return items;
}

// Contents of the bracket list starting at `open` (which must be '[').
std::string_view bracket_contents(std::string_view s, std::size_t open) {
  int nesting = 0;
  for (std::size_t i = open; i < s.size(); ++i) {
    if (s[i] == '[') ++nesting;
    if (s[i] == ']' && --nesting == 0) return s.substr(open + 1, i - open - 1);
  }
  return s.substr(open + 1);
}

std::optional<std::string_view> named_list(std::string_view fact,
                                           std::string_view name) {
  std::string needle = std::string(name) + "=[";
  auto pos = fact.find(needle);
  if (pos == std::string_view::npos) return std::nullopt;
  return bracket_contents(fact, pos + needle.size() - 1);
}

std::optional<std::string_view> first_list(std::string_view fact) {
  auto pos = fact.find('[');
  if (pos == std::string_view::npos) return std::nullopt;
  return bracket_contents(fact, pos);
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::string operator_from_line(std::string_view line) {
  auto end = line.find_first_of(" ([{,");
  return std::string(line.substr(0, end));
}

}  // namespace

bool structurally_equal(const PlanDocument& a, const PlanDocument& b) {
  return a.plan_id == b.plan_id && a.runtime_seconds == b.runtime_seconds &&
         structurally_equal(a.graph, b.graph);
}

bool is_reuse_operator(std::string_view name) {
  return name == "ReusedExchange" || name == "ReusedSubquery" ||
         name == "ReusedExchangeExec" || name == "ReusedSubqueryExec";
}

std::string normalize_property_key(std::string_view key) {
  std::string out;
  for (std::size_t i = 0; i < key.size(); ++i) {
    auto c = static_cast<unsigned char>(key[i]);
    if (std::isupper(c)) {
      if (i > 0 && !out.empty() && out.back() != '_') out.push_back('_');
      out.push_back(static_cast<char>(std::tolower(c)));
    } else if (c == '-' || c == ' ') {
      out.push_back('_');
    } else {
      out.push_back(static_cast<char>(c));
    }
  }
  auto it = key_aliases().find(out);
  return it == key_aliases().end() ? out : it->second;
}

PropertyMap extract_text_properties(std::string_view operator_name,
                                    std::string_view fact) {
  static const std::regex kJoinSemantics(
      R"(\b(Inner|LeftOuter|RightOuter|FullOuter|LeftAnti|LeftSemi)\b)");
  static const std::regex kBuildSide(R"(\bBuild(Left|Right)\b)");
  static const std::regex kPartitioning(
      R"(\b(hash|range)partitioning\(([^()]*(?:\([^()]*\)[^()]*)*)\))");
  static const std::regex kTrailingCount(R"(,\s*(\d+)\s*$)");
  static const std::regex kPartitions(R"(\bpartitions=(\d+))");
  static const std::regex kWidth(R"(\bwidth=(\d+))");
  static const std::regex kReuses(R"(\breuses=(\d+))");
  static const std::regex kNumericAttr(
      R"(:(int|bigint|smallint|tinyint|long|double|float|decimal(\(\d+,\d+\))?|date|timestamp|boolean)\b)");
  static const std::regex kStringAttr(R"(:string\b)");

  std::string s(fact);
  PropertyMap props;
  std::smatch m;

  if (std::regex_search(s, m, kJoinSemantics)) {
    props["join_semantics"] = lower(m[1].str());
  }
  if (std::regex_search(s, m, kBuildSide)) {
    props["build_side"] = lower(m[1].str());
  }
  if (operator_name.starts_with("SortMergeJoin")) {
    props["join_algorithm"] = std::string("sort-merge");
  } else if (operator_name.starts_with("BroadcastHashJoin") ||
             operator_name.starts_with("BroadcastNestedLoopJoin")) {
    props["join_algorithm"] = std::string("broadcast");
  } else if (operator_name.starts_with("ShuffledHashJoin")) {
    props["join_algorithm"] = std::string("hash");
  }

  if (std::regex_search(s, m, kPartitioning)) {
    props["partitioning_type"] = m[1].str();
    std::string args = m[2].str();
    std::smatch n;
    if (std::regex_search(args, n, kTrailingCount)) {
      props["num_partitions"] = std::stoll(n[1].str());
    }
  } else if (s.find("SinglePartition") != std::string::npos) {
    props["partitioning_type"] = std::string("single");
  }
  if (std::regex_search(s, m, kPartitions)) {
    props["num_partitions"] = std::stoll(m[1].str());
  }
  if (s.find("HashedRelationBroadcastMode") != std::string::npos) {
    props["broadcast_mode"] = std::string("hashed-relation");
  } else if (s.find("IdentityBroadcastMode") != std::string::npos) {
    props["broadcast_mode"] = std::string("identity");
  }

  auto numeric = std::distance(std::sregex_iterator(s.begin(), s.end(), kNumericAttr),
                               std::sregex_iterator());
  auto strings = std::distance(std::sregex_iterator(s.begin(), s.end(), kStringAttr),
                               std::sregex_iterator());
  if (numeric > 0) props["num_numeric_attrs"] = static_cast<std::int64_t>(numeric);
  if (strings > 0) props["num_string_attrs"] = static_cast<std::int64_t>(strings);

  bool aggregate = operator_name.find("Aggregate") != std::string_view::npos;
  bool join = operator_name.find("Join") != std::string_view::npos;
  if (auto keys = named_list(fact, "keys")) {
    props[aggregate ? "num_grouping_exprs" : "num_keys"] = count_items(*keys);
  } else if (join) {
    if (auto first = first_list(fact)) props["num_keys"] = count_items(*first);
  }
  if (auto grouping = named_list(fact, "grouping")) {
    props["num_grouping_exprs"] = count_items(*grouping);
  }
  if (auto results = named_list(fact, "results")) {
    props["num_result_exprs"] = count_items(*results);
  } else if (auto functions = named_list(fact, "functions")) {
    props["num_result_exprs"] = count_items(*functions);
  } else if (auto output = named_list(fact, "output")) {
    props["num_result_exprs"] = count_items(*output);
  } else if (operator_name == "Project") {
    if (auto first = first_list(fact)) props["num_result_exprs"] = count_items(*first);
  }

  if (std::regex_search(s, m, kWidth)) props["row_width"] = std::stoll(m[1].str());
  if (std::regex_search(s, m, kReuses)) {
    props[std::string(kReusesKey)] = std::stoll(m[1].str());
  }
  return props;
}

PlanDocument parse_plan_json(std::string_view bytes) {
  json doc;
  try {
    doc = json::parse(bytes.begin(), bytes.end());
  } catch (const json::parse_error& e) {
    auto [line, column] = line_and_column(bytes, e.byte == 0 ? 0 : e.byte - 1);
    throw Error(ErrorCode::kMalformedDocument,
                "malformed JSON at line " + std::to_string(line) + ", column " +
                    std::to_string(column) + " (offset " +
                    std::to_string(e.byte) + ")");
  }
  if (!doc.is_object()) schema_error("plan document must be a JSON object");

  auto plan_id = doc.find("plan_id");
  if (plan_id == doc.end()) schema_error("missing required field plan_id");
  if (!plan_id->is_string()) schema_error("plan_id must be a string");

  std::optional<double> runtime;
  if (auto r = doc.find("runtime_seconds"); r != doc.end() && !r->is_null()) {
    if (!r->is_number()) schema_error("runtime_seconds must be a number");
    double v = r->get<double>();
    if (!std::isfinite(v) || v < 0) {
      schema_error("runtime_seconds must be finite and non-negative");
    }
    runtime = v;
  }

  auto nodes_it = doc.find("nodes");
  if (nodes_it == doc.end()) schema_error("missing required field nodes");
  if (!nodes_it->is_array()) schema_error("nodes must be an array");

  std::vector<PlanNode> nodes;
  nodes.reserve(nodes_it->size());
  for (std::size_t i = 0; i < nodes_it->size(); ++i) {
    const json& jn = (*nodes_it)[i];
    std::string where = "nodes[" + std::to_string(i) + "]";
    if (!jn.is_object()) schema_error(where + " must be an object");
    PlanNode node;
    auto id = jn.find("id");
    if (id == jn.end()) schema_error("missing required field " + where + ".id");
    node.id = node_id_from_json(*id, where + ".id");
    auto op = jn.find("operator");
    if (op == jn.end()) schema_error("missing required field " + where + ".operator");
    if (!op->is_string()) schema_error(where + ".operator must be a string");
    node.operator_name = op->get<std::string>();
    auto fact = jn.find("fact");
    if (fact == jn.end()) schema_error("missing required field " + where + ".fact");
    if (!fact->is_string()) schema_error(where + ".fact must be a string");
    node.fact = fact->get<std::string>();
    if (auto props = jn.find("properties"); props != jn.end()) {
      if (!props->is_object()) schema_error(where + ".properties must be an object");
      for (const auto& [k, v] : props->items()) {
        apply_property(node, k, property_from_json(v, where + ".properties." + k));
      }
    }
    nodes.push_back(std::move(node));
  }

  std::vector<Edge> edges;
  if (auto edges_it = doc.find("edges"); edges_it != doc.end()) {
    if (!edges_it->is_array()) schema_error("edges must be an array");
    for (std::size_t i = 0; i < edges_it->size(); ++i) {
      const json& je = (*edges_it)[i];
      std::string where = "edges[" + std::to_string(i) + "]";
      if (!je.is_array() || je.size() != 2) {
        schema_error(where + " must be a [source, target] pair");
      }
      edges.push_back({node_id_from_json(je[0], where + "[0]"),
                       node_id_from_json(je[1], where + "[1]")});
    }
  }

  std::string id = plan_id->get<std::string>();
  return PlanDocument{id, runtime, QDag(id, std::move(nodes), std::move(edges))};
}

std::string render_plan_json(const PlanDocument& doc) {
  ordered_json out;
  out["plan_id"] = doc.plan_id;
  if (doc.runtime_seconds) out["runtime_seconds"] = *doc.runtime_seconds;
  out["nodes"] = ordered_json::array();
  for (const PlanNode& n : doc.graph.nodes()) {
    ordered_json jn;
    jn["id"] = n.id;
    jn["operator"] = n.operator_name;
    jn["fact"] = n.fact;
    if (!n.properties.empty()) {
      ordered_json props = ordered_json::object();
      for (const auto& [k, v] : n.properties) props[k] = property_to_json(v);
      jn["properties"] = std::move(props);
    }
    out["nodes"].push_back(std::move(jn));
  }
  out["edges"] = ordered_json::array();
  for (const Edge& e : doc.graph.edges()) {
    out["edges"].push_back(ordered_json::array({e.source, e.target}));
  }
  return out.dump(2) + "\n";
}

PlanDocument parse_plan_text(std::string_view text, std::string_view fallback_id) {
  std::string plan_id(fallback_id);
  std::optional<double> runtime;
  std::vector<PlanNode> nodes;
  std::vector<Edge> edges;
  std::vector<NodeId> parents;  // parents[level] = last node seen at level

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    std::string_view raw =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    std::string where = "line " + std::to_string(line_no);

    std::string trimmed = trim(raw);
    if (trimmed.empty()) continue;
    if (trimmed.starts_with("--")) {
      if (!nodes.empty()) {
        throw Error(ErrorCode::kMalformedDocument,
                    where + ": header lines must precede the operator tree");
      }
      std::string body = trim(std::string_view(trimmed).substr(2));
      auto colon = body.find(':');
      if (colon == std::string::npos) continue;
      std::string key = trim(std::string_view(body).substr(0, colon));
      std::string value = trim(std::string_view(body).substr(colon + 1));
      if (key == "plan_id") {
        if (value.empty()) {
          throw Error(ErrorCode::kMalformedDocument, where + ": empty plan_id");
        }
        plan_id = value;
      } else if (key == "runtime_seconds") {
        double v = 0;
        auto res = std::from_chars(value.data(), value.data() + value.size(), v);
        if (res.ec != std::errc() || res.ptr != value.data() + value.size() ||
            !std::isfinite(v) || v < 0) {
          throw Error(ErrorCode::kMalformedDocument,
                      where + ": runtime_seconds must be a non-negative number");
        }
        runtime = v;
      }
      continue;
    }

    std::size_t indent = 0;
    while (indent < raw.size() && (raw[indent] == ' ' || raw[indent] == '\t')) {
      if (raw[indent] == '\t') {
        throw Error(ErrorCode::kIndentError, where + ": tab in indentation");
      }
      ++indent;
    }
    if (indent % 2 != 0) {
      throw Error(ErrorCode::kIndentError,
                  where + ": indentation must be a multiple of two spaces");
    }
    std::size_t level = indent / 2;
    if (nodes.empty() && level != 0) {
      throw Error(ErrorCode::kIndentError, where + ": root operator must not be indented");
    }
    if (!nodes.empty() && level == 0) {
      throw Error(ErrorCode::kIndentError, where + ": second root operator");
    }
    if (level > parents.size()) {
      throw Error(ErrorCode::kIndentError,
                  where + ": indented more than one level below its predecessor");
    }

    PlanNode node;
    node.id = static_cast<NodeId>(nodes.size());
    node.fact = trimmed;
    node.operator_name = operator_from_line(trimmed);
    if (node.operator_name.empty()) {
      throw Error(ErrorCode::kMalformedDocument, where + ": missing operator name");
    }
    node.properties = extract_text_properties(node.operator_name, node.fact);
    if (level > 0) edges.push_back({node.id, parents[level - 1]});
    parents.resize(level);
    parents.push_back(node.id);
    nodes.push_back(std::move(node));
  }

  if (nodes.empty()) throw Error(ErrorCode::kEmptyPlan, "plan has no operator lines");
  return PlanDocument{plan_id, runtime, QDag(plan_id, std::move(nodes), std::move(edges))};
}

PlanDocument resolve_reuse_references(const PlanDocument& doc) {
  std::vector<PlanNode> nodes = doc.graph.nodes();
  std::vector<Edge> edges = doc.graph.edges();

  auto is_reuse = [](const PlanNode& n) { return is_reuse_operator(n.operator_name); };
  auto reuse_target = [](const PlanNode& n) -> NodeId {
    auto it = n.properties.find(std::string(kReusesKey));
    if (it == n.properties.end()) {
      throw Error(ErrorCode::kUnresolvedReference,
                  "reuse node " + std::to_string(n.id) + " has no \"reuses\" property");
    }
    const auto* id = std::get_if<std::int64_t>(&it->second);
    if (id == nullptr || *id < 0 || *id > std::numeric_limits<NodeId>::max()) {
      throw Error(ErrorCode::kUnresolvedReference,
                  "reuse node " + std::to_string(n.id) +
                      " has a non-integer \"reuses\" target");
    }
    return static_cast<NodeId>(*id);
  };

  while (true) {
    std::vector<NodeId> pending;
    std::unordered_map<NodeId, std::size_t> position;
    NodeId next_id = 0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      position[nodes[i].id] = i;
      next_id = std::max<NodeId>(next_id, nodes[i].id + 1);
      if (is_reuse(nodes[i])) pending.push_back(nodes[i].id);
    }
    if (pending.empty()) break;
    std::sort(pending.begin(), pending.end());

    std::unordered_map<NodeId, std::vector<NodeId>> predecessors;
    for (const Edge& e : edges) predecessors[e.target].push_back(e.source);

    bool progressed = false;
    for (NodeId reuse_id : pending) {
      NodeId target = reuse_target(nodes[position.at(reuse_id)]);
      if (!position.contains(target)) {
        throw Error(ErrorCode::kUnresolvedReference,
                    "reuse node " + std::to_string(reuse_id) +
                        " references missing node " + std::to_string(target));
      }
      // Everything feeding into the target, target included.
      std::unordered_set<NodeId> subgraph{target};
      std::vector<NodeId> frontier{target};
      while (!frontier.empty()) {
        NodeId v = frontier.back();
        frontier.pop_back();
        for (NodeId u : predecessors[v]) {
          if (subgraph.insert(u).second) frontier.push_back(u);
        }
      }
      bool blocked = std::any_of(subgraph.begin(), subgraph.end(), [&](NodeId id) {
        return is_reuse(nodes[position.at(id)]);
      });
      if (blocked) continue;

      std::unordered_map<NodeId, NodeId> copy_of;
      std::vector<PlanNode> copies;
      for (const PlanNode& n : nodes) {
        if (!subgraph.contains(n.id)) continue;
        PlanNode c = n;
        c.id = next_id++;
        copy_of[n.id] = c.id;
        copies.push_back(std::move(c));
      }
      std::vector<Edge> rewritten;
      rewritten.reserve(edges.size());
      for (const Edge& e : edges) {
        Edge r = e;
        if (r.source == reuse_id) r.source = copy_of.at(target);
        if (r.target == reuse_id) r.target = copy_of.at(target);
        rewritten.push_back(r);
        if (subgraph.contains(e.source) && subgraph.contains(e.target)) {
          rewritten.push_back({copy_of.at(e.source), copy_of.at(e.target)});
        }
      }
      edges = std::move(rewritten);
      std::erase_if(nodes, [&](const PlanNode& n) { return n.id == reuse_id; });
      for (PlanNode& c : copies) nodes.push_back(std::move(c));
      progressed = true;
      break;
    }
    if (!progressed) {
      std::string ids;
      for (NodeId id : pending) ids += (ids.empty() ? "" : ", ") + std::to_string(id);
      throw Error(ErrorCode::kReferenceCycle, "reuse references form a cycle among nodes " + ids);
    }
  }

  return PlanDocument{doc.plan_id, doc.runtime_seconds,
                      QDag(doc.plan_id, std::move(nodes), std::move(edges))};
}

PlanDocument load_plan_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, path.string() + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string bytes = buf.str();
  try {
    PlanDocument doc = path.extension() == ".plan"
                           ? parse_plan_text(bytes, path.stem().string())
                           : parse_plan_json(bytes);
    return resolve_reuse_references(doc);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

Corpus load_corpus(const std::filesystem::path& path) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::exists(path, ec)) {
    throw Error(ErrorCode::kIo, path.string() + ": no such file or directory");
  }
  std::vector<fs::path> files;
  if (fs::is_directory(path)) {
    for (const auto& entry : fs::directory_iterator(path)) {
      if (!entry.is_regular_file()) continue;
      auto ext = entry.path().extension();
      if (ext == ".json" || ext == ".plan") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end(), [](const fs::path& a, const fs::path& b) {
      return a.filename().string() < b.filename().string();
    });
    if (files.empty()) {
      throw Error(ErrorCode::kCorpusError, path.string() + ": no .json or .plan files");
    }
  } else {
    files.push_back(path);
  }

  Corpus corpus;
  corpus.source_path = path.string();
  std::vector<std::string> failures;
  std::map<std::string, std::string> owner;  // plan_id -> file
  for (const fs::path& file : files) {
    try {
      PlanDocument doc = load_plan_file(file);
      auto [it, inserted] = owner.emplace(doc.plan_id, file.string());
      if (!inserted) {
        throw Error(ErrorCode::kDuplicatePlanId,
                    "duplicate plan_id \"" + doc.plan_id + "\" in " + it->second +
                        " and " + file.string());
      }
      corpus.documents.push_back(std::move(doc));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kDuplicatePlanId) throw;
      failures.push_back(std::string(error_code_name(e.code())) + ": " + e.what());
    }
  }
  if (!failures.empty()) {
    std::string msg = std::to_string(failures.size()) + " of " +
                      std::to_string(files.size()) + " plan files failed to load:";
    for (const std::string& f : failures) msg += "\n  " + f;
    throw Error(ErrorCode::kCorpusError, msg);
  }
  return corpus;
}

}  // namespace qdagprint
