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

#include "qdagprint/operator_registry.hpp"

#include <fstream>
#include <sstream>

#include "qdagprint/error.hpp"
#include "qdagprint/simhash.hpp"

namespace qdagprint {
namespace {

// Keep in sync with data/operators.v1.txt (checked by a unit test).
constexpr std::string_view kBuiltinTable = R"(# version: operators-v1
Scan 1
Filter 2
Project 3
Sort 4
Exchange 5
BroadcastExchange 6
HashAggregate 7
SortMergeJoin 8
BroadcastHashJoin 9
ShuffledHashJoin 10
Window 11
Union 12
Limit 13
Expand 14
Subquery 15
ReusedExchange 16
ReusedSubquery 17
SortAggregate 18
ObjectHashAggregate 19
BroadcastNestedLoopJoin 20
CartesianProduct 21
TakeOrderedAndProject 22
GlobalLimit 23
LocalLimit 24
Generate 25
Coalesce 26
LocalTableScan 27
InMemoryTableScan 28
FileScan 29
WholeStageCodegen 30
AdaptiveSparkPlan 31
)";

constexpr std::string_view kVersionTag = "# version:";

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

OperatorRegistry::OperatorRegistry(std::string version,
                                   std::map<std::string, int, std::less<>> codes)
    : version_(std::move(version)), codes_(std::move(codes)) {
  for (const auto& [name, c] : codes_) {
    if (c < 1 || c > kMaxRegisteredCode) {
      throw Error(ErrorCode::kSchemaViolation,
                  "operator code for " + name + " outside 1.." +
                      std::to_string(kMaxRegisteredCode));
    }
  }
}

const OperatorRegistry& OperatorRegistry::builtin() {
  static const OperatorRegistry registry = [] {
    std::istringstream in{std::string(kBuiltinTable)};
    return parse(in);
  }();
  return registry;
}

OperatorRegistry OperatorRegistry::parse(std::istream& in) {
  std::string version = "unversioned";
  std::map<std::string, int, std::less<>> codes;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = trim(line);
    if (t.starts_with(kVersionTag)) {
      version = trim(std::string_view(t).substr(kVersionTag.size()));
      continue;
    }
    if (t.empty() || t[0] == '#') continue;
    std::istringstream fields(t);
    std::string name;
    int c = 0;
    std::string extra;
    if (!(fields >> name >> c) || (fields >> extra)) {
      throw Error(ErrorCode::kSchemaViolation,
                  "operator registry line " + std::to_string(line_no) +
                      ": expected \"<name> <code>\"");
    }
    if (!codes.emplace(name, c).second) {
      throw Error(ErrorCode::kSchemaViolation,
                  "operator registry line " + std::to_string(line_no) +
                      ": duplicate operator " + name);
    }
  }
  return OperatorRegistry(std::move(version), std::move(codes));
}

OperatorRegistry OperatorRegistry::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open operator registry " + path);
  return parse(in);
}

bool OperatorRegistry::is_registered(std::string_view name) const {
  if (codes_.contains(name)) return true;
  return name.ends_with("Exec") &&
         codes_.contains(name.substr(0, name.size() - 4));
}

int OperatorRegistry::code(std::string_view name) const {
  if (auto it = codes_.find(name); it != codes_.end()) return it->second;
  if (name.ends_with("Exec")) {
    if (auto it = codes_.find(name.substr(0, name.size() - 4));
        it != codes_.end()) {
      return it->second;
    }
  }
  return kFallbackBase +
         static_cast<int>(string_hash64(name).bits % kFallbackBuckets);
}

}  // namespace qdagprint
