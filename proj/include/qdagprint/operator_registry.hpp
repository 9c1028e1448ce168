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

#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <string>
#include <string_view>

namespace qdagprint {

// Maps operator names to 6-bit codes (0..63).
class OperatorRegistry {
 public:
  static constexpr int kMaxRegisteredCode = 31;
  static constexpr int kFallbackBase = 32;
  static constexpr int kFallbackBuckets = 31;  // fallback codes 32..62
  static constexpr int kReservedCode = 63;

  // The table shipped in data/operators.v1.txt.
  static const OperatorRegistry& builtin();

  // Format: one "<name> <code>" pair per line; '#' starts a comment; a
  // "# version: <id>" comment names the table. Throws Error(SchemaViolation)
  // for malformed lines or codes outside 1..31.
  static OperatorRegistry parse(std::istream& in);
  static OperatorRegistry from_file(const std::string& path);

  OperatorRegistry(std::string version,
                   std::map<std::string, int, std::less<>> codes);

  // Registered names (also with a trailing "Exec" stripped) map to their
  // code; other names to the hash fallback bucket.
  int code(std::string_view name) const;
  bool is_registered(std::string_view name) const;

  const std::string& version() const { return version_; }
  const std::map<std::string, int, std::less<>>& codes() const {
    return codes_;
  }

 private:
  std::string version_;
  std::map<std::string, int, std::less<>> codes_;
};

inline int operator_code(std::string_view name, const OperatorRegistry& registry) {
  return registry.code(name);
}

}  // namespace qdagprint
