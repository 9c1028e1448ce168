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

#include "qdagprint/node_ngram.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "qdagprint/error.hpp"

namespace qdagprint {

std::string NGramConfig::id() const {
  return "ngram-v1:n=" + std::to_string(n) +
         ",ids=" + (strip_operator_ids ? "strip" : "keep") +
         ",ws=" + (collapse_whitespace ? "collapse" : "keep") +
         ",case=" + (lowercase ? "lower" : "keep") +
         ",grams=" + (dedupe_grams ? "set" : "multiset");
}

std::string normalize_fact(std::string_view fact, const NGramConfig& cfg) {
  std::string out;
  out.reserve(fact.size());
  for (std::size_t i = 0; i < fact.size(); ++i) {
    char c = fact[i];
    if (cfg.strip_operator_ids && c == '#' && i + 1 < fact.size() &&
        std::isdigit(static_cast<unsigned char>(fact[i + 1]))) {
      ++i;
      while (i + 1 < fact.size() &&
             std::isdigit(static_cast<unsigned char>(fact[i + 1]))) {
        ++i;
      }
      continue;
    }
    if (cfg.lowercase) {
      c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    out.push_back(c);
  }
  if (!cfg.collapse_whitespace) return out;

  std::string collapsed;
  collapsed.reserve(out.size());
  bool in_space = false;
  for (char c : out) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      in_space = true;
      continue;
    }
    if (in_space && !collapsed.empty()) collapsed.push_back(' ');
    in_space = false;
    collapsed.push_back(c);
  }
  return collapsed;
}

std::vector<std::string> ngrams(std::string_view fact, const NGramConfig& cfg) {
  if (cfg.n < 1) {
    throw Error(ErrorCode::kInvalidArgument, "n-gram size must be at least 1");
  }
  std::string norm = normalize_fact(fact, cfg);
  if (norm.empty()) {
    throw Error(ErrorCode::kEmptyFact,
                "fact \"" + std::string(fact) + "\" is empty after normalization");
  }
  auto n = static_cast<std::size_t>(cfg.n);
  if (norm.size() < n) return {norm};
  std::vector<std::string> grams;
  grams.reserve(norm.size() - n + 1);
  for (std::size_t i = 0; i + n <= norm.size(); ++i) {
    grams.push_back(norm.substr(i, n));
  }
  return grams;
}

std::vector<Hash64> node_hashes_ngram(const PlanNode& node,
                                      const NGramConfig& cfg) {
  std::vector<std::string> grams = ngrams(node.fact, cfg);
  if (cfg.dedupe_grams) {
    std::set<std::string> seen;
    std::erase_if(grams, [&](const std::string& g) {
      return !seen.insert(g).second;
    });
  }
  std::vector<Hash64> hashes;
  hashes.reserve(grams.size());
  for (const std::string& g : grams) hashes.push_back(string_hash64(g));
  return hashes;
}

Hash64 node_signature_ngram(const QDag& graph, const NGramConfig& cfg) {
  std::vector<Hash64> all;
  for (const PlanNode& n : graph.nodes()) {
    std::vector<Hash64> h = node_hashes_ngram(n, cfg);
    all.insert(all.end(), h.begin(), h.end());
  }
  return simhash(std::span<const Hash64>(all));
}

}  // namespace qdagprint
