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

// Approach #2 node signature: character n-grams of every node's fact are
// hashed and all gram hashes of the graph are combined with an unweighted
// SimHash.

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qdagprint/qdag.hpp"
#include "qdagprint/simhash.hpp"

namespace qdagprint {

struct NGramConfig {
  int n = 3;
  // Collapse whitespace runs to one space and trim the ends.
  bool collapse_whitespace = true;
  // Remove per-instance expression ids of the form "#<digits>".
  bool strip_operator_ids = true;
  bool lowercase = false;
  // Count each distinct gram of a node once instead of once per occurrence.
  bool dedupe_grams = false;

  // Stable identifier recorded in index headers, e.g.
  // "ngram-v1:n=3,ids=strip,ws=collapse,case=keep,grams=multiset".
  std::string id() const;

  friend bool operator==(const NGramConfig&, const NGramConfig&) = default;
};

std::string normalize_fact(std::string_view fact, const NGramConfig& cfg);

// Contiguous byte substrings of length n of the normalized fact, in order,
// duplicates kept. A normalized fact shorter than n is its own single gram.
// Throws Error(EmptyFact) when the fact normalizes to nothing.
std::vector<std::string> ngrams(std::string_view fact, const NGramConfig& cfg);

std::vector<Hash64> node_hashes_ngram(const PlanNode& node,
                                      const NGramConfig& cfg);

Hash64 node_signature_ngram(const QDag& graph, const NGramConfig& cfg);

}  // namespace qdagprint
