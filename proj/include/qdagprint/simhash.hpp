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

// SimHash combiner, Hamming distance and the pinned 64-bit string hash.

#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace qdagprint {

// Identifier recorded in index headers for the hash behind string_hash64.
inline constexpr std::string_view kHashAlgorithm = "cityhash64";

struct Hash64 {
  std::uint64_t bits = 0;

  friend bool operator==(Hash64, Hash64) = default;
  friend auto operator<=>(Hash64, Hash64) = default;
};

// 16 lowercase hex characters, zero padded.
std::string to_hex(Hash64 h);
// Throws Error(InvalidArgument) unless `hex` is exactly 16 hex characters.
Hash64 hash_from_hex(std::string_view hex);

struct WeightedHash {
  Hash64 hash;
  double weight = 1.0;  // > 0, finite
};

Hash64 string_hash64(std::string_view bytes);

// Bit i of the result is set iff sum(+w for inputs with bit i set,
// -w for inputs with bit i clear) > 0. A zero tally yields 0.
//
// Inputs are summed in a canonical order, so the result does not depend on
// the order of `hashes` even with non-integer weights.
//
// Throws Error(EmptyInput) for an empty list and Error(InvalidWeight) for a
// weight that is not positive and finite.
Hash64 simhash(std::span<const WeightedHash> hashes);

// Uniform weight 1 for every input.
Hash64 simhash(std::span<const Hash64> hashes);

inline int hamming(Hash64 a, Hash64 b) { return std::popcount(a.bits ^ b.bits); }

}  // namespace qdagprint
