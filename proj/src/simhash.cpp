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

#include "qdagprint/simhash.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <vector>

#include "qdagprint/cityhash.hpp"
#include "qdagprint/error.hpp"

namespace qdagprint {

std::string to_hex(Hash64 h) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(16, '0');
  std::uint64_t v = h.bits;
  for (int i = 15; i >= 0; --i) {
    out[i] = kDigits[v & 0xf];
    v >>= 4;
  }
  return out;
}

Hash64 hash_from_hex(std::string_view hex) {
  std::uint64_t v = 0;
  auto res = std::from_chars(hex.data(), hex.data() + hex.size(), v, 16);
  if (hex.size() != 16 || res.ec != std::errc() ||
      res.ptr != hex.data() + hex.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "expected 16 hex characters, got \"" + std::string(hex) + "\"");
  }
  return Hash64{v};
}

Hash64 string_hash64(std::string_view bytes) {
  return Hash64{city_hash64(bytes)};
}

namespace {

Hash64 sign_word(const std::array<double, 64>& tally) {
  std::uint64_t out = 0;
  for (int bit = 0; bit < 64; ++bit) {
    if (tally[bit] > 0) out |= std::uint64_t{1} << bit;
  }
  return Hash64{out};
}

}  // namespace

Hash64 simhash(std::span<const WeightedHash> hashes) {
  if (hashes.empty()) {
    throw Error(ErrorCode::kEmptyInput, "simhash of an empty hash list");
  }
  bool uniform = true;
  for (const WeightedHash& h : hashes) {
    if (!(h.weight > 0) || !std::isfinite(h.weight)) {
      throw Error(ErrorCode::kInvalidWeight,
                  "simhash weight must be positive and finite");
    }
    uniform = uniform && h.weight == hashes.front().weight;
  }

  // Equal weights: integer tallies are exact in any order.
  if (uniform) {
    std::vector<Hash64> plain;
    plain.reserve(hashes.size());
    for (const WeightedHash& h : hashes) plain.push_back(h.hash);
    return simhash(std::span<const Hash64>(plain));
  }

  std::vector<WeightedHash> sorted(hashes.begin(), hashes.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const WeightedHash& a, const WeightedHash& b) {
              return a.hash.bits != b.hash.bits ? a.hash.bits < b.hash.bits
                                                : a.weight < b.weight;
            });
  std::array<double, 64> tally{};
  for (const WeightedHash& h : sorted) {
    for (int bit = 0; bit < 64; ++bit) {
      tally[bit] += ((h.hash.bits >> bit) & 1) ? h.weight : -h.weight;
    }
  }
  return sign_word(tally);
}

Hash64 simhash(std::span<const Hash64> hashes) {
  if (hashes.empty()) {
    throw Error(ErrorCode::kEmptyInput, "simhash of an empty hash list");
  }
  std::array<std::int64_t, 64> counts{};
  for (Hash64 h : hashes) {
    for (int bit = 0; bit < 64; ++bit) {
      counts[bit] += ((h.bits >> bit) & 1) ? 1 : -1;
    }
  }
  std::uint64_t out = 0;
  for (int bit = 0; bit < 64; ++bit) {
    if (counts[bit] > 0) out |= std::uint64_t{1} << bit;
  }
  return Hash64{out};
}

}  // namespace qdagprint
