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

#include "qdagprint/cityhash.hpp"

#include <utility>

namespace qdagprint {
namespace {

constexpr std::uint64_t k0 = 0xc3a5c85c97cb3127ULL;
constexpr std::uint64_t k1 = 0xb492b66fbe98f273ULL;
constexpr std::uint64_t k2 = 0x9ae16a3b2f90404fULL;

// Byte-wise loads keep the result independent of host endianness.
inline std::uint64_t fetch64(const char* p) {
  const auto* b = reinterpret_cast<const unsigned char*>(p);
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

inline std::uint32_t fetch32(const char* p) {
  const auto* b = reinterpret_cast<const unsigned char*>(p);
  return static_cast<std::uint32_t>(b[0]) |
         (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) |
         (static_cast<std::uint32_t>(b[3]) << 24);
}

inline std::uint64_t bswap64(std::uint64_t v) { return __builtin_bswap64(v); }

inline std::uint64_t rotate(std::uint64_t val, int shift) {
  return shift == 0 ? val : ((val >> shift) | (val << (64 - shift)));
}

inline std::uint64_t shift_mix(std::uint64_t val) { return val ^ (val >> 47); }

inline std::uint64_t hash_len16(std::uint64_t u, std::uint64_t v,
                                std::uint64_t mul) {
  std::uint64_t a = (u ^ v) * mul;
  a ^= (a >> 47);
  std::uint64_t b = (v ^ a) * mul;
  b ^= (b >> 47);
  b *= mul;
  return b;
}

inline std::uint64_t hash_len16(std::uint64_t u, std::uint64_t v) {
  return hash_len16(u, v, 0x9ddfea08eb382d69ULL);
}

std::uint64_t hash_len0to16(const char* s, std::size_t len) {
  if (len >= 8) {
    std::uint64_t mul = k2 + len * 2;
    std::uint64_t a = fetch64(s) + k2;
    std::uint64_t b = fetch64(s + len - 8);
    std::uint64_t c = rotate(b, 37) * mul + a;
    std::uint64_t d = (rotate(a, 25) + b) * mul;
    return hash_len16(c, d, mul);
  }
  if (len >= 4) {
    std::uint64_t mul = k2 + len * 2;
    std::uint64_t a = fetch32(s);
    return hash_len16(len + (a << 3), fetch32(s + len - 4), mul);
  }
  if (len > 0) {
    auto a = static_cast<unsigned char>(s[0]);
    auto b = static_cast<unsigned char>(s[len >> 1]);
    auto c = static_cast<unsigned char>(s[len - 1]);
    std::uint32_t y = static_cast<std::uint32_t>(a) +
                      (static_cast<std::uint32_t>(b) << 8);
    std::uint32_t z = static_cast<std::uint32_t>(len) +
                      (static_cast<std::uint32_t>(c) << 2);
    return shift_mix(y * k2 ^ z * k0) * k2;
  }
  return k2;
}

std::uint64_t hash_len17to32(const char* s, std::size_t len) {
  std::uint64_t mul = k2 + len * 2;
  std::uint64_t a = fetch64(s) * k1;
  std::uint64_t b = fetch64(s + 8);
  std::uint64_t c = fetch64(s + len - 8) * mul;
  std::uint64_t d = fetch64(s + len - 16) * k2;
  return hash_len16(rotate(a + b, 43) + rotate(c, 30) + d,
                    a + rotate(b + k2, 18) + c, mul);
}

std::pair<std::uint64_t, std::uint64_t> weak_hash_len32_with_seeds(
    std::uint64_t w, std::uint64_t x, std::uint64_t y, std::uint64_t z,
    std::uint64_t a, std::uint64_t b) {
  a += w;
  b = rotate(b + a + z, 21);
  std::uint64_t c = a;
  a += x;
  a += y;
  b += rotate(a, 44);
  return {a + z, b + c};
}

std::pair<std::uint64_t, std::uint64_t> weak_hash_len32_with_seeds(
    const char* s, std::uint64_t a, std::uint64_t b) {
  return weak_hash_len32_with_seeds(fetch64(s), fetch64(s + 8),
                                    fetch64(s + 16), fetch64(s + 24), a, b);
}

std::uint64_t hash_len33to64(const char* s, std::size_t len) {
  std::uint64_t mul = k2 + len * 2;
  std::uint64_t a = fetch64(s) * k2;
  std::uint64_t b = fetch64(s + 8);
  std::uint64_t c = fetch64(s + len - 24);
  std::uint64_t d = fetch64(s + len - 32);
  std::uint64_t e = fetch64(s + 16) * k2;
  std::uint64_t f = fetch64(s + 24) * 9;
  std::uint64_t g = fetch64(s + len - 8);
  std::uint64_t h = fetch64(s + len - 16) * mul;
  std::uint64_t u = rotate(a + g, 43) + (rotate(b, 30) + c) * 9;
  std::uint64_t v = ((a + g) ^ d) + f + 1;
  std::uint64_t w = bswap64((u + v) * mul) + h;
  std::uint64_t x = rotate(e + f, 42) + c;
  std::uint64_t y = (bswap64((v + w) * mul) + g) * mul;
  std::uint64_t z = e + f + c;
  a = bswap64((x + z) * mul + y) + b;
  b = shift_mix((z + a) * mul + d + h) * mul;
  return b + x;
}

}  // namespace

std::uint64_t city_hash64(std::string_view data) {
  const char* s = data.data();
  std::size_t len = data.size();
  if (len <= 32) {
    return len <= 16 ? hash_len0to16(s, len) : hash_len17to32(s, len);
  }
  if (len <= 64) return hash_len33to64(s, len);

  // Loop over 64-byte chunks keeping 56 bytes of state: v, w, x, y, z.
  std::uint64_t x = fetch64(s + len - 40);
  std::uint64_t y = fetch64(s + len - 16) + fetch64(s + len - 56);
  std::uint64_t z = hash_len16(fetch64(s + len - 48) + len, fetch64(s + len - 24));
  auto v = weak_hash_len32_with_seeds(s + len - 64, len, z);
  auto w = weak_hash_len32_with_seeds(s + len - 32, y + k1, x);
  x = x * k1 + fetch64(s);

  len = (len - 1) & ~static_cast<std::size_t>(63);
  do {
    x = rotate(x + y + v.first + fetch64(s + 8), 37) * k1;
    y = rotate(y + v.second + fetch64(s + 48), 42) * k1;
    x ^= w.second;
    y += v.first + fetch64(s + 40);
    z = rotate(z + w.first, 33) * k1;
    v = weak_hash_len32_with_seeds(s, v.second * k1, x + w.first);
    w = weak_hash_len32_with_seeds(s + 32, z + w.second, y + fetch64(s + 16));
    std::swap(z, x);
    s += 64;
    len -= 64;
  } while (len != 0);
  return hash_len16(hash_len16(v.first, w.first) + shift_mix(y) * k1 + z,
                    hash_len16(v.second, w.second) + x);
}

}  // namespace qdagprint
