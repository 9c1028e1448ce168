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

// CityHash64 (CityHash v1.1, little-endian byte order regardless of host).

#pragma once

#include <cstdint>
#include <string_view>

namespace qdagprint {

std::uint64_t city_hash64(std::string_view data);

}  // namespace qdagprint
