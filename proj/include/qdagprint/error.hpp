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

#include <stdexcept>
#include <string>
#include <string_view>

namespace qdagprint {

enum class ErrorCode {
  // Graph model.
  kEmptyGraph,
  kDuplicateNodeId,
  kInvalidNode,
  kDanglingEdge,
  kCycleDetected,
  // Ingestion.
  kMalformedDocument,
  kSchemaViolation,
  kIndentError,
  kEmptyPlan,
  kUnresolvedReference,
  kReferenceCycle,
  kDuplicatePlanId,
  kCorpusError,
  // Hashing.
  kEmptyInput,
  kInvalidWeight,
  kEmptyFact,
  // Index and prediction.
  kNegativeRuntime,
  kNonFiniteRuntime,
  kConfigMismatch,
  kEmptyIndex,
  kCorruptIndex,
  kInvalidArgument,
  // Evaluation.
  kMissingRuntime,
  kCorpusTooSmall,
  kIo,
};

std::string_view error_code_name(ErrorCode code);

// True for errors caused by bad user input (malformed plans, bad labels),
// as opposed to operational failures such as I/O or config mismatches.
bool is_input_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qdagprint
