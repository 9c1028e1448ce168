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

#include "qdagprint/error.hpp"

namespace qdagprint {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyGraph: return "EmptyGraph";
    case ErrorCode::kDuplicateNodeId: return "DuplicateNodeId";
    case ErrorCode::kInvalidNode: return "InvalidNode";
    case ErrorCode::kDanglingEdge: return "DanglingEdge";
    case ErrorCode::kCycleDetected: return "CycleDetected";
    case ErrorCode::kMalformedDocument: return "MalformedDocument";
    case ErrorCode::kSchemaViolation: return "SchemaViolation";
    case ErrorCode::kIndentError: return "IndentError";
    case ErrorCode::kEmptyPlan: return "EmptyPlan";
    case ErrorCode::kUnresolvedReference: return "UnresolvedReference";
    case ErrorCode::kReferenceCycle: return "ReferenceCycle";
    case ErrorCode::kDuplicatePlanId: return "DuplicatePlanId";
    case ErrorCode::kCorpusError: return "CorpusError";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kInvalidWeight: return "InvalidWeight";
    case ErrorCode::kEmptyFact: return "EmptyFact";
    case ErrorCode::kNegativeRuntime: return "NegativeRuntime";
    case ErrorCode::kNonFiniteRuntime: return "NonFiniteRuntime";
    case ErrorCode::kConfigMismatch: return "ConfigMismatch";
    case ErrorCode::kEmptyIndex: return "EmptyIndex";
    case ErrorCode::kCorruptIndex: return "CorruptIndex";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kMissingRuntime: return "MissingRuntime";
    case ErrorCode::kCorpusTooSmall: return "CorpusTooSmall";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

bool is_input_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::kConfigMismatch:
    case ErrorCode::kEmptyIndex:
    case ErrorCode::kCorruptIndex:
    case ErrorCode::kIo:
      return false;
    default:
      return true;
  }
}

}  // namespace qdagprint
