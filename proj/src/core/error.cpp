// Copyright 2026 The hcdgraph Authors.
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

#include "core/error.hpp"

namespace hcd {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kOk: return "Ok";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kUnbalancedParens: return "UnbalancedParens";
    case ErrorCode::kDuplicateVariableDefinition:
      return "DuplicateVariableDefinition";
    case ErrorCode::kDanglingVariableReference:
      return "DanglingVariableReference";
    case ErrorCode::kMalformedExpression: return "MalformedExpression";
    case ErrorCode::kDuplicateEdge: return "DuplicateEdge";
    case ErrorCode::kDisconnectedGraph: return "DisconnectedGraph";
    case ErrorCode::kSpanOutOfRange: return "SpanOutOfRange";
    case ErrorCode::kUnknownVariable: return "UnknownVariable";
    case ErrorCode::kMalformedItem: return "MalformedItem";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kNoTokens: return "NoTokens";
    case ErrorCode::kTopicUnalignable: return "TopicUnalignable";
    case ErrorCode::kLayoutMismatch: return "LayoutMismatch";
    case ErrorCode::kAlignmentOutOfRange: return "AlignmentOutOfRange";
    case ErrorCode::kMalformedLine: return "MalformedLine";
    case ErrorCode::kMissingField: return "MissingField";
    case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
    case ErrorCode::kDegenerateLabel: return "DegenerateLabel";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kEmptyList: return "EmptyList";
    case ErrorCode::kConfigError: return "ConfigError";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kFormatError: return "FormatError";
    case ErrorCode::kMissingStructure: return "MissingStructure";
    case ErrorCode::kInternal: return "Internal";
  }
  return "Unknown";
}

}  // namespace hcd
