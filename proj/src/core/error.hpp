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

#ifndef HCD_CORE_ERROR_HPP_
#define HCD_CORE_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hcd {

// Numeric values are part of the C ABI (see include/hcd/hcd.h) and must not
// be reordered.
enum class ErrorCode : int {
  kOk = 0,
  kInvalidArgument = 1,
  kEmptyInput = 2,
  kUnbalancedParens = 3,
  kDuplicateVariableDefinition = 4,
  kDanglingVariableReference = 5,
  kMalformedExpression = 6,
  kDuplicateEdge = 7,
  kDisconnectedGraph = 8,
  kSpanOutOfRange = 9,
  kUnknownVariable = 10,
  kMalformedItem = 11,
  kIndexOutOfRange = 12,
  kNoTokens = 13,
  kTopicUnalignable = 14,
  kLayoutMismatch = 15,
  kAlignmentOutOfRange = 16,
  kMalformedLine = 17,
  kMissingField = 18,
  kEmptyCorpus = 19,
  kDegenerateLabel = 20,
  kLengthMismatch = 21,
  kEmptyList = 22,
  kConfigError = 23,
  kIoError = 24,
  kFormatError = 25,
  kMissingStructure = 26,
  kInternal = 27,
};

// Stable CamelCase name, used in reports and diagnostics.
std::string_view error_code_name(ErrorCode code) noexcept;

inline constexpr std::size_t kNoOffset = static_cast<std::size_t>(-1);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::size_t offset = kNoOffset)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code),
        offset_(offset) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view kind() const noexcept { return error_code_name(code_); }

  // Byte offset into the parsed text, or kNoOffset when not applicable.
  std::size_t offset() const noexcept { return offset_; }

 private:
  ErrorCode code_;
  std::size_t offset_;
};

}  // namespace hcd

#endif  // HCD_CORE_ERROR_HPP_
