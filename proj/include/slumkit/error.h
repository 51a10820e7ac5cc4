// Copyright 2026 The slumkit Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SLUMKIT_ERROR_H_
#define SLUMKIT_ERROR_H_

#include <stdexcept>
#include <string>

namespace slumkit {

// Failure categories shared by every module. The numeric values are mirrored
// by sk_status in the C API, so never reorder.
enum class ErrorCode {
  kInvalidArgument = 1,
  kInvalidPolygon = 2,
  kMalformedRle = 3,
  kDimensionMismatch = 4,
  kEmptyMask = 5,
  kParseError = 6,
  kValidationError = 7,
  kUnknownScene = 8,
  kImageLoadError = 9,
  kInvalidConfig = 10,
  kInvalidProbability = 11,
  kIndexError = 12,
  kNonDifferentiablePoint = 13,
  kIoError = 14,
};

const char* ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace slumkit

#endif  // SLUMKIT_ERROR_H_
