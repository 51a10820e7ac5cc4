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

#include "slumkit/error.h"

namespace slumkit {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return "InvalidArgument";
    case ErrorCode::kInvalidPolygon:
      return "InvalidPolygon";
    case ErrorCode::kMalformedRle:
      return "MalformedRle";
    case ErrorCode::kDimensionMismatch:
      return "DimensionMismatch";
    case ErrorCode::kEmptyMask:
      return "EmptyMask";
    case ErrorCode::kParseError:
      return "ParseError";
    case ErrorCode::kValidationError:
      return "ValidationError";
    case ErrorCode::kUnknownScene:
      return "UnknownScene";
    case ErrorCode::kImageLoadError:
      return "ImageLoadError";
    case ErrorCode::kInvalidConfig:
      return "InvalidConfig";
    case ErrorCode::kInvalidProbability:
      return "InvalidProbability";
    case ErrorCode::kIndexError:
      return "IndexError";
    case ErrorCode::kNonDifferentiablePoint:
      return "NonDifferentiablePoint";
    case ErrorCode::kIoError:
      return "IoError";
  }
  return "Unknown";
}

}  // namespace slumkit
