/*
Copyright 2026 The acmatch Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS-IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#include "acmatch/errors.h"

namespace acmatch {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInputTooShort: return "InputTooShort";
    case ErrorCode::kRateMismatch: return "RateMismatch";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kZeroSignal: return "ZeroSignal";
    case ErrorCode::kDegenerateGeometry: return "DegenerateGeometry";
    case ErrorCode::kInfiniteReverb: return "InfiniteReverb";
    case ErrorCode::kInfeasibleTarget: return "InfeasibleTarget";
    case ErrorCode::kInsufficientDecay: return "InsufficientDecay";
    case ErrorCode::kNoDecayRegions: return "NoDecayRegions";
    case ErrorCode::kParamOutOfRange: return "ParamOutOfRange";
    case ErrorCode::kEmptyPool: return "EmptyPool";
    case ErrorCode::kBadVariant: return "BadVariant";
    case ErrorCode::kBadDim: return "BadDim";
    case ErrorCode::kLengthNotAligned: return "LengthNotAligned";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kEmptyAfterFilter: return "EmptyAfterFilter";
    case ErrorCode::kMisaligned: return "Misaligned";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kFormat: return "Format";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code) {}

}  // namespace acmatch
