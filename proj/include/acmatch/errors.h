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

#ifndef ACMATCH_ERRORS_H_
#define ACMATCH_ERRORS_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace acmatch {

// Failure kinds surfaced by every module. The CLI prints the kind name in its
// diagnostics, so names are stable.
enum class ErrorCode {
  kInputTooShort,
  kRateMismatch,
  kShapeMismatch,
  kZeroSignal,
  kDegenerateGeometry,
  kInfiniteReverb,
  kInfeasibleTarget,
  kInsufficientDecay,
  kNoDecayRegions,
  kParamOutOfRange,
  kEmptyPool,
  kBadVariant,
  kBadDim,
  kLengthNotAligned,
  kLengthMismatch,
  kEmptyAfterFilter,
  kMisaligned,
  kInvalidArgument,
  kFormat,
  kIo,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace acmatch

#endif  // ACMATCH_ERRORS_H_
