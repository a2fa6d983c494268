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

#ifndef ACMATCH_SRC_ANALYSIS_INTERNAL_H_
#define ACMATCH_SRC_ANALYSIS_INTERNAL_H_

#include <optional>
#include <vector>

#include "acmatch/waveform.h"

namespace acmatch::internal {

// Octave bands (Hz) used by the blind estimators.
inline constexpr double kOctaveEdges[] = {125.0, 250.0,  500.0, 1000.0,
                                          2000.0, 4000.0, 8000.0};
inline constexpr int kNumOctaveBands = 6;

// Per-frame energy in each octave band of a 512/128 STFT: [band][frame].
std::vector<std::vector<double>> OctaveBandEnergies(const Waveform& w);

// BlindRt60 without the minimum-length precondition; nullopt when no decay
// segment qualifies.
std::optional<double> EstimateDecayRt60(const Waveform& w);

}  // namespace acmatch::internal

#endif  // ACMATCH_SRC_ANALYSIS_INTERNAL_H_
