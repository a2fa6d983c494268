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

#ifndef ACMATCH_REVERB_MATCH_H_
#define ACMATCH_REVERB_MATCH_H_

#include <cstdint>
#include <variant>

#include "acmatch/acoustic_analysis.h"
#include "acmatch/rir_sim.h"
#include "acmatch/waveform.h"

namespace acmatch {

// Parametric IR: a direct impulse followed, 2.5 ms later, by seeded Gaussian
// noise under an exp(-6.9078 t / rt60) envelope. The direct gain is solved
// against the realized tail energy so the DRR is exact; total energy is 1.
// Throws kParamOutOfRange unless rt60 is in [0.05, 3.0) and
// length_s >= rt60.
ImpulseResponse SynthesizeIr(const AcousticParams& params, double length_s,
                             int sample_rate, std::uint64_t seed);

// IR length used by Match for a given RT60.
double MatchIrLength(double rt60);

struct MatchRequest {
  Waveform source;
  // Reverberant audio from the target space, or its parameters directly.
  std::variant<Waveform, AcousticParams> reference;
  std::uint64_t seed = 0;
};

struct MatchResult {
  Waveform output;
  AcousticParams params;
  bool params_estimated = false;
  ImpulseResponse ir;
};

// Estimates params from reference audio when given, synthesizes an IR,
// convolves, trims to the source length and restores the source peak.
// Throws kZeroSignal on a silent source; propagates blind-estimation errors.
MatchResult Match(const MatchRequest& request);

struct DereverbResult {
  Waveform output;
  double rt60_estimate = 0.0;
  // Set when no decay could be measured and the input was passed through.
  bool passthrough = false;
};

// Late-reverberation suppression in the STFT power domain. The late part of
// each frame is predicted from already-suppressed past frames with an
// exp(-2 a tau) weighting set by the blind RT60, subtracted, and floored at
// 0.1 |X|; the original phase is reused. Throws kInputTooShort below 1 s.
DereverbResult Dereverberate(const Waveform& speech);

}  // namespace acmatch

#endif  // ACMATCH_REVERB_MATCH_H_
