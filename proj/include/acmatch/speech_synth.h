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

#ifndef ACMATCH_SPEECH_SYNTH_H_
#define ACMATCH_SPEECH_SYNTH_H_

#include <cstdint>

#include "acmatch/waveform.h"

namespace acmatch {

// Speech-like test signal: voiced syllables (glottal pulse train through
// three formant resonators) separated by short and long pauses. Peak
// amplitude is 0.5. Deterministic per seed.
Waveform SynthesizeSpeech(std::uint64_t seed, double duration_s,
                          int sample_rate = kSampleRate);

}  // namespace acmatch

#endif  // ACMATCH_SPEECH_SYNTH_H_
