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

#ifndef ACMATCH_ALTERATION_H_
#define ACMATCH_ALTERATION_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "acmatch/rir_sim.h"
#include "acmatch/waveform.h"

namespace acmatch {

struct IrPoolEntry {
  std::string id;
  std::string split;  // "train", "val" or "test"
  ImpulseResponse ir;
  double rt60 = 0.0;  // Schroeder RT60 of `ir`
};

struct IrPool {
  std::vector<IrPoolEntry> entries;

  // Throws kInvalidArgument on duplicate ids or unknown split names.
  void Validate() const;
  std::vector<const IrPoolEntry*> Split(std::string_view split) const;
  const IrPoolEntry* Find(std::string_view id) const;
};

bool IsValidSplit(std::string_view split);

struct IrPoolSpec {
  int train = 20;
  int val = 5;
  int test = 5;
  double rt60_lo = 0.2;
  double rt60_hi = 1.0;
  double ir_length_s = 1.5;
};

// Simulated shoebox IRs from SampleRandomRoom; entry i uses seed ^ i.
IrPool GenerateIrPool(const IrPoolSpec& spec, std::uint64_t seed);

struct AlterationTrace {
  Waveform a_t;  // input
  Waveform a_c;  // dereverberated
  Waveform a_r;  // re-reverberated with a pool IR
  Waveform a_s;  // with noise
  std::string sampled_ir_id;
  double snr_db = 0.0;
  std::uint64_t seed = 0;
  bool dereverb_passthrough = false;
};

// Dereverberate, convolve with an IR drawn uniformly from `split` (trimmed
// and peak-matched), then add white noise at an SNR drawn from U[2, 10] dB.
// Throws kEmptyPool when the split has no IRs and kInputTooShort below 2 s.
AlterationTrace Alter(const Waveform& a_t, const IrPool& pool,
                      std::string_view split, std::uint64_t seed);

enum class AlterationVariant {
  kFull,                    // dereverb + randomization + noise
  kDereverbRandomization,   // dereverb + randomization
  kDereverbNoise,           // dereverb + noise
  kDereverb,                // dereverb only
  kRandomizationNoise,      // original + randomization + noise
};

// Accepts "full", "dereverb+randomization", "dereverb+noise", "dereverb" and
// "at+randomization+noise" (case-insensitive, spaces and dots ignored).
// Throws kBadVariant otherwise.
AlterationVariant ParseAlterationVariant(std::string_view name);
std::string_view AlterationVariantName(AlterationVariant v);

// Runs the stage subset of a variant. Random draws are shared with Alter, so
// kFull reproduces Alter(...).a_s exactly.
Waveform AblationVariant(const Waveform& a_t, const IrPool& pool,
                         std::string_view split, std::uint64_t seed,
                         AlterationVariant variant);

}  // namespace acmatch

#endif  // ACMATCH_ALTERATION_H_
