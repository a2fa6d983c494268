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

#ifndef ACMATCH_WAV_IO_H_
#define ACMATCH_WAV_IO_H_

#include <filesystem>

#include "acmatch/waveform.h"

namespace acmatch {

enum class WavEncoding { kPcm16, kFloat32 };

// Reads a mono 16 kHz WAV file, PCM 16-bit or IEEE float 32-bit.
// Multi-channel files and other sample rates are rejected.
Waveform ReadWav(const std::filesystem::path& path);

// PCM16 output is clipped to [-1, 1].
void WriteWav(const std::filesystem::path& path, const Waveform& w,
              WavEncoding encoding = WavEncoding::kFloat32);

}  // namespace acmatch

#endif  // ACMATCH_WAV_IO_H_
