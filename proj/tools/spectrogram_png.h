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

#ifndef ACMATCH_TOOLS_SPECTROGRAM_PNG_H_
#define ACMATCH_TOOLS_SPECTROGRAM_PNG_H_

#include <filesystem>

#include "acmatch/waveform.h"

namespace acmatch::cli {

// Writes the magnitude spectrogram in dB as an 8-bit grayscale PNG: time on
// the x-axis, 0 Hz at the bottom up to `max_hz` at the top, 80 dB of range
// below the loudest cell. Throws kIo when the file cannot be written.
void WriteSpectrogramPng(const std::filesystem::path& path, const Waveform& w,
                         double max_hz = 3000.0);

}  // namespace acmatch::cli

#endif  // ACMATCH_TOOLS_SPECTROGRAM_PNG_H_
