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

// Regenerates src/drr_calibration.inc:
//   calibrate_drr > src/drr_calibration.inc

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

#include "acmatch/acoustic_analysis.h"
#include "acmatch/dsp.h"
#include "acmatch/reverb_match.h"
#include "acmatch/speech_synth.h"

namespace {

constexpr double kRt60Grid[] = {0.15, 0.2, 0.3, 0.4, 0.5, 0.6,
                                0.8,  1.0, 1.25, 1.5, 2.0};
constexpr double kDrrStep = 2.5;
constexpr double kDrrLo = -10.0;
constexpr double kDrrHi = 25.0;
constexpr int kClipsPerCell = 40;
constexpr double kClipSeconds = 4.0;

}  // namespace

int main() {
  using namespace acmatch;
  std::vector<double> drrs;
  for (double d = kDrrLo; d <= kDrrHi + 1e-9; d += kDrrStep) drrs.push_back(d);
  std::vector<Waveform> speech;
  for (int k = 0; k < kClipsPerCell; ++k) {
    speech.push_back(SynthesizeSpeech(900000 + k, kClipSeconds));
  }
  std::printf("// Generated by tools/calibrate_drr. Do not edit.\n");
  std::printf(
      "// Mean log SyllabicModulationRatio of synthetic speech through "
      "SynthesizeIr.\n");
  const int nr = static_cast<int>(std::size(kRt60Grid));
  std::printf("constexpr int kCalNumRt60 = %d;\n", nr);
  std::printf("constexpr int kCalNumDrr = %zu;\n", drrs.size());
  std::printf("constexpr double kCalRt60[kCalNumRt60] = {");
  for (int r = 0; r < nr; ++r) std::printf("%s%.2f", r ? ", " : "", kRt60Grid[r]);
  std::printf("};\nconstexpr double kCalDrr[kCalNumDrr] = {");
  for (std::size_t d = 0; d < drrs.size(); ++d) {
    std::printf("%s%.1f", d ? ", " : "", drrs[d]);
  }
  std::printf("};\nconstexpr double kCalFeature[kCalNumRt60][kCalNumDrr] = {\n");
  for (int r = 0; r < nr; ++r) {
    const double rt = kRt60Grid[r];
    std::vector<double> row;
    for (std::size_t d = 0; d < drrs.size(); ++d) {
      double sum = 0.0;
      for (int k = 0; k < kClipsPerCell; ++k) {
        const ImpulseResponse ir =
            SynthesizeIr({rt, drrs[d]}, MatchIrLength(rt), kSampleRate,
                         700000 + 1000 * r + 37 * d + k);
        Waveform wet = FftConvolve(speech[k], ir.wave);
        wet.samples.resize(speech[k].size());
        sum += std::log(SyllabicModulationRatio(wet));
      }
      row.push_back(sum / kClipsPerCell);
    }
    // Force a strictly increasing curve so the inversion is well defined.
    for (std::size_t d = 1; d < row.size(); ++d) {
      row[d] = std::max(row[d], row[d - 1] + 1e-4);
    }
    std::printf("    {");
    for (std::size_t d = 0; d < row.size(); ++d) {
      std::printf("%s%.6f", d ? ", " : "", row[d]);
    }
    std::printf("},\n");
  }
  std::printf("};\n");
  return 0;
}
