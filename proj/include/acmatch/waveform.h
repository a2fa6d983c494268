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

#ifndef ACMATCH_WAVEFORM_H_
#define ACMATCH_WAVEFORM_H_

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace acmatch {

// Project-wide sample rate. Inputs at any other rate are rejected.
inline constexpr int kSampleRate = 16000;

// Row-major dense matrix used for spectrograms and feature sequences.
using Matrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Mono time-domain signal.
struct Waveform {
  std::vector<double> samples;
  int sample_rate = kSampleRate;

  Waveform() = default;
  Waveform(std::vector<double> s, int rate)
      : samples(std::move(s)), sample_rate(rate) {}

  std::size_t size() const { return samples.size(); }
  double duration_seconds() const {
    return static_cast<double>(samples.size()) / sample_rate;
  }
  std::span<const double> view() const { return samples; }
};

// Throws kInvalidArgument unless rate > 0, the signal is non-empty and every
// sample is finite.
void ValidateWaveform(const Waveform& w);

double Energy(std::span<const double> x);
double PeakAbs(std::span<const double> x);

// Returns a copy of `w` scaled so that its absolute peak equals `peak`.
// Silent inputs are returned unchanged.
Waveform ScaleToPeak(const Waveform& w, double peak);

// Truncates or zero-pads to exactly `length` samples.
Waveform Resized(const Waveform& w, std::size_t length);

}  // namespace acmatch

#endif  // ACMATCH_WAVEFORM_H_
