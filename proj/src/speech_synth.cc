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

#include "acmatch/speech_synth.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "acmatch/dsp.h"
#include "acmatch/errors.h"

namespace acmatch {
namespace {

// Two-pole resonator with unity-ish gain at the center frequency.
void Resonate(std::vector<double>& x, double freq, double bandwidth,
              int rate) {
  const double r = std::exp(-std::numbers::pi * bandwidth / rate);
  const double a1 = 2.0 * r * std::cos(2.0 * std::numbers::pi * freq / rate);
  const double a2 = r * r;
  const double b0 = 1.0 - r;
  double y1 = 0.0;
  double y2 = 0.0;
  for (double& v : x) {
    const double y = b0 * v + a1 * y1 - a2 * y2;
    y2 = y1;
    y1 = y;
    v = y;
  }
}

// Recorded speech has nothing below the microphone chain's high-pass.
constexpr double kHighPassHz = 80.0;

}  // namespace

Waveform SynthesizeSpeech(std::uint64_t seed, double duration_s,
                          int sample_rate) {
  if (!(duration_s > 0.25) || sample_rate <= 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "speech duration must exceed 0.25 s");
  }
  std::mt19937_64 rng(seed);
  auto uniform = [&rng](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  };
  std::normal_distribution<double> normal(0.0, 1.0);

  const auto n = static_cast<std::size_t>(duration_s * sample_rate);
  const auto margin = static_cast<std::size_t>(0.1 * sample_rate);
  std::vector<double> out(n, 0.0);
  std::size_t t = margin;
  while (t + margin < n) {
    const auto len =
        static_cast<std::size_t>(uniform(0.08, 0.28) * sample_rate);
    const double f0 = uniform(90.0, 220.0) * (1.0 + 0.05 * normal(rng));
    std::vector<double> y(len);
    double phase = 0.0;
    double prev_floor = 0.0;
    for (std::size_t i = 0; i < len; ++i) {
      phase += f0 / sample_rate;
      const double fl = std::floor(phase);
      y[i] = (fl - prev_floor) + 0.02 * normal(rng);
      prev_floor = fl;
    }
    Resonate(y, uniform(300.0, 900.0), 80.0, sample_rate);
    Resonate(y, uniform(900.0, 2500.0), 120.0, sample_rate);
    Resonate(y, uniform(2300.0, 3500.0), 180.0, sample_rate);

    const auto attack = static_cast<std::size_t>(0.010 * sample_rate);
    const auto release = static_cast<std::size_t>(0.015 * sample_rate);
    for (std::size_t i = 0; i < len; ++i) {
      double env = 1.0;
      if (i < attack) env = static_cast<double>(i) / (attack - 1);
      if (i + release >= len) {
        env = std::min(env, static_cast<double>(len - 1 - i) / (release - 1));
      }
      y[i] *= env;
    }
    double peak = 1e-12;
    for (double v : y) peak = std::max(peak, std::abs(v));
    const double level = uniform(0.5, 1.0) / peak;
    const std::size_t end = std::min(n, t + len);
    for (std::size_t i = t; i < end; ++i) out[i] += y[i - t] * level;

    const bool short_pause = uniform(0.0, 1.0) < 0.6;
    const double pause =
        short_pause ? uniform(0.05, 0.2) : uniform(0.3, 0.6);
    t = end + static_cast<std::size_t>(pause * sample_rate);
  }
  HighPassInPlace(out, kHighPassHz, sample_rate);
  HighPassInPlace(out, kHighPassHz, sample_rate);
  double peak = 0.0;
  for (double v : out) peak = std::max(peak, std::abs(v));
  if (peak > 0.0) {
    for (double& v : out) v *= 0.5 / peak;
  }
  return Waveform(std::move(out), sample_rate);
}

}  // namespace acmatch
