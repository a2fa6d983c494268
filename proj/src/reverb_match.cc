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

#include "acmatch/reverb_match.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "acmatch/dsp.h"
#include "acmatch/errors.h"
#include "analysis_internal.h"

namespace acmatch {
namespace {

constexpr double kDecay60 = 6.907755278982137;  // 3 ln 10
constexpr double kTailOffsetS = 0.0025;
constexpr std::size_t kNoiseBlock = 32;  // 2 ms at 16 kHz

// Dereverberation constants.
constexpr int kLateOnsetFrames = 2;
constexpr double kLateGain = 2.5;
constexpr double kSpectralFloor = 0.1;

}  // namespace

ImpulseResponse SynthesizeIr(const AcousticParams& params, double length_s,
                             int sample_rate, std::uint64_t seed) {
  params.Validate();
  if (!(params.rt60 >= 0.05 && params.rt60 < 3.0)) {
    throw Error(ErrorCode::kParamOutOfRange, "rt60 must be in [0.05, 3.0) s");
  }
  if (!(length_s >= params.rt60) || sample_rate <= 0) {
    throw Error(ErrorCode::kParamOutOfRange, "IR length must be >= rt60");
  }
  const auto n = static_cast<std::size_t>(std::llround(length_s * sample_rate));
  const std::size_t direct = 0;
  const std::size_t tail_start =
      direct + static_cast<std::size_t>(std::llround(kTailOffsetS * sample_rate)) +
      1;
  std::vector<double> h(n, 0.0);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  // Each block of noise is scaled to unit mean power, so the realized energy
  // envelope is the requested exponential rather than a noisy estimate of it.
  // A normalized Gaussian block is uniform on the sphere, hence still white.
  double tail_energy = 0.0;
  for (std::size_t b = tail_start; b < n; b += kNoiseBlock) {
    const std::size_t end = std::min(n, b + kNoiseBlock);
    double power = 0.0;
    for (std::size_t i = b; i < end; ++i) {
      h[i] = normal(rng);
      power += h[i] * h[i];
    }
    const double g = std::sqrt(static_cast<double>(end - b) / power);
    for (std::size_t i = b; i < end; ++i) {
      const double t = static_cast<double>(i - tail_start) / sample_rate;
      h[i] *= g * std::exp(-kDecay60 * t / params.rt60);
      tail_energy += h[i] * h[i];
    }
  }
  const double direct_energy = tail_energy * std::pow(10.0, params.drr / 10.0);
  h[direct] = std::sqrt(direct_energy);
  const double norm = 1.0 / std::sqrt(direct_energy + tail_energy);
  for (double& v : h) v *= norm;
  return {Waveform(std::move(h), sample_rate), direct};
}

double MatchIrLength(double rt60) { return 1.5 * rt60 + 0.1; }

MatchResult Match(const MatchRequest& request) {
  const Waveform& src = request.source;
  ValidateWaveform(src);
  if (PeakAbs(src.samples) == 0.0) {
    throw Error(ErrorCode::kZeroSignal, "source is silent");
  }
  MatchResult result;
  if (const auto* ref = std::get_if<Waveform>(&request.reference)) {
    if (ref->sample_rate != src.sample_rate) {
      throw Error(ErrorCode::kRateMismatch,
                  "reference and source sample rates differ");
    }
    const double rt60 = BlindRt60(*ref);
    result.params = {std::clamp(rt60, 0.05, 2.9), BlindDrr(*ref, rt60)};
    result.params_estimated = true;
  } else {
    result.params = std::get<AcousticParams>(request.reference);
  }
  result.ir = SynthesizeIr(result.params, MatchIrLength(result.params.rt60),
                           src.sample_rate, request.seed);
  Waveform wet = FftConvolve(src, result.ir.wave);
  wet.samples.resize(src.size());
  result.output = ScaleToPeak(wet, PeakAbs(src.samples));
  return result;
}

DereverbResult Dereverberate(const Waveform& speech) {
  ValidateWaveform(speech);
  if (speech.size() < static_cast<std::size_t>(speech.sample_rate)) {
    throw Error(ErrorCode::kInputTooShort,
                "dereverberation needs at least 1 s of audio");
  }
  DereverbResult result;
  const auto rt60 = internal::EstimateDecayRt60(speech);
  if (!rt60) {
    result.output = speech;
    result.passthrough = true;
    return result;
  }
  result.rt60_estimate = *rt60;

  const StftParams p;
  ComplexSpectrogram x = StftComplex(speech, p);
  const int frames = static_cast<int>(x.bins.rows());
  const int bins = p.num_bins();
  const double frame_dt = static_cast<double>(p.hop) / speech.sample_rate;
  const double a = kDecay60 * frame_dt / *rt60;
  const int taps = static_cast<int>(std::ceil(*rt60 / frame_dt));
  const double gain = kLateGain * (1.0 - std::exp(-2.0 * a));
  std::vector<double> weight(taps + 1, 0.0);
  for (int tau = kLateOnsetFrames; tau <= taps; ++tau) {
    weight[tau] = gain * std::exp(-2.0 * a * tau);
  }

  Matrix out_power(frames, bins);
  std::vector<double> late(bins);
  for (int t = 0; t < frames; ++t) {
    std::fill(late.begin(), late.end(), 0.0);
    for (int tau = kLateOnsetFrames; tau <= std::min(taps, t); ++tau) {
      const double w = weight[tau];
      const double* past = out_power.row(t - tau).data();
      for (int k = 0; k < bins; ++k) late[k] += w * past[k];
    }
    for (int k = 0; k < bins; ++k) {
      const double power = std::norm(x.bins(t, k));
      const double floor = kSpectralFloor * kSpectralFloor * power;
      const double kept = std::max(power - late[k], floor);
      out_power(t, k) = kept;
      if (power > 0.0) x.bins(t, k) *= std::sqrt(kept / power);
    }
  }
  result.output = Istft(x, speech.size());
  return result;
}

}  // namespace acmatch
