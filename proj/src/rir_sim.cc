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

#include "acmatch/rir_sim.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "acmatch/dsp.h"
#include "acmatch/errors.h"

namespace acmatch {

void ShoeboxRoom::Validate() const {
  for (int a = 0; a < 3; ++a) {
    if (!(dims[a] > 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, "room dimensions must be positive");
    }
    if (!(source[a] > 0.0 && source[a] < dims[a] && receiver[a] > 0.0 &&
          receiver[a] < dims[a])) {
      throw Error(ErrorCode::kInvalidArgument,
                  "source and receiver must lie strictly inside the room");
    }
  }
  for (double a : absorption) {
    if (!(a >= 0.0 && a <= 1.0)) {
      throw Error(ErrorCode::kInvalidArgument, "absorption must be in [0, 1]");
    }
  }
  if (max_order < 0) {
    throw Error(ErrorCode::kInvalidArgument, "max_order must be >= 0");
  }
  if (!(speed_of_sound > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "speed of sound must be positive");
  }
  if (SourceReceiverDistance() <= 0.0) {
    throw Error(ErrorCode::kDegenerateGeometry,
                "source and receiver are at the same position");
  }
}

double ShoeboxRoom::Volume() const { return dims[0] * dims[1] * dims[2]; }

std::array<double, 6> ShoeboxRoom::SurfaceAreas() const {
  const double yz = dims[1] * dims[2];
  const double xz = dims[0] * dims[2];
  const double xy = dims[0] * dims[1];
  return {yz, yz, xz, xz, xy, xy};
}

double ShoeboxRoom::SourceReceiverDistance() const {
  double d2 = 0.0;
  for (int a = 0; a < 3; ++a) {
    const double d = source[a] - receiver[a];
    d2 += d * d;
  }
  return std::sqrt(d2);
}

namespace {

// One image coordinate along an axis: squared offset to the receiver,
// accumulated reflection gain and reflection count.
struct AxisImage {
  double offset_sq;
  double gain;
  int order;
};

std::vector<AxisImage> AxisImages(double length, double src, double rec,
                                  double beta_lo, double beta_hi,
                                  double max_dist, int max_order) {
  std::vector<AxisImage> images;
  const int m_max = static_cast<int>(std::ceil(max_dist / (2.0 * length))) + 1;
  for (int parity = 0; parity <= 1; ++parity) {
    for (int m = -m_max; m <= m_max; ++m) {
      const double pos = (1 - 2 * parity) * src + 2.0 * m * length;
      const double offset = pos - rec;
      if (std::abs(offset) > max_dist) continue;
      const int lo_hits = std::abs(m - parity);
      const int hi_hits = std::abs(m);
      const int order = lo_hits + hi_hits;
      if (order > max_order) continue;
      const double gain =
          std::pow(beta_lo, lo_hits) * std::pow(beta_hi, hi_hits);
      images.push_back({offset * offset, gain, order});
    }
  }
  return images;
}

}  // namespace

ImpulseResponse SimulateRir(const ShoeboxRoom& room, int sample_rate,
                            double ir_length_s, double highpass_hz) {
  room.Validate();
  if (sample_rate <= 0 || !(ir_length_s > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "bad sample rate or IR length");
  }
  if (!(highpass_hz >= 0.0 && highpass_hz < sample_rate / 2.0)) {
    throw Error(ErrorCode::kInvalidArgument, "bad high-pass cutoff");
  }
  const std::size_t length =
      static_cast<std::size_t>(std::llround(ir_length_s * sample_rate));
  const double direct_dist = room.SourceReceiverDistance();
  const auto direct_index = static_cast<std::size_t>(
      std::llround(direct_dist / room.speed_of_sound * sample_rate));
  if (direct_index >= length) {
    throw Error(ErrorCode::kInputTooShort,
                "IR length does not reach the direct path arrival");
  }

  std::array<double, 6> beta;
  for (int i = 0; i < 6; ++i) beta[i] = std::sqrt(1.0 - room.absorption[i]);
  const double max_dist = room.speed_of_sound * ir_length_s;
  const double max_dist_sq = max_dist * max_dist;
  std::array<std::vector<AxisImage>, 3> axes;
  for (int a = 0; a < 3; ++a) {
    axes[a] = AxisImages(room.dims[a], room.source[a], room.receiver[a],
                         beta[2 * a], beta[2 * a + 1], max_dist,
                         room.max_order);
  }

  std::vector<double> h(length, 0.0);
  const double samples_per_meter = sample_rate / room.speed_of_sound;
  const double inv_4pi = 1.0 / (4.0 * std::numbers::pi);
  for (const AxisImage& ix : axes[0]) {
    for (const AxisImage& iy : axes[1]) {
      const double dxy = ix.offset_sq + iy.offset_sq;
      const int oxy = ix.order + iy.order;
      if (dxy > max_dist_sq || oxy > room.max_order) continue;
      const double gxy = ix.gain * iy.gain;
      for (const AxisImage& iz : axes[2]) {
        const double d2 = dxy + iz.offset_sq;
        if (d2 > max_dist_sq || oxy + iz.order > room.max_order) continue;
        const double gain = gxy * iz.gain;
        if (gain == 0.0) continue;
        const double d = std::sqrt(d2);
        const auto idx =
            static_cast<std::size_t>(std::llround(d * samples_per_meter));
        if (idx >= length) continue;
        h[idx] += gain * inv_4pi / d;
      }
    }
  }
  if (highpass_hz > 0.0) HighPassInPlace(h, highpass_hz, sample_rate);
  return {Waveform(std::move(h), sample_rate), direct_index};
}

Waveform AlignedToDirectPath(const ImpulseResponse& ir) {
  if (ir.direct_index >= ir.wave.size()) {
    throw Error(ErrorCode::kInvalidArgument, "direct index out of range");
  }
  return Waveform(std::vector<double>(ir.wave.samples.begin() +
                                          static_cast<std::ptrdiff_t>(ir.direct_index),
                                      ir.wave.samples.end()),
                  ir.wave.sample_rate);
}

double SabineRt60(const ShoeboxRoom& room) {
  const auto areas = room.SurfaceAreas();
  double absorbing = 0.0;
  for (int i = 0; i < 6; ++i) absorbing += areas[i] * room.absorption[i];
  if (!(absorbing > 0.0)) {
    throw Error(ErrorCode::kInfiniteReverb,
                "no surface absorbs sound; Sabine RT60 is infinite");
  }
  return 0.161 * room.Volume() / absorbing;
}

ShoeboxRoom SampleRandomRoom(std::uint64_t seed, double rt60_lo,
                             double rt60_hi) {
  if (!(rt60_lo > 0.05 && rt60_hi < 2.0 && rt60_lo <= rt60_hi)) {
    throw Error(ErrorCode::kParamOutOfRange,
                "rt60 range must lie within (0.05, 2.0) s");
  }
  constexpr double kMinDim = 2.5;
  constexpr double kMaxDim = 12.0;
  constexpr double kClearance = 0.5;
  constexpr int kMaxAttempts = 100;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    ShoeboxRoom room;
    for (int a = 0; a < 3; ++a) {
      room.dims[a] = kMinDim + (kMaxDim - kMinDim) * unit(rng);
    }
    const double target = rt60_lo + (rt60_hi - rt60_lo) * unit(rng);
    double total_area = 0.0;
    for (double s : room.SurfaceAreas()) total_area += s;
    const double alpha = 0.161 * room.Volume() / (total_area * target);
    for (int a = 0; a < 3; ++a) {
      const double span = room.dims[a] - 2.0 * kClearance;
      room.source[a] = kClearance + span * unit(rng);
      room.receiver[a] = kClearance + span * unit(rng);
    }
    if (!(alpha > 0.0 && alpha <= 1.0)) continue;
    if (room.SourceReceiverDistance() < kClearance) continue;
    room.absorption.fill(alpha);
    // Solving alpha in floating point can land a hair outside the range.
    const double rt = SabineRt60(room);
    if (rt < rt60_lo || rt > rt60_hi) continue;
    return room;
  }
  throw Error(ErrorCode::kInfeasibleTarget,
              "no feasible room for rt60 range after 100 attempts");
}

}  // namespace acmatch
