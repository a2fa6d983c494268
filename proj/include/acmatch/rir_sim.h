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

#ifndef ACMATCH_RIR_SIM_H_
#define ACMATCH_RIR_SIM_H_

#include <array>
#include <cstddef>
#include <cstdint>

#include "acmatch/waveform.h"

namespace acmatch {

using Vec3 = std::array<double, 3>;

// Rectangular room with one broadband absorption coefficient per surface.
// Surface order: x=0, x=Lx, y=0, y=Ly, z=0, z=Lz.
struct ShoeboxRoom {
  Vec3 dims{5.0, 4.0, 3.0};
  std::array<double, 6> absorption{0.3, 0.3, 0.3, 0.3, 0.3, 0.3};
  Vec3 source{1.0, 1.0, 1.5};
  Vec3 receiver{3.5, 2.5, 1.5};
  double speed_of_sound = 343.0;
  int max_order = 60;

  // Throws kInvalidArgument on out-of-range values and kDegenerateGeometry
  // when source and receiver coincide.
  void Validate() const;
  double Volume() const;
  std::array<double, 6> SurfaceAreas() const;
  double SourceReceiverDistance() const;
};

// A room transfer function together with the sample index of the direct path.
struct ImpulseResponse {
  Waveform wave;
  std::size_t direct_index = 0;
};

// Cutoff of the high-pass applied to simulated IRs. Image pulses are all
// positive, so dense late arrivals that share a sample add coherently and
// build a DC component that grows with image density and slows the decay.
inline constexpr double kRirHighPassHz = 50.0;

// Image-source simulation. Every image (up to room.max_order reflections and
// within speed_of_sound * ir_length_s of the receiver) adds
// prod(sqrt(1 - alpha)) / (4 pi d) at sample round(d / c * rate). The sum is
// then high-passed at `highpass_hz`; 0 returns the raw image sum.
ImpulseResponse SimulateRir(const ShoeboxRoom& room, int sample_rate,
                            double ir_length_s,
                            double highpass_hz = kRirHighPassHz);

// 0.161 V / sum(S_i alpha_i). Throws kInfiniteReverb when nothing absorbs.
double SabineRt60(const ShoeboxRoom& room);

// The IR with its propagation delay removed, so the direct path is at
// sample 0. Convolving with it keeps the output time-aligned to the input.
Waveform AlignedToDirectPath(const ImpulseResponse& ir);

// Draws dims in [2.5, 12] m per axis, solves a uniform absorption so that
// SabineRt60 lands in [rt60_lo, rt60_hi], and places source and receiver at
// least 0.5 m from every wall and from each other.
ShoeboxRoom SampleRandomRoom(std::uint64_t seed, double rt60_lo,
                             double rt60_hi);

}  // namespace acmatch

#endif  // ACMATCH_RIR_SIM_H_
