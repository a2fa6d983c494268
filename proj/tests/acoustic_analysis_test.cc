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

#include "acmatch/acoustic_analysis.h"

#include <cmath>
#include <random>
#include <vector>

#include "acmatch/reverb_match.h"
#include "acmatch/speech_synth.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace acmatch {
namespace {

using ::acmatch::testing::ConvolveTrim;
using ::acmatch::testing::MakeRoomClip;
using ::acmatch::testing::MedianOf;
using ::acmatch::testing::Spearman;
using ::acmatch::testing::ThrowsCode;

constexpr double kDecay60 = 6.907755278982137;  // 3 ln 10

Waveform ExponentialIr(double rt60, double seconds) {
  std::vector<double> h(static_cast<std::size_t>(seconds * kSampleRate));
  for (std::size_t i = 0; i < h.size(); ++i) {
    h[i] = std::exp(-kDecay60 * (static_cast<double>(i) / kSampleRate) / rt60);
  }
  return Waveform(std::move(h), kSampleRate);
}

Waveform NoiseDecayIr(double rt60, double seconds, std::uint64_t seed) {
  Waveform h = ExponentialIr(rt60, seconds);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (double& v : h.samples) v *= normal(rng);
  return h;
}

EnergyDecayCurve LineEdc(double rt60, double seconds) {
  EnergyDecayCurve edc;
  const auto n = static_cast<std::size_t>(seconds * kSampleRate);
  edc.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    edc.values[i] = -60.0 * (static_cast<double>(i) / kSampleRate) / rt60;
  }
  return edc;
}

ImpulseResponse MakeIr(Waveform w, std::size_t direct_index) {
  ImpulseResponse ir;
  ir.wave = std::move(w);
  ir.direct_index = direct_index;
  return ir;
}

TEST(SchroederEdcTest, ExponentialDecayIsStraightLine) {
  // The discrete tail sum of a geometric series keeps the same ratio, so the
  // curve is the line up to the truncation at the end of the buffer.
  const double rt = 0.5;
  const EnergyDecayCurve edc = SchroederEdc(ExponentialIr(rt, 2.0));
  for (std::size_t i = 0; i < static_cast<std::size_t>(kSampleRate); ++i) {
    EXPECT_NEAR(edc.values[i], -60.0 * (static_cast<double>(i) / kSampleRate) / rt,
                1e-6);
  }
}

TEST(SchroederEdcTest, DeltaFallsToFloor) {
  std::vector<double> h(100, 0.0);
  h[0] = 0.7;
  const EnergyDecayCurve edc = SchroederEdc(Waveform(h, kSampleRate));
  EXPECT_DOUBLE_EQ(edc.values[0], 0.0);
  for (std::size_t i = 1; i < h.size(); ++i) {
    EXPECT_DOUBLE_EQ(edc.values[i], kEdcFloorDb);
  }
}

TEST(SchroederEdcTest, NonIncreasingForRandomInputs) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Waveform w = testing::RandomWaveform(3000 + 97 * seed, seed);
    const EnergyDecayCurve edc = SchroederEdc(w);
    EXPECT_DOUBLE_EQ(edc.values[0], 0.0);
    for (std::size_t i = 1; i < edc.values.size(); ++i) {
      ASSERT_LE(edc.values[i], edc.values[i - 1]);
      ASSERT_GE(edc.values[i], kEdcFloorDb);
    }
  }
}

TEST(SchroederEdcTest, ZeroIrThrows) {
  EXPECT_TRUE(ThrowsCode(
      [] { SchroederEdc(Waveform(std::vector<double>(50, 0.0), kSampleRate)); },
      ErrorCode::kZeroSignal));
}

TEST(Rt60FromEdcTest, LineGivesItsSlope) {
  EXPECT_NEAR(Rt60FromEdc(LineEdc(0.4, 1.0)), 0.4, 1e-9);
  EXPECT_NEAR(Rt60FromEdc(LineEdc(1.2, 1.0)), 1.2, 1e-9);
}

TEST(Rt60FromEdcTest, ShallowCurveThrows) {
  EXPECT_TRUE(ThrowsCode([] { Rt60FromEdc(LineEdc(10.0, 1.0)); },
                         ErrorCode::kInsufficientDecay));
}

TEST(MeasureRt60Test, NoiseUnderExponentialEnvelope) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    EXPECT_NEAR(MeasureRt60(NoiseDecayIr(0.5, 1.5, seed)), 0.5, 0.025);
  }
}

TEST(MeasureRt60Test, ScaleInvariant) {
  const Waveform h = NoiseDecayIr(0.7, 1.5, 3);
  const double base = MeasureRt60(h);
  for (double g : {1e-4, 0.3, 17.0}) {
    Waveform s = h;
    for (double& v : s.samples) v *= g;
    EXPECT_NEAR(MeasureRt60(s), base, 1e-9 * base);
  }
}

TEST(MeasureRt60Test, SimulatedReferenceRoom) {
  ShoeboxRoom room;
  room.dims = {5.0, 4.0, 3.0};
  room.absorption.fill(0.3);
  room.source = {1.0, 1.3, 1.5};
  room.receiver = {3.6, 2.5, 1.2};
  const double measured = MeasureRt60(SimulateRir(room, kSampleRate, 1.5).wave);
  EXPECT_GT(measured, 0.75 * 0.343);
  EXPECT_LT(measured, 1.35 * 0.343);
}

TEST(DrrTest, DeltaIsClamped) {
  std::vector<double> h(800, 0.0);
  h[10] = 1.0;
  const DrrMeasurement m = Drr(MakeIr(Waveform(h, kSampleRate), 10));
  EXPECT_TRUE(m.clamped);
  EXPECT_DOUBLE_EQ(m.drr_db, kDrrClampDb);
}

TEST(DrrTest, EqualDirectAndReflectionIsZeroDb) {
  std::vector<double> h(2000, 0.0);
  h[50] = 0.4;
  h[500] = -0.4;
  const DrrMeasurement m = Drr(MakeIr(Waveform(h, kSampleRate), 50));
  EXPECT_FALSE(m.clamped);
  EXPECT_NEAR(m.drr_db, 0.0, 1e-12);
}

TEST(DrrTest, WindowEdgeIsInclusive) {
  // 2.5 ms at 16 kHz is 40 samples.
  std::vector<double> h(2000, 0.0);
  h[100] = 1.0;
  h[140] = 1.0;
  h[141] = 1.0;
  const DrrMeasurement m = Drr(MakeIr(Waveform(h, kSampleRate), 100));
  EXPECT_NEAR(m.drr_db, 10.0 * std::log10(2.0), 1e-12);
}

TEST(DrrTest, ScaleInvariant) {
  ImpulseResponse ir = MakeIr(NoiseDecayIr(0.4, 1.0, 9), 0);
  const double base = Drr(ir).drr_db;
  for (double& v : ir.wave.samples) v *= 123.0;
  EXPECT_NEAR(Drr(ir).drr_db, base, 1e-9);
}

TEST(DrrTest, SynthesizedIrRoundTrip) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const ImpulseResponse ir =
        SynthesizeIr({0.6, 5.0}, 1.0, kSampleRate, seed);
    EXPECT_NEAR(Drr(ir).drr_db, 5.0, 0.5);
  }
}

TEST(BlindRt60Test, RoomClipNearPointFour) {
  std::vector<double> errors;
  for (std::uint64_t seed = 10; seed < 15; ++seed) {
    const testing::RoomClip c = MakeRoomClip(seed, 0.38, 0.42, 4.0);
    const double est = BlindRt60(c.wet);
    errors.push_back(std::abs(est - c.rt60));
    EXPECT_LT(std::abs(est - c.rt60), 0.15) << "seed " << seed;
  }
}

TEST(BlindRt60Test, AnechoicSpeechIsShort) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    EXPECT_LT(BlindRt60(SynthesizeSpeech(seed, 4.0)), 0.15) << "seed " << seed;
  }
}

TEST(BlindRt60Test, SilenceHasNoDecay) {
  const Waveform silence(std::vector<double>(3 * kSampleRate, 0.0), kSampleRate);
  EXPECT_TRUE(ThrowsCode([&] { BlindRt60(silence); },
                         ErrorCode::kNoDecayRegions));
}

TEST(BlindRt60Test, SteadyToneHasNoDecay) {
  std::vector<double> x(3 * kSampleRate);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = std::sin(2.0 * 3.141592653589793 * 440.0 * i / kSampleRate);
  }
  EXPECT_TRUE(ThrowsCode([&] { BlindRt60(Waveform(x, kSampleRate)); },
                         ErrorCode::kNoDecayRegions));
}

TEST(BlindRt60Test, ShortClipThrows) {
  EXPECT_TRUE(ThrowsCode([] { BlindRt60(SynthesizeSpeech(1, 1.5)); },
                         ErrorCode::kInputTooShort));
}

TEST(BlindRt60Test, TracksSimulatedRoomsAcrossRange) {
  std::vector<double> truth, est, abs_err;
  for (const testing::RoomClip& c :
       testing::RoomClipsSpanning(50, 0.2, 1.0, 1000)) {
    const double e = BlindRt60(c.wet);
    truth.push_back(c.rt60);
    est.push_back(e);
    abs_err.push_back(std::abs(e - c.rt60));
  }
  EXPECT_LT(MedianOf(abs_err), 0.15);
  EXPECT_GT(Spearman(truth, est), 0.8);
}

TEST(BlindDrrTest, DeltaIrReadsHigh) {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const Waveform s = SynthesizeSpeech(50 + seed, 4.0);
    EXPECT_GE(BlindDrr(s, BlindRt60(s)), 15.0);
  }
}

TEST(BlindDrrTest, ZeroDbMedianWithinThreeDb) {
  std::vector<double> est;
  for (std::uint64_t seed = 0; seed < 7; ++seed) {
    const ImpulseResponse ir =
        SynthesizeIr({0.8, 0.0}, 1.5, kSampleRate, 300 + seed);
    ASSERT_NEAR(Drr(ir).drr_db, 0.0, 1e-6);
    const Waveform wet =
        ConvolveTrim(SynthesizeSpeech(400 + seed, 6.0), ir.wave);
    est.push_back(BlindDrr(wet, 0.8));
  }
  EXPECT_NEAR(MedianOf(est), 0.0, 3.0);
}

TEST(BlindDrrTest, OrderedForSameSpeech) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Waveform dry = SynthesizeSpeech(600 + seed, 4.0);
    const ImpulseResponse hi = SynthesizeIr({0.6, 10.0}, 1.0, kSampleRate, seed);
    const ImpulseResponse lo = SynthesizeIr({0.6, -5.0}, 1.0, kSampleRate, seed);
    EXPECT_GT(BlindDrr(ConvolveTrim(dry, hi.wave), 0.6),
              BlindDrr(ConvolveTrim(dry, lo.wave), 0.6))
        << "seed " << seed;
  }
}

TEST(BlindDrrTest, StaysInsideCalibratedRange) {
  const Waveform s = SynthesizeSpeech(77, 3.0);
  for (double hint : {0.05, 0.2, 0.9, 3.0}) {
    const double d = BlindDrr(s, hint);
    EXPECT_GE(d, BlindDrrFloorDb());
    EXPECT_LE(d, BlindDrrCeilingDb());
  }
}

TEST(SyllabicModulationRatioTest, IsAFraction) {
  const double r = SyllabicModulationRatio(SynthesizeSpeech(5, 3.0));
  EXPECT_GT(r, 0.0);
  EXPECT_LT(r, 1.0);
}

TEST(AcousticParamsTest, Validate) {
  EXPECT_NO_THROW((AcousticParams{0.3, -4.0}.Validate()));
  EXPECT_TRUE(ThrowsCode([] { AcousticParams{0.0, 0.0}.Validate(); },
                         ErrorCode::kParamOutOfRange));
  EXPECT_TRUE(ThrowsCode([] { AcousticParams{0.3, NAN}.Validate(); },
                         ErrorCode::kParamOutOfRange));
}

}  // namespace
}  // namespace acmatch
