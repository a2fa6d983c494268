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

#include "acmatch/alteration.h"

#include <cmath>
#include <complex>
#include <numbers>
#include <set>
#include <vector>

#include "acmatch/acoustic_analysis.h"
#include "acmatch/dsp.h"
#include "acmatch/speech_synth.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace acmatch {
namespace {

using ::acmatch::testing::MakeRoomClip;
using ::acmatch::testing::Pearson;
using ::acmatch::testing::ThrowsCode;

const IrPool& SmallPool() {
  static const IrPool* pool = [] {
    IrPoolSpec spec;
    spec.train = 6;
    spec.val = 2;
    spec.test = 2;
    return new IrPool(GenerateIrPool(spec, 77));
  }();
  return *pool;
}

double Mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

// Broadband frame energy envelope restricted to 2-8 Hz by a direct DFT.
std::vector<double> SyllabicEnvelope(const Waveform& w) {
  const int hop = 128;
  const std::size_t frames = w.size() / hop;
  std::vector<double> env(frames);
  for (std::size_t f = 0; f < frames; ++f) {
    double e = 0.0;
    for (int i = 0; i < hop; ++i) {
      const double v = w.samples[f * hop + i];
      e += v * v;
    }
    env[f] = e;
  }
  const double frame_rate = static_cast<double>(w.sample_rate) / hop;
  const std::size_t n = frames;
  std::vector<std::complex<double>> spec(n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t t = 0; t < n; ++t) {
      spec[k] += env[t] * std::polar(1.0, -2.0 * std::numbers::pi *
                                              static_cast<double>(k * t) / n);
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t kk = std::min(k, n - k);
    const double f = kk * frame_rate / n;
    if (f < 2.0 || f > 8.0) spec[k] = 0.0;
  }
  std::vector<double> out(n);
  for (std::size_t t = 0; t < n; ++t) {
    std::complex<double> acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      acc += spec[k] * std::polar(1.0, 2.0 * std::numbers::pi *
                                           static_cast<double>(k * t) / n);
    }
    out[t] = acc.real() / n;
  }
  return out;
}

TEST(IrPoolTest, GeneratedSplitsAndIds) {
  const IrPool& pool = SmallPool();
  EXPECT_NO_THROW(pool.Validate());
  EXPECT_EQ(pool.Split("train").size(), 6u);
  EXPECT_EQ(pool.Split("val").size(), 2u);
  EXPECT_EQ(pool.Split("test").size(), 2u);
  std::set<std::string> ids;
  for (const IrPoolEntry& e : pool.entries) {
    ids.insert(e.id);
    EXPECT_GT(e.rt60, 0.0);
    EXPECT_EQ(pool.Find(e.id), &e);
  }
  EXPECT_EQ(ids.size(), pool.entries.size());
  EXPECT_EQ(pool.Find("nope"), nullptr);
}

TEST(IrPoolTest, ValidateRejectsDuplicatesAndBadSplits) {
  IrPool pool = SmallPool();
  pool.entries[1].id = pool.entries[0].id;
  EXPECT_TRUE(ThrowsCode([&] { pool.Validate(); }, ErrorCode::kInvalidArgument));
  pool = SmallPool();
  pool.entries[0].split = "dev";
  EXPECT_TRUE(ThrowsCode([&] { pool.Validate(); }, ErrorCode::kInvalidArgument));
  EXPECT_TRUE(IsValidSplit("val"));
  EXPECT_FALSE(IsValidSplit("Val"));
}

TEST(AlterTest, TraceIsCompleteAndAligned) {
  const testing::RoomClip c = MakeRoomClip(5, 0.4, 0.5, 3.0);
  const AlterationTrace t = Alter(c.wet, SmallPool(), "train", 9);
  for (const Waveform* w : {&t.a_t, &t.a_c, &t.a_r, &t.a_s}) {
    EXPECT_EQ(w->size(), c.wet.size());
    EXPECT_EQ(w->sample_rate, c.wet.sample_rate);
  }
  EXPECT_EQ(t.a_t.samples, c.wet.samples);
  const IrPoolEntry* e = SmallPool().Find(t.sampled_ir_id);
  ASSERT_NE(e, nullptr);
  EXPECT_EQ(e->split, "train");
  EXPECT_EQ(t.seed, 9u);
  EXPECT_NEAR(PeakAbs(t.a_r.samples), PeakAbs(t.a_c.samples), 1e-12);
  EXPECT_NEAR(MeasuredSnrDb(t.a_r, t.a_s), t.snr_db, 1e-6);
}

TEST(AlterTest, DeterministicPerSeed) {
  const Waveform s = MakeRoomClip(6, 0.4, 0.5, 2.5).wet;
  const AlterationTrace a = Alter(s, SmallPool(), "val", 3);
  const AlterationTrace b = Alter(s, SmallPool(), "val", 3);
  EXPECT_EQ(a.a_s.samples, b.a_s.samples);
  EXPECT_EQ(a.sampled_ir_id, b.sampled_ir_id);
  EXPECT_EQ(a.snr_db, b.snr_db);
}

TEST(AlterTest, SnrAlwaysInRange) {
  const Waveform s = SynthesizeSpeech(1, 2.0);
  std::set<std::string> drawn;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const AlterationTrace t = Alter(s, SmallPool(), "train", seed);
    EXPECT_GE(t.snr_db, 2.0);
    EXPECT_LE(t.snr_db, 10.0);
    drawn.insert(t.sampled_ir_id);
  }
  // Uniform draws over six IRs should reach most of them.
  EXPECT_GE(drawn.size(), 5u);
}

TEST(AlterTest, StageRt60Trajectory) {
  std::vector<double> t, c, r, s;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const testing::RoomClip clip = MakeRoomClip(700 + seed, 0.3, 0.6, 4.0);
    const AlterationTrace tr = Alter(clip.wet, SmallPool(), "train", seed);
    t.push_back(BlindRt60(tr.a_t));
    c.push_back(BlindRt60(tr.a_c));
    r.push_back(BlindRt60(tr.a_r));
    s.push_back(BlindRt60(tr.a_s));
  }
  EXPECT_LT(Mean(c), Mean(t));
  EXPECT_GT(Mean(r), Mean(c));
  EXPECT_GE(Mean(s), Mean(r) - 0.05);
}

TEST(AlterTest, PreservesSyllabicTiming) {
  int kept = 0;
  const int n = 10;
  for (int i = 0; i < n; ++i) {
    const testing::RoomClip clip = MakeRoomClip(800 + i, 0.3, 0.7, 3.0);
    const AlterationTrace tr = Alter(clip.wet, SmallPool(), "train", i);
    if (Pearson(SyllabicEnvelope(tr.a_t), SyllabicEnvelope(tr.a_s)) > 0.5) {
      ++kept;
    }
  }
  EXPECT_GE(kept, 8);
}

TEST(AlterTest, CreatesMismatchWhenPoolDiffers) {
  int eligible = 0;
  int changed = 0;
  for (int i = 0; i < 16; ++i) {
    const testing::RoomClip clip = MakeRoomClip(900 + i, 0.2, 1.0, 4.0);
    const AlterationTrace tr = Alter(clip.wet, SmallPool(), "train", i);
    const IrPoolEntry* e = SmallPool().Find(tr.sampled_ir_id);
    if (std::abs(e->rt60 - clip.rt60) <= 0.2) continue;
    ++eligible;
    if (std::abs(BlindRt60(tr.a_s) - BlindRt60(tr.a_t)) > 0.05) ++changed;
  }
  ASSERT_GT(eligible, 0);
  EXPECT_GE(changed, 0.6 * eligible);
}

TEST(AlterTest, EmptySplitThrows) {
  IrPool pool = SmallPool();
  std::erase_if(pool.entries,
                [](const IrPoolEntry& e) { return e.split == "test"; });
  EXPECT_TRUE(ThrowsCode(
      [&] { Alter(SynthesizeSpeech(0, 2.0), pool, "test", 0); },
      ErrorCode::kEmptyPool));
}

TEST(AlterTest, ShortInputThrows) {
  EXPECT_TRUE(ThrowsCode(
      [] { Alter(SynthesizeSpeech(0, 1.5), SmallPool(), "train", 0); },
      ErrorCode::kInputTooShort));
}

TEST(AblationTest, ParsesTableNames) {
  EXPECT_EQ(ParseAlterationVariant("full"), AlterationVariant::kFull);
  EXPECT_EQ(ParseAlterationVariant("Dereverb. + Randomization"),
            AlterationVariant::kDereverbRandomization);
  EXPECT_EQ(ParseAlterationVariant("Dereverb. + Noise"),
            AlterationVariant::kDereverbNoise);
  EXPECT_EQ(ParseAlterationVariant("Dereverb."), AlterationVariant::kDereverb);
  EXPECT_EQ(ParseAlterationVariant("$A_T$ + Randomization + Noise"),
            AlterationVariant::kRandomizationNoise);
  for (AlterationVariant v :
       {AlterationVariant::kFull, AlterationVariant::kDereverbRandomization,
        AlterationVariant::kDereverbNoise, AlterationVariant::kDereverb,
        AlterationVariant::kRandomizationNoise}) {
    EXPECT_EQ(ParseAlterationVariant(AlterationVariantName(v)), v);
  }
  EXPECT_TRUE(ThrowsCode([] { ParseAlterationVariant("reverb"); },
                         ErrorCode::kBadVariant));
}

TEST(AblationTest, StageSubsetsMatchTrace) {
  const Waveform s = MakeRoomClip(10, 0.4, 0.6, 3.0).wet;
  const AlterationTrace tr = Alter(s, SmallPool(), "train", 4);
  auto run = [&](AlterationVariant v) {
    return AblationVariant(s, SmallPool(), "train", 4, v).samples;
  };
  EXPECT_EQ(run(AlterationVariant::kFull), tr.a_s.samples);
  EXPECT_EQ(run(AlterationVariant::kDereverbRandomization), tr.a_r.samples);
  EXPECT_EQ(run(AlterationVariant::kDereverb), tr.a_c.samples);
  const Waveform noisy = Waveform(run(AlterationVariant::kDereverbNoise),
                                  kSampleRate);
  EXPECT_NEAR(MeasuredSnrDb(tr.a_c, noisy), tr.snr_db, 1e-6);
}

TEST(AblationTest, WithoutDereverbNeverShortensDecay) {
  int held = 0;
  const int n = 10;
  for (int i = 0; i < n; ++i) {
    const Waveform s = MakeRoomClip(1100 + i, 0.3, 0.7, 4.0).wet;
    const Waveform out = AblationVariant(s, SmallPool(), "train", i,
                                         AlterationVariant::kRandomizationNoise);
    if (BlindRt60(out) >= BlindRt60(s) - 0.05) ++held;
  }
  EXPECT_GE(held, 9);
}

}  // namespace
}  // namespace acmatch
