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

#include "acmatch/eval_metrics.h"

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "json.hpp"

#include "acmatch/reverb_match.h"
#include "acmatch/speech_synth.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace acmatch {
namespace {

using ::acmatch::testing::ConvolveTrim;
using ::acmatch::testing::RandomWaveform;
using ::acmatch::testing::ThrowsCode;

Waveform Scaled(Waveform w, double g) {
  for (double& v : w.samples) v *= g;
  return w;
}

// Direct-sum DFT magnitudes with an explicitly built Hann window.
std::vector<std::vector<double>> NaiveMagnitudes(const Waveform& w,
                                                 const StftParams& p) {
  std::vector<std::vector<double>> out;
  for (std::size_t start = 0; start + p.window_length <= w.size();
       start += p.hop) {
    std::vector<double> row(p.fft_size / 2 + 1);
    for (int k = 0; k <= p.fft_size / 2; ++k) {
      std::complex<double> acc = 0.0;
      for (int n = 0; n < p.window_length; ++n) {
        const double win =
            0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * n / p.window_length));
        acc += w.samples[start + n] * win *
               std::polar(1.0, -2.0 * std::numbers::pi * k * n / p.fft_size);
      }
      row[k] = std::abs(acc);
    }
    out.push_back(row);
  }
  return out;
}

TEST(StftDistanceTest, ZeroOnIdentical) {
  const Waveform a = RandomWaveform(4000, 1);
  EXPECT_EQ(StftDistance(a, a), 0.0);
}

TEST(StftDistanceTest, AgainstSilenceIsMeanSquaredMagnitude) {
  const Waveform a = RandomWaveform(4000, 2);
  const Waveform zero = Scaled(a, 0.0);
  const Matrix m = Stft(a).magnitude;
  EXPECT_NEAR(StftDistance(a, zero), m.array().square().mean(), 1e-9);
}

TEST(StftDistanceTest, MatchesLoopReference) {
  const StftParams p{64, 16, 48};
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Waveform a = RandomWaveform(400, 10 + seed);
    const Waveform b = RandomWaveform(400, 20 + seed);
    const auto ma = NaiveMagnitudes(a, p);
    const auto mb = NaiveMagnitudes(b, p);
    double sum = 0.0;
    std::size_t cells = 0;
    for (std::size_t f = 0; f < ma.size(); ++f) {
      for (std::size_t k = 0; k < ma[f].size(); ++k) {
        sum += (ma[f][k] - mb[f][k]) * (ma[f][k] - mb[f][k]);
        ++cells;
      }
    }
    const double want = sum / cells;
    EXPECT_NEAR(StftDistance(a, b, p), want, 1e-10 * want);
  }
}

TEST(StftDistanceTest, LengthMismatchThrows) {
  EXPECT_TRUE(ThrowsCode(
      [] { StftDistance(RandomWaveform(4000, 1), RandomWaveform(4001, 1)); },
      ErrorCode::kLengthMismatch));
}

TEST(MetricsTest, InvariantToJointSignFlip) {
  const Waveform a = RandomWaveform(8000, 3);
  const Waveform b = RandomWaveform(8000, 4);
  const Waveform na = Scaled(a, -1.0), nb = Scaled(b, -1.0);
  EXPECT_NEAR(StftDistance(na, nb), StftDistance(a, b), 1e-12);
  EXPECT_NEAR(MelL1(na, nb), MelL1(a, b), 1e-12);
  EXPECT_NEAR(MultiResolutionStftLoss(na, nb).value,
              MultiResolutionStftLoss(a, b).value, 1e-12);
}

TEST(MetricsTest, ZeroOnlyOnIdenticalInputs) {
  const Waveform a = RandomWaveform(8000, 5);
  Waveform b = a;
  b.samples[4000] += 1e-3;
  EXPECT_EQ(MelL1(a, a), 0.0);
  EXPECT_EQ(MultiResolutionStftLoss(a, a).value, 0.0);
  EXPECT_GT(StftDistance(a, b), 0.0);
  EXPECT_GT(MelL1(a, b), 0.0);
  EXPECT_GT(MultiResolutionStftLoss(a, b).value, 0.0);
}

TEST(MelL1Test, Symmetric) {
  const Waveform a = RandomWaveform(8000, 6);
  const Waveform b = RandomWaveform(8000, 7);
  EXPECT_DOUBLE_EQ(MelL1(a, b), MelL1(b, a));
}

TEST(MelL1Test, TriangleInequality) {
  for (std::uint64_t i = 0; i < 100; ++i) {
    const Waveform a = RandomWaveform(2048, 3 * i, 1.0);
    const Waveform b = RandomWaveform(2048, 3 * i + 1, 0.5 + 0.01 * i);
    const Waveform c = RandomWaveform(2048, 3 * i + 2, 2.0);
    EXPECT_LE(MelL1(a, c), MelL1(a, b) + MelL1(b, c) + 1e-12) << i;
  }
}

TEST(MelL1Test, LengthMismatchThrows) {
  EXPECT_TRUE(ThrowsCode(
      [] { MelL1(RandomWaveform(4000, 1), RandomWaveform(3000, 1)); },
      ErrorCode::kLengthMismatch));
}

TEST(MultiResolutionStftLossTest, DecreasesAsScaleApproachesOne) {
  const Waveform a = SynthesizeSpeech(9, 2.0);
  double prev = 1e300;
  for (double g : {0.25, 0.5, 0.75, 1.0}) {
    const double loss = MultiResolutionStftLoss(a, Scaled(a, g)).value;
    EXPECT_LT(loss, prev) << "scale " << g;
    prev = loss;
  }
  EXPECT_EQ(prev, 0.0);
  EXPECT_GT(MultiResolutionStftLoss(a, Scaled(a, 0.5)).value, 0.0);
}

TEST(MultiResolutionStftLossTest, DecomposesIntoSingleResolutions) {
  const Waveform a = RandomWaveform(16000, 11);
  const Waveform b = RandomWaveform(16000, 12);
  double sum = 0.0;
  for (const StftParams& p : DefaultStftLossResolutions()) {
    const double one = SingleResolutionStftLoss(a, b, p).value;
    EXPECT_DOUBLE_EQ(MultiResolutionStftLoss(a, b, {p}).value, one);
    sum += one;
  }
  EXPECT_NEAR(MultiResolutionStftLoss(a, b).value, sum, 1e-12 * sum);
}

TEST(MultiResolutionStftLossTest, ResolutionsAreTheDocumentedThree) {
  const std::vector<StftParams> want = {
      {512, 128, 512}, {1024, 256, 1024}, {2048, 512, 2048}};
  EXPECT_EQ(DefaultStftLossResolutions(), want);
}

TEST(MultiResolutionStftLossTest, SilentReferenceSkipsConvergence) {
  const Waveform a = RandomWaveform(8000, 13);
  const Waveform zero = Scaled(a, 0.0);
  const StftLoss loss = MultiResolutionStftLoss(zero, a);
  EXPECT_TRUE(loss.convergence_skipped);
  EXPECT_GT(loss.value, 0.0);
  EXPECT_FALSE(MultiResolutionStftLoss(a, zero).convergence_skipped);
}

TEST(MultiResolutionStftLossTest, LengthMismatchThrows) {
  EXPECT_TRUE(ThrowsCode(
      [] {
        MultiResolutionStftLoss(RandomWaveform(8000, 1), RandomWaveform(8100, 1));
      },
      ErrorCode::kLengthMismatch));
}

Waveform Reverberant(const Waveform& dry, double rt60, std::uint64_t seed) {
  return ConvolveTrim(dry, SynthesizeIr({rt60, 0.0}, 1.5 * rt60 + 0.1,
                                        kSampleRate, seed)
                               .wave);
}

TEST(RteTest, ZeroOnIdentical) {
  const Waveform w = Reverberant(SynthesizeSpeech(1, 4.0), 0.5, 1);
  EXPECT_EQ(Rte(w, w), 0.0);
}

TEST(RteTest, OrdersRoomGaps) {
  const Waveform dry = SynthesizeSpeech(2, 5.0);
  const Waveform r3 = Reverberant(dry, 0.3, 3);
  const double wide = Rte(r3, Reverberant(dry, 0.6, 4));
  const double narrow = Rte(r3, Reverberant(dry, 0.4, 5));
  EXPECT_GE(wide, 0.1);
  EXPECT_LE(wide, 0.5);
  EXPECT_GT(wide, narrow);
}

TEST(RteTest, UnmatchedAnechoicOutputShowsTheRoomGap) {
  const Waveform dry = SynthesizeSpeech(6, 5.0);
  EXPECT_NEAR(Rte(dry, Reverberant(dry, 0.4, 7)), 0.4, 0.15);
}

TEST(SummarizeTest, MeanMedianAndStdError) {
  const MetricSummary s = Summarize({1.0, 2.0, 3.0, 10.0});
  EXPECT_EQ(s.count, 4);
  EXPECT_DOUBLE_EQ(s.mean, 4.0);
  EXPECT_DOUBLE_EQ(s.median, 2.5);
  // Sample std of {1,2,3,10} is sqrt(50/3).
  EXPECT_NEAR(s.std_error, std::sqrt(50.0 / 3.0) / 2.0, 1e-12);
  EXPECT_EQ(Summarize({}).count, 0);
  EXPECT_EQ(Summarize({7.0}).std_error, 0.0);
}

EvalReport SmallReport() {
  EvalReport report;
  const Waveform dry = SynthesizeSpeech(20, 3.0);
  for (int i = 0; i < 4; ++i) {
    const Waveform target = Reverberant(dry, 0.3 + 0.1 * i, 30 + i);
    report.rows.push_back(EvaluatePair("clip" + std::to_string(i), dry, target));
  }
  report.rows.push_back(EvaluatePair("silent", Scaled(dry, 0.0), dry));
  report.Aggregate();
  return report;
}

TEST(EvalReportTest, AggregatesMatchRows) {
  const EvalReport report = SmallReport();
  std::vector<double> stft, rte;
  for (const EvalRow& r : report.rows) {
    EXPECT_GE(r.stft_distance, 0.0);
    EXPECT_GE(r.mel_l1, 0.0);
    EXPECT_GE(r.mrstft, 0.0);
    stft.push_back(r.stft_distance);
    if (r.rte_seconds) {
      EXPECT_GE(*r.rte_seconds, 0.0);
      rte.push_back(*r.rte_seconds);
    }
  }
  double mean = 0.0;
  for (double v : stft) mean += v;
  mean /= stft.size();
  EXPECT_NEAR(report.stft_distance.mean, mean, 1e-12);
  EXPECT_NEAR(report.stft_distance.median, testing::MedianOf(stft), 1e-12);
  EXPECT_EQ(report.rte_seconds.count, static_cast<int>(rte.size()));
  EXPECT_NEAR(report.rte_seconds.median, testing::MedianOf(rte), 1e-12);
}

TEST(EvalReportTest, UnmeasurableRteIsFlaggedAndExcluded) {
  const EvalReport report = SmallReport();
  const EvalRow& silent = report.rows.back();
  EXPECT_FALSE(silent.rte_seconds.has_value());
  ASSERT_FALSE(silent.flags.empty());
  EXPECT_EQ(report.rte_seconds.count, 4);
  EXPECT_EQ(report.stft_distance.count, 5);
}

TEST(EvalReportTest, CsvAndJsonShapes) {
  const EvalReport report = SmallReport();
  const std::string csv = report.ToCsv();
  EXPECT_EQ(csv.rfind("clip_id,stft_distance,rte_seconds,mel_l1,mrstft,flags\n", 0),
            0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 6);
  const auto j = nlohmann::json::parse(report.AggregatesJson());
  EXPECT_EQ(j["num_rows"], 5);
  EXPECT_DOUBLE_EQ(j["mel_l1"]["mean"].get<double>(), report.mel_l1.mean);
  EXPECT_EQ(j["rte_seconds"]["count"], 4);
}

}  // namespace
}  // namespace acmatch
