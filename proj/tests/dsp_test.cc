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

#include "acmatch/dsp.h"

#include <cmath>
#include <complex>
#include <numbers>

#include "acmatch/errors.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace acmatch {
namespace {

using testing::RandomWaveform;

// O(n^2) DFT magnitude of one real frame.
std::vector<double> DftMagnitude(const std::vector<double>& frame) {
  const std::size_t n = frame.size();
  std::vector<double> mag(n / 2 + 1);
  for (std::size_t k = 0; k <= n / 2; ++k) {
    std::complex<double> acc = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      acc += frame[t] * std::polar(1.0, -2.0 * std::numbers::pi * k * t / n);
    }
    mag[k] = std::abs(acc);
  }
  return mag;
}

std::vector<double> DirectConvolve(const std::vector<double>& x,
                                   const std::vector<double>& h) {
  std::vector<double> y(x.size() + h.size() - 1, 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < h.size(); ++j) y[i + j] += x[i] * h[j];
  }
  return y;
}

TEST(StftTest, FrameCountWithoutCenterPadding) {
  const StftParams p;
  const Spectrogram s = Stft(Waveform(std::vector<double>(16000, 0.0), 16000), p);
  EXPECT_EQ(s.num_frames(), (16000 - 512) / 128 + 1);
  EXPECT_EQ(s.num_bins(), 257);
  EXPECT_EQ(s.magnitude.cwiseAbs().maxCoeff(), 0.0);
}

TEST(StftTest, ShorterThanWindowThrows) {
  try {
    Stft(Waveform(std::vector<double>(511, 1.0), 16000));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInputTooShort);
  }
}

TEST(StftTest, SinePeaksAtExpectedBin) {
  std::vector<double> x(8000);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = std::sin(2.0 * std::numbers::pi * 1000.0 * i / 16000.0);
  }
  const Spectrogram s = Stft(Waveform(x, 16000));
  for (int f = 0; f < s.num_frames(); ++f) {
    Eigen::Index arg;
    s.magnitude.row(f).maxCoeff(&arg);
    EXPECT_EQ(arg, 32);
  }
}

TEST(StftTest, ImpulseFrameMatchesDftOfWindow) {
  std::vector<double> x(2048, 0.0);
  x[128 * 2 + 200] = 1.0;
  const Spectrogram s = Stft(Waveform(x, 16000));
  std::vector<double> frame(512, 0.0);
  frame[200] = HannWindow(512)[200];
  const auto ref = DftMagnitude(frame);
  for (int k = 0; k < 257; ++k) EXPECT_NEAR(s.magnitude(2, k), ref[k], 1e-12);
}

TEST(StftTest, MatchesBruteForceDft) {
  const Waveform w = RandomWaveform(1024, 3);
  const Spectrogram s = Stft(w);
  const auto win = HannWindow(512);
  std::vector<double> frame(512);
  for (int i = 0; i < 512; ++i) frame[i] = w.samples[128 + i] * win[i];
  const auto ref = DftMagnitude(frame);
  for (int k = 0; k < 257; ++k) EXPECT_NEAR(s.magnitude(1, k), ref[k], 1e-9);
}

TEST(StftTest, ParsevalPerFrame) {
  const Waveform w = RandomWaveform(4096, 5);
  const StftParams p;
  const Spectrogram s = Stft(w, p);
  const auto win = HannWindow(512);
  for (int f = 0; f < s.num_frames(); ++f) {
    double time_energy = 0.0;
    for (int i = 0; i < 512; ++i) {
      const double v = w.samples[f * 128 + i] * win[i];
      time_energy += v * v;
    }
    // One-sided spectrum: interior bins count twice.
    double spec_energy = 0.0;
    for (int k = 0; k < 257; ++k) {
      const double m2 = s.magnitude(f, k) * s.magnitude(f, k);
      spec_energy += (k == 0 || k == 256) ? m2 : 2.0 * m2;
    }
    EXPECT_NEAR(spec_energy / 512.0, time_energy, 1e-6 * time_energy);
  }
}

TEST(StftTest, SignFlipInvariant) {
  Waveform w = RandomWaveform(3000, 9);
  const Spectrogram a = Stft(w);
  for (double& v : w.samples) v = -v;
  const Spectrogram b = Stft(w);
  EXPECT_EQ((a.magnitude - b.magnitude).cwiseAbs().maxCoeff(), 0.0);
}

TEST(StftTest, IstftReconstructsInterior) {
  const Waveform w = RandomWaveform(8000, 11);
  const Waveform y = Istft(StftComplex(w), w.size());
  for (std::size_t i = 512; i < 7000; ++i) {
    EXPECT_NEAR(y.samples[i], w.samples[i], 1e-9);
  }
}

TEST(MelTest, FilterbankShape) {
  const MelFilterbank fb = MelFilterbank::Create();
  ASSERT_EQ(fb.weights.rows(), 80);
  ASSERT_EQ(fb.weights.cols(), 257);
  const auto centers = fb.CenterFrequencies();
  for (int m = 0; m < 80; ++m) {
    EXPECT_GT(fb.weights.row(m).sum(), 0.0);
    if (m > 0) {
      EXPECT_GT(centers[m], centers[m - 1]);
    }
  }
}

TEST(MelTest, ZeroSignalGivesZero) {
  const MelFilterbank fb = MelFilterbank::Create();
  const Matrix m =
      MelSpectrogram(Waveform(std::vector<double>(4000, 0.0), 16000), {}, fb);
  EXPECT_EQ(m.cwiseAbs().maxCoeff(), 0.0);
}

TEST(MelTest, WhiteNoiseFillsEveryBand) {
  const MelFilterbank fb = MelFilterbank::Create();
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix m = MelSpectrogram(RandomWaveform(8000, 100 + trial), {}, fb);
    EXPECT_GT(m.colwise().sum().minCoeff(), 0.0);
  }
}

TEST(MelTest, SineAtCenterDominatesNeighbors) {
  const MelFilterbank fb = MelFilterbank::Create();
  const auto centers = fb.CenterFrequencies();
  const int band = 40;
  std::vector<double> x(8000);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = std::sin(2.0 * std::numbers::pi * centers[band] * i / 16000.0);
  }
  const Matrix m = MelSpectrogram(Waveform(x, 16000), {}, fb);
  const auto mean = m.colwise().mean();
  EXPECT_GT(mean(band), mean(band - 1));
  EXPECT_GT(mean(band), mean(band + 1));
}

TEST(MelTest, MismatchedParamsThrow) {
  const MelFilterbank fb = MelFilterbank::Create(80, 0, 8000, 16000, 1024);
  try {
    MelSpectrogram(RandomWaveform(4000, 1), {}, fb);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kShapeMismatch);
  }
}

TEST(ConvolveTest, MatchesDirectConvolution) {
  const Waveform x = RandomWaveform(1000, 21);
  const Waveform h = RandomWaveform(300, 22);
  const auto fast = FftConvolve(x.view(), h.view());
  const auto ref = DirectConvolve(x.samples, h.samples);
  ASSERT_EQ(fast.size(), 1299u);
  double err = 0.0, norm = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    err = std::max(err, std::abs(fast[i] - ref[i]));
    norm = std::max(norm, std::abs(ref[i]));
  }
  EXPECT_LT(err / norm, 1e-6);
}

TEST(ConvolveTest, LongSignalUsesBlocksCorrectly) {
  const Waveform x = RandomWaveform(70000, 23);
  const Waveform h = RandomWaveform(700, 24);
  const auto fast = FftConvolve(x.view(), h.view());
  const auto ref = DirectConvolve(x.samples, h.samples);
  for (std::size_t i = 0; i < ref.size(); i += 97) {
    EXPECT_NEAR(fast[i], ref[i], 1e-9);
  }
}

TEST(ConvolveTest, DeltaIsIdentityAndShift) {
  const Waveform x = RandomWaveform(500, 25);
  std::vector<double> delta(10, 0.0);
  delta[3] = 1.0;
  const auto y = FftConvolve(x.view(), delta);
  for (std::size_t i = 0; i < 500; ++i) EXPECT_NEAR(y[i + 3], x.samples[i], 1e-12);
}

TEST(ConvolveTest, CommutativeAndLinear) {
  const Waveform a = RandomWaveform(400, 26);
  const Waveform b = RandomWaveform(250, 27);
  const Waveform c = RandomWaveform(400, 28);
  const auto ab = FftConvolve(a.view(), b.view());
  const auto ba = FftConvolve(b.view(), a.view());
  ASSERT_EQ(ab.size(), ba.size());
  for (std::size_t i = 0; i < ab.size(); ++i) EXPECT_NEAR(ab[i], ba[i], 1e-10);
  std::vector<double> sum(400);
  for (int i = 0; i < 400; ++i) sum[i] = 2.0 * a.samples[i] + c.samples[i];
  const auto lhs = FftConvolve(sum, b.view());
  const auto cb = FftConvolve(c.view(), b.view());
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    EXPECT_NEAR(lhs[i], 2.0 * ab[i] + cb[i], 1e-10);
  }
}

TEST(ConvolveTest, RateMismatchThrows) {
  try {
    FftConvolve(Waveform({1.0}, 16000), Waveform({1.0}, 8000));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kRateMismatch);
  }
}

TEST(NoiseTest, HitsRequestedSnr) {
  for (double snr : {0.0, 2.0, 10.0, 25.0}) {
    const Waveform w = RandomWaveform(16000, 31, 0.3);
    const Waveform noisy = AddNoiseAtSnr(w, snr, 77);
    EXPECT_NEAR(MeasuredSnrDb(w, noisy), snr, 0.01);
  }
}

TEST(NoiseTest, UnitPowerAtTenDb) {
  std::vector<double> x(16000);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = (i % 2) ? 1.0 : -1.0;
  const Waveform w(x, 16000);
  const Waveform noisy = AddNoiseAtSnr(w, 10.0, 3);
  double noise_power = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = noisy.samples[i] - x[i];
    noise_power += d * d;
  }
  EXPECT_NEAR(noise_power / x.size(), 0.1, 0.1 * 0.0024);
}

TEST(NoiseTest, SeedDeterminism) {
  const Waveform w = RandomWaveform(2000, 41);
  EXPECT_EQ(AddNoiseAtSnr(w, 5.0, 9).samples, AddNoiseAtSnr(w, 5.0, 9).samples);
  EXPECT_NE(AddNoiseAtSnr(w, 5.0, 9).samples, AddNoiseAtSnr(w, 5.0, 10).samples);
}

TEST(NoiseTest, TinyEnergyStillExact) {
  const Waveform w = RandomWaveform(1000, 43, 1e-7);
  EXPECT_NEAR(MeasuredSnrDb(w, AddNoiseAtSnr(w, 6.0, 1)), 6.0, 0.01);
}

TEST(NoiseTest, SilentInputThrows) {
  try {
    AddNoiseAtSnr(Waveform(std::vector<double>(100, 0.0), 16000), 5.0, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kZeroSignal);
  }
}

}  // namespace
}  // namespace acmatch
