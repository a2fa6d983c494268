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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "acmatch/errors.h"
#include "fft.h"

namespace acmatch {

void ValidateWaveform(const Waveform& w) {
  if (w.sample_rate <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "sample rate must be positive");
  }
  if (w.samples.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "waveform is empty");
  }
  for (double s : w.samples) {
    if (!std::isfinite(s)) {
      throw Error(ErrorCode::kInvalidArgument, "waveform has non-finite samples");
    }
  }
}

double Energy(std::span<const double> x) {
  double e = 0.0;
  for (double v : x) e += v * v;
  return e;
}

double PeakAbs(std::span<const double> x) {
  double p = 0.0;
  for (double v : x) p = std::max(p, std::abs(v));
  return p;
}

Waveform ScaleToPeak(const Waveform& w, double peak) {
  Waveform out = w;
  const double current = PeakAbs(w.samples);
  if (current <= 0.0) return out;
  const double g = peak / current;
  for (double& v : out.samples) v *= g;
  return out;
}

Waveform Resized(const Waveform& w, std::size_t length) {
  Waveform out = w;
  out.samples.resize(length, 0.0);
  return out;
}

void StftParams::Validate() const {
  if (!(hop > 0 && hop <= window_length && window_length <= fft_size)) {
    throw Error(ErrorCode::kInvalidArgument,
                "STFT params need 0 < hop <= window_length <= fft_size");
  }
}

std::vector<double> HannWindow(int length) {
  std::vector<double> w(length);
  for (int i = 0; i < length; ++i) {
    w[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * i / length);
  }
  return w;
}

int NumFrames(std::size_t num_samples, const StftParams& p) {
  if (num_samples < static_cast<std::size_t>(p.window_length)) return 0;
  return static_cast<int>((num_samples - p.window_length) / p.hop) + 1;
}

namespace {

template <typename Fn>
void ForEachFrame(const Waveform& w, const StftParams& p, Fn&& fn) {
  p.Validate();
  const int frames = NumFrames(w.size(), p);
  if (frames == 0) {
    throw Error(ErrorCode::kInputTooShort,
                "signal of " + std::to_string(w.size()) +
                    " samples is shorter than one window of " +
                    std::to_string(p.window_length));
  }
  const RealFft fft(p.fft_size);
  const std::vector<double> window = HannWindow(p.window_length);
  std::vector<double> frame(p.fft_size, 0.0);
  std::vector<std::complex<double>> spectrum(p.num_bins());
  for (int f = 0; f < frames; ++f) {
    const double* src = w.samples.data() + static_cast<std::size_t>(f) * p.hop;
    for (int i = 0; i < p.window_length; ++i) frame[i] = src[i] * window[i];
    fft.Forward(frame.data(), spectrum.data());
    fn(f, spectrum);
  }
}

}  // namespace

Spectrogram Stft(const Waveform& w, const StftParams& p) {
  Spectrogram out;
  out.params = p;
  out.sample_rate = w.sample_rate;
  out.magnitude.resize(std::max(NumFrames(w.size(), p), 0), p.num_bins());
  ForEachFrame(w, p, [&](int f, const std::vector<std::complex<double>>& s) {
    for (int k = 0; k < p.num_bins(); ++k) out.magnitude(f, k) = std::abs(s[k]);
  });
  return out;
}

ComplexSpectrogram StftComplex(const Waveform& w, const StftParams& p) {
  ComplexSpectrogram out;
  out.params = p;
  out.sample_rate = w.sample_rate;
  out.bins.resize(std::max(NumFrames(w.size(), p), 0), p.num_bins());
  ForEachFrame(w, p, [&](int f, const std::vector<std::complex<double>>& s) {
    for (int k = 0; k < p.num_bins(); ++k) out.bins(f, k) = s[k];
  });
  return out;
}

Waveform Istft(const ComplexSpectrogram& s, std::size_t length) {
  const StftParams& p = s.params;
  p.Validate();
  const RealFft fft(p.fft_size);
  const std::vector<double> window = HannWindow(p.window_length);
  std::vector<double> out(length, 0.0);
  std::vector<double> norm(length, 0.0);
  std::vector<double> frame(p.fft_size);
  for (int f = 0; f < s.bins.rows(); ++f) {
    fft.Inverse(s.bins.row(f).data(), frame.data());
    const std::size_t start = static_cast<std::size_t>(f) * p.hop;
    for (int i = 0; i < p.window_length && start + i < length; ++i) {
      out[start + i] += frame[i] / p.fft_size * window[i];
      norm[start + i] += window[i] * window[i];
    }
  }
  for (std::size_t i = 0; i < length; ++i) {
    if (norm[i] > 1e-8) out[i] /= norm[i];
  }
  return Waveform(std::move(out), s.sample_rate);
}

double HzToMel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double MelToHz(double mel) {
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

MelFilterbank MelFilterbank::Create(int n_mels, double f_min, double f_max,
                                    int sample_rate, int fft_size) {
  if (n_mels <= 0 || f_min < 0.0 || f_max <= f_min ||
      f_max > sample_rate / 2.0 + 1e-9) {
    throw Error(ErrorCode::kInvalidArgument, "bad mel filterbank range");
  }
  MelFilterbank fb;
  fb.n_mels = n_mels;
  fb.f_min = f_min;
  fb.f_max = f_max;
  fb.sample_rate = sample_rate;
  fb.fft_size = fft_size;
  const int bins = fft_size / 2 + 1;
  const double mel_lo = HzToMel(f_min);
  const double mel_hi = HzToMel(f_max);
  std::vector<double> edges(n_mels + 2);
  for (int i = 0; i < n_mels + 2; ++i) {
    edges[i] = MelToHz(mel_lo + (mel_hi - mel_lo) * i / (n_mels + 1));
  }
  fb.weights = Matrix::Zero(n_mels, bins);
  for (int m = 0; m < n_mels; ++m) {
    const double lo = edges[m], center = edges[m + 1], hi = edges[m + 2];
    const double area_norm = 2.0 / (hi - lo);
    for (int k = 0; k < bins; ++k) {
      const double f = static_cast<double>(k) * sample_rate / fft_size;
      double v = 0.0;
      if (f > lo && f <= center) {
        v = (f - lo) / (center - lo);
      } else if (f > center && f < hi) {
        v = (hi - f) / (hi - center);
      }
      fb.weights(m, k) = v * area_norm;
    }
  }
  return fb;
}

std::vector<double> MelFilterbank::CenterFrequencies() const {
  const double mel_lo = HzToMel(f_min);
  const double mel_hi = HzToMel(f_max);
  std::vector<double> c(n_mels);
  for (int m = 0; m < n_mels; ++m) {
    c[m] = MelToHz(mel_lo + (mel_hi - mel_lo) * (m + 1) / (n_mels + 1));
  }
  return c;
}

Matrix MelSpectrogram(const Waveform& w, const StftParams& p,
                      const MelFilterbank& fb) {
  if (fb.fft_size != p.fft_size || fb.weights.cols() != p.num_bins() ||
      fb.sample_rate != w.sample_rate) {
    throw Error(ErrorCode::kShapeMismatch,
                "mel filterbank does not match STFT params or sample rate");
  }
  const Spectrogram s = Stft(w, p);
  return s.magnitude * fb.weights.transpose();
}

namespace {

int NextPow2(std::size_t n) {
  int p = 1;
  while (static_cast<std::size_t>(p) < n) p <<= 1;
  return p;
}

}  // namespace

std::vector<double> FftConvolve(std::span<const double> x,
                                std::span<const double> h) {
  if (x.empty() || h.empty()) return {};
  const std::size_t full = x.size() + h.size() - 1;
  constexpr int kMaxBlockFft = 1 << 15;
  int n = NextPow2(full);
  if (n > kMaxBlockFft) n = std::max(kMaxBlockFft, NextPow2(2 * h.size()));
  const std::size_t block = n - h.size() + 1;

  const RealFft fft(n);
  const int bins = n / 2 + 1;
  std::vector<double> buf(n, 0.0);
  std::vector<std::complex<double>> h_spec(bins), x_spec(bins);
  std::copy(h.begin(), h.end(), buf.begin());
  fft.Forward(buf.data(), h_spec.data());

  std::vector<double> out(full, 0.0);
  for (std::size_t start = 0; start < x.size(); start += block) {
    const std::size_t len = std::min(block, x.size() - start);
    std::fill(buf.begin(), buf.end(), 0.0);
    std::copy(x.begin() + start, x.begin() + start + len, buf.begin());
    fft.Forward(buf.data(), x_spec.data());
    for (int k = 0; k < bins; ++k) x_spec[k] *= h_spec[k];
    fft.Inverse(x_spec.data(), buf.data());
    const std::size_t count = std::min<std::size_t>(n, full - start);
    for (std::size_t i = 0; i < count; ++i) out[start + i] += buf[i] / n;
  }
  return out;
}

Waveform FftConvolve(const Waveform& x, const Waveform& h) {
  if (x.sample_rate != h.sample_rate) {
    throw Error(ErrorCode::kRateMismatch,
                "cannot convolve " + std::to_string(x.sample_rate) +
                    " Hz signal with " + std::to_string(h.sample_rate) +
                    " Hz impulse response");
  }
  return Waveform(FftConvolve(x.view(), h.view()), x.sample_rate);
}

Waveform AddNoiseAtSnr(const Waveform& w, double snr_db, std::uint64_t seed) {
  if (!std::isfinite(snr_db)) {
    throw Error(ErrorCode::kInvalidArgument, "SNR must be finite");
  }
  const double signal_energy = Energy(w.samples);
  if (!(signal_energy > 0.0)) {
    throw Error(ErrorCode::kZeroSignal, "cannot set SNR of a silent signal");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> noise(w.size());
  for (double& v : noise) v = normal(rng);
  const double noise_energy = Energy(noise);
  const double gain =
      std::sqrt(signal_energy / (noise_energy * std::pow(10.0, snr_db / 10.0)));
  Waveform out = w;
  for (std::size_t i = 0; i < out.size(); ++i) out.samples[i] += gain * noise[i];
  return out;
}

double MeasuredSnrDb(const Waveform& clean, const Waveform& noisy) {
  if (clean.size() != noisy.size()) {
    throw Error(ErrorCode::kLengthMismatch, "SNR needs equal-length signals");
  }
  double noise = 0.0;
  for (std::size_t i = 0; i < clean.size(); ++i) {
    const double d = noisy.samples[i] - clean.samples[i];
    noise += d * d;
  }
  return 10.0 * std::log10(Energy(clean.samples) / noise);
}

void HighPassInPlace(std::vector<double>& x, double cutoff_hz, int sample_rate) {
  if (!(cutoff_hz > 0.0 && cutoff_hz < sample_rate / 2.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "high-pass cutoff must lie in (0, sample_rate / 2)");
  }
  const double w0 = 2.0 * std::numbers::pi * cutoff_hz / sample_rate;
  const double alpha = std::sin(w0) / std::sqrt(2.0);
  const double c = std::cos(w0);
  const double a0 = 1.0 + alpha;
  const double b0 = (1.0 + c) / 2.0 / a0;
  const double b1 = -(1.0 + c) / a0;
  const double b2 = b0;
  const double a1 = -2.0 * c / a0;
  const double a2 = (1.0 - alpha) / a0;
  double x1 = 0.0, x2 = 0.0, y1 = 0.0, y2 = 0.0;
  for (double& v : x) {
    const double y = b0 * v + b1 * x1 + b2 * x2 - a1 * y1 - a2 * y2;
    x2 = x1;
    x1 = v;
    y2 = y1;
    y1 = y;
    v = y;
  }
}

}  // namespace acmatch
