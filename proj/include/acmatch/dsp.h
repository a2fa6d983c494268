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

#ifndef ACMATCH_DSP_H_
#define ACMATCH_DSP_H_

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "acmatch/waveform.h"

namespace acmatch {

// Analysis geometry. The window is a periodic Hann taper of
// `window_length` samples, zero-padded to `fft_size`.
struct StftParams {
  int fft_size = 512;
  int hop = 128;
  int window_length = 512;

  int num_bins() const { return fft_size / 2 + 1; }
  // Throws kInvalidArgument unless 0 < hop <= window_length <= fft_size.
  void Validate() const;
  bool operator==(const StftParams&) const = default;
};

// frames x bins, non-negative.
struct Spectrogram {
  Matrix magnitude;
  StftParams params;
  int sample_rate = kSampleRate;

  int num_frames() const { return static_cast<int>(magnitude.rows()); }
  int num_bins() const { return static_cast<int>(magnitude.cols()); }
};

using ComplexMatrix = Eigen::Matrix<std::complex<double>, Eigen::Dynamic,
                                    Eigen::Dynamic, Eigen::RowMajor>;

struct ComplexSpectrogram {
  ComplexMatrix bins;
  StftParams params;
  int sample_rate = kSampleRate;
};

std::vector<double> HannWindow(int length);

// Number of frames without center padding: floor((n - window) / hop) + 1.
int NumFrames(std::size_t num_samples, const StftParams& p);

// Magnitude STFT. Throws kInputTooShort when the signal is shorter than one
// window.
Spectrogram Stft(const Waveform& w, const StftParams& p = {});
ComplexSpectrogram StftComplex(const Waveform& w, const StftParams& p = {});

// Weighted overlap-add inverse of StftComplex, normalized by the summed
// squared window. Samples not covered by any frame are zero.
Waveform Istft(const ComplexSpectrogram& s, std::size_t length);

// Triangular filters on the mel scale m = 2595 log10(1 + f / 700), each
// normalized to unit area in Hz (2 / (f_hi - f_lo)).
struct MelFilterbank {
  int n_mels = 80;
  double f_min = 0.0;
  double f_max = 8000.0;
  int sample_rate = kSampleRate;
  int fft_size = 512;
  Matrix weights;  // n_mels x (fft_size / 2 + 1)

  static MelFilterbank Create(int n_mels = 80, double f_min = 0.0,
                              double f_max = 8000.0,
                              int sample_rate = kSampleRate,
                              int fft_size = 512);
  std::vector<double> CenterFrequencies() const;
};

double HzToMel(double hz);
double MelToHz(double mel);

// frames x n_mels, filterbank applied to linear magnitudes.
Matrix MelSpectrogram(const Waveform& w, const StftParams& p,
                      const MelFilterbank& fb);

// Full linear convolution, length len(x) + len(h) - 1, via FFT overlap-add.
std::vector<double> FftConvolve(std::span<const double> x,
                                std::span<const double> h);
Waveform FftConvolve(const Waveform& x, const Waveform& h);

// Adds white Gaussian noise scaled so that
// 10 log10(E_signal / E_noise) == snr_db. Throws kZeroSignal on silent input.
Waveform AddNoiseAtSnr(const Waveform& w, double snr_db, std::uint64_t seed);

// 10 log10(E_clean / E_(noisy - clean)).
double MeasuredSnrDb(const Waveform& clean, const Waveform& noisy);

// Causal 2nd-order Butterworth high-pass (bilinear transform), in place.
// Throws kInvalidArgument unless 0 < cutoff_hz < sample_rate / 2.
void HighPassInPlace(std::vector<double>& x, double cutoff_hz, int sample_rate);

}  // namespace acmatch

#endif  // ACMATCH_DSP_H_
