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

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "acmatch/dsp.h"
#include "acmatch/errors.h"
#include "analysis_internal.h"
#include "fft.h"
#include "stats.h"

namespace acmatch {
namespace {

#include "drr_calibration.inc"

constexpr double kFitStartDb = -5.0;
constexpr double kFitEndDb = -25.0;
constexpr double kDirectWindowS = 0.0025;

// Blind decay search constants.
constexpr double kSegmentTolDb = 3.0;
constexpr double kStartBelowPeakDb = 15.0;
constexpr double kMaxDropTimeS = 0.5;
constexpr double kNoiseMarginDb = 1.0;
constexpr double kFitDropLimitDb = 25.0;
constexpr double kEstimatePercentile = 70.0;
constexpr double kMinDropLevelsDb[] = {15.0, 10.0, 6.0};
// A drop threshold needs this many segments before its percentile is used;
// otherwise the next, lower threshold is tried.
constexpr std::size_t kMinSegments = 5;
// Bands this far below the loudest band hold only window leakage.
constexpr double kInactiveBandDb = 60.0;

struct Segment {
  std::size_t begin;
  std::size_t end;  // inclusive
};

// Decay segments start at a local maximum and continue while the level stays
// within kSegmentTolDb of the running minimum; they end at the last new
// minimum.
std::vector<Segment> FindDecaySegments(const std::vector<double>& level,
                                       double start_min, double min_drop,
                                       double frame_dt) {
  std::vector<Segment> out;
  const std::size_t n = level.size();
  std::size_t i = 1;
  while (i + 1 < n) {
    if (level[i] >= level[i - 1] && level[i] > level[i + 1] &&
        level[i] >= start_min) {
      std::size_t j = i;
      std::size_t last = i;
      double lowest = level[i];
      while (j + 1 < n && level[j + 1] <= lowest + kSegmentTolDb) {
        ++j;
        if (level[j] < lowest) {
          lowest = level[j];
          last = j;
        }
      }
      if (level[i] - lowest >= min_drop) {
        std::size_t first = i;
        while (level[i] - level[first] < min_drop) ++first;
        if ((first - i) * frame_dt <= kMaxDropTimeS) out.push_back({i, last});
      }
      i = std::max(last, i + 1);
    } else {
      ++i;
    }
  }
  return out;
}

std::vector<double> SegmentEstimates(const std::vector<double>& level,
                                     double min_drop, double frame_dt) {
  std::vector<double> estimates;
  const double start_min =
      internal::Percentile(level, 95.0) - kStartBelowPeakDb;
  const double noise_floor =
      internal::Percentile(level, 10.0) + kNoiseMarginDb;
  const double fit_from = std::min(5.0, min_drop / 3.0);
  for (const Segment& s : FindDecaySegments(level, start_min, min_drop,
                                            frame_dt)) {
    std::vector<double> seg(level.begin() + s.begin,
                            level.begin() + s.end + 1);
    auto below = std::find_if(seg.begin(), seg.end(),
                              [&](double v) { return v < noise_floor; });
    seg.erase(below, seg.end());
    if (seg.size() < 3) continue;
    const double top = seg.front();
    const double max_drop = top - *std::min_element(seg.begin(), seg.end());
    if (max_drop < min_drop) continue;
    std::size_t s0 = 0;
    while (top - seg[s0] < fit_from) ++s0;
    std::size_t e0 = seg.size() - 1;
    if (max_drop >= kFitDropLimitDb) {
      e0 = 0;
      while (top - seg[e0] < kFitDropLimitDb) ++e0;
    }
    if (e0 < s0 + 2) continue;
    std::vector<double> t;
    for (std::size_t k = s0; k <= e0; ++k) t.push_back(k * frame_dt);
    const double slope = internal::LineSlope(
        t, std::span<const double>(seg.data() + s0, e0 - s0 + 1));
    if (slope < 0.0) estimates.push_back(-60.0 / slope);
  }
  return estimates;
}

}  // namespace

namespace internal {

std::vector<std::vector<double>> OctaveBandEnergies(const Waveform& w) {
  const StftParams p;
  const Spectrogram s = Stft(w, p);
  std::vector<std::vector<double>> bands(
      kNumOctaveBands, std::vector<double>(s.num_frames(), 0.0));
  for (int k = 0; k < s.num_bins(); ++k) {
    const double f = static_cast<double>(k) * w.sample_rate / p.fft_size;
    int b = 0;
    while (b < kNumOctaveBands && !(f >= kOctaveEdges[b] &&
                                    f < kOctaveEdges[b + 1])) {
      ++b;
    }
    if (b == kNumOctaveBands) continue;
    for (int t = 0; t < s.num_frames(); ++t) {
      bands[b][t] += s.magnitude(t, k) * s.magnitude(t, k);
    }
  }
  return bands;
}

std::optional<double> EstimateDecayRt60(const Waveform& w) {
  const auto bands = OctaveBandEnergies(w);
  const double frame_dt = static_cast<double>(StftParams().hop) / w.sample_rate;
  std::vector<std::vector<double>> levels;
  for (const auto& e : bands) {
    std::vector<double> level(e.size());
    for (std::size_t t = 0; t < e.size(); ++t) {
      level[t] = 10.0 * std::log10(e[t] + 1e-20);
    }
    levels.push_back(std::move(level));
  }
  std::vector<double> band_peaks;
  double loudest = -std::numeric_limits<double>::infinity();
  for (const auto& level : levels) {
    band_peaks.push_back(Percentile(level, 95.0));
    loudest = std::max(loudest, band_peaks.back());
  }
  std::vector<std::vector<double>> active;
  for (std::size_t b = 0; b < levels.size(); ++b) {
    if (band_peaks[b] >= loudest - kInactiveBandDb) {
      active.push_back(std::move(levels[b]));
    }
  }
  levels = std::move(active);
  std::vector<double> best;
  for (double min_drop : kMinDropLevelsDb) {
    std::vector<double> all;
    for (const auto& level : levels) {
      const auto est = SegmentEstimates(level, min_drop, frame_dt);
      all.insert(all.end(), est.begin(), est.end());
    }
    if (all.size() >= kMinSegments) return Percentile(std::move(all), kEstimatePercentile);
    if (all.size() > best.size()) best = std::move(all);
  }
  if (!best.empty()) return Percentile(std::move(best), kEstimatePercentile);
  return std::nullopt;
}

}  // namespace internal

void AcousticParams::Validate() const {
  if (!(std::isfinite(rt60) && rt60 > 0.0 && std::isfinite(drr))) {
    throw Error(ErrorCode::kParamOutOfRange,
                "acoustic params need finite rt60 > 0 and finite drr");
  }
}

EnergyDecayCurve SchroederEdc(const Waveform& ir) {
  ValidateWaveform(ir);
  const std::size_t n = ir.size();
  std::vector<double> tail(n);
  double acc = 0.0;
  for (std::size_t i = n; i-- > 0;) {
    acc += ir.samples[i] * ir.samples[i];
    tail[i] = acc;
  }
  if (!(acc > 0.0)) {
    throw Error(ErrorCode::kZeroSignal, "impulse response has no energy");
  }
  EnergyDecayCurve edc;
  edc.sample_rate = ir.sample_rate;
  edc.values.resize(n);
  double prev = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double v =
        tail[i] > 0.0 ? 10.0 * std::log10(tail[i] / acc) : kEdcFloorDb;
    // Rounding in the running sum can nudge a value up by an ulp.
    prev = std::min(prev, std::max(v, kEdcFloorDb));
    edc.values[i] = prev;
  }
  edc.values[0] = 0.0;
  return edc;
}

EnergyDecayCurve SchroederEdc(const ImpulseResponse& ir) {
  return SchroederEdc(ir.wave);
}

double Rt60FromEdc(const EnergyDecayCurve& edc) {
  const auto& v = edc.values;
  auto first_below = [&v](double db) {
    return std::find_if(v.begin(), v.end(),
                        [db](double x) { return x <= db; });
  };
  const auto start = first_below(kFitStartDb);
  const auto stop = first_below(kFitEndDb);
  if (stop == v.end() || *stop <= kEdcFloorDb) {
    throw Error(ErrorCode::kInsufficientDecay,
                "decay curve does not reach -25 dB");
  }
  const auto i0 = static_cast<std::size_t>(start - v.begin());
  const auto i1 = static_cast<std::size_t>(stop - v.begin());
  if (i1 <= i0) {
    throw Error(ErrorCode::kInsufficientDecay,
                "decay curve drops from -5 to -25 dB within one sample");
  }
  std::vector<double> t(i1 - i0 + 1);
  for (std::size_t i = i0; i <= i1; ++i) {
    t[i - i0] = static_cast<double>(i) / edc.sample_rate;
  }
  const double slope = internal::LineSlope(
      t, std::span<const double>(v.data() + i0, i1 - i0 + 1));
  if (!(slope < 0.0)) {
    throw Error(ErrorCode::kInsufficientDecay, "decay curve is flat");
  }
  return -60.0 / slope;
}

double MeasureRt60(const Waveform& ir) {
  return Rt60FromEdc(SchroederEdc(ir));
}

DrrMeasurement Drr(const ImpulseResponse& ir) {
  ValidateWaveform(ir.wave);
  if (ir.direct_index >= ir.wave.size()) {
    throw Error(ErrorCode::kInvalidArgument, "direct index out of range");
  }
  const auto half = static_cast<std::size_t>(
      std::llround(kDirectWindowS * ir.wave.sample_rate));
  const std::size_t lo = ir.direct_index > half ? ir.direct_index - half : 0;
  const std::size_t hi = std::min(ir.wave.size() - 1, ir.direct_index + half);
  double direct = 0.0;
  double rest = 0.0;
  for (std::size_t i = 0; i < ir.wave.size(); ++i) {
    const double e = ir.wave.samples[i] * ir.wave.samples[i];
    if (i >= lo && i <= hi) {
      direct += e;
    } else {
      rest += e;
    }
  }
  if (!(rest > 0.0)) return {kDrrClampDb, true};
  if (!(direct > 0.0)) return {-kDrrClampDb, true};
  const double db = 10.0 * std::log10(direct / rest);
  if (db > kDrrClampDb) return {kDrrClampDb, true};
  if (db < -kDrrClampDb) return {-kDrrClampDb, true};
  return {db, false};
}

double BlindRt60(const Waveform& speech) {
  ValidateWaveform(speech);
  if (speech.size() < static_cast<std::size_t>(2 * speech.sample_rate)) {
    throw Error(ErrorCode::kInputTooShort,
                "blind RT60 needs at least 2 s of audio");
  }
  const auto rt = internal::EstimateDecayRt60(speech);
  if (!rt) {
    throw Error(ErrorCode::kNoDecayRegions,
                "no free-decay segments found in the signal");
  }
  return *rt;
}

double SyllabicModulationRatio(const Waveform& speech) {
  ValidateWaveform(speech);
  const auto bands = internal::OctaveBandEnergies(speech);
  const int frames = static_cast<int>(bands[0].size());
  const double frame_rate =
      static_cast<double>(speech.sample_rate) / StftParams().hop;
  const RealFft fft(frames);
  std::vector<double> env(frames);
  std::vector<std::complex<double>> spec(frames / 2 + 1);
  double sum = 0.0;
  int used = 0;
  for (const auto& e : bands) {
    for (int t = 0; t < frames; ++t) env[t] = std::sqrt(e[t]);
    fft.Forward(env.data(), spec.data());
    double in_band = 0.0;
    double total = 0.0;
    for (int k = 0; k <= frames / 2; ++k) {
      // Count the mirrored half so the ratio matches a full-spectrum sum.
      const double weight = (k == 0 || 2 * k == frames) ? 1.0 : 2.0;
      const double p = std::norm(spec[k]) * weight;
      const double f = k * frame_rate / frames;
      total += p;
      if (f >= 2.0 && f <= 8.0) in_band += p;
    }
    if (total > 0.0) {
      sum += in_band / total;
      ++used;
    }
  }
  if (used == 0) {
    throw Error(ErrorCode::kNoDecayRegions, "signal has no envelope energy");
  }
  return sum / used;
}

double BlindDrrFloorDb() { return kCalDrr[0]; }
double BlindDrrCeilingDb() { return kCalDrr[kCalNumDrr - 1]; }

double BlindDrr(const Waveform& speech, double rt60_hint) {
  if (speech.size() < static_cast<std::size_t>(2 * speech.sample_rate)) {
    throw Error(ErrorCode::kInputTooShort,
                "blind DRR needs at least 2 s of audio");
  }
  const double feature = std::log(SyllabicModulationRatio(speech));
  if (!(rt60_hint >= kCalRt60[0])) return BlindDrrCeilingDb();
  // Interpolate the calibration curve at the hinted RT60.
  int r = 0;
  while (r + 2 < kCalNumRt60 && rt60_hint > kCalRt60[r + 1]) ++r;
  const double w = std::clamp(
      (rt60_hint - kCalRt60[r]) / (kCalRt60[r + 1] - kCalRt60[r]), 0.0, 1.0);
  std::vector<double> curve(kCalNumDrr);
  for (int d = 0; d < kCalNumDrr; ++d) {
    curve[d] = (1.0 - w) * kCalFeature[r][d] + w * kCalFeature[r + 1][d];
  }
  if (feature <= curve.front()) return BlindDrrFloorDb();
  if (feature >= curve.back()) return BlindDrrCeilingDb();
  int d = 0;
  while (feature >= curve[d + 1]) ++d;
  const double frac = (feature - curve[d]) / (curve[d + 1] - curve[d]);
  return kCalDrr[d] + frac * (kCalDrr[d + 1] - kCalDrr[d]);
}

}  // namespace acmatch
