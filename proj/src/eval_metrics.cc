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
#include <sstream>

#include "json.hpp"

#include "acmatch/acoustic_analysis.h"
#include "acmatch/errors.h"
#include "stats.h"

namespace acmatch {
namespace {

constexpr double kLogFloor = 1e-7;

void CheckPair(const Waveform& a, const Waveform& b) {
  if (a.sample_rate != b.sample_rate) {
    throw Error(ErrorCode::kRateMismatch, "waveforms have different rates");
  }
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                "waveform lengths differ: " + std::to_string(a.size()) +
                    " vs " + std::to_string(b.size()));
  }
}

std::string FormatDouble(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

double StftDistance(const Waveform& a, const Waveform& b,
                    const StftParams& p) {
  CheckPair(a, b);
  const Spectrogram sa = Stft(a, p);
  const Spectrogram sb = Stft(b, p);
  return (sa.magnitude - sb.magnitude).array().square().mean();
}

double Rte(const Waveform& output, const Waveform& target) {
  return std::abs(BlindRt60(output) - BlindRt60(target));
}

double MelL1(const Waveform& a, const Waveform& b) {
  CheckPair(a, b);
  const StftParams p;
  const MelFilterbank fb = MelFilterbank::Create(80, 0.0, a.sample_rate / 2.0,
                                                 a.sample_rate, p.fft_size);
  const Matrix ma = MelSpectrogram(a, p, fb);
  const Matrix mb = MelSpectrogram(b, p, fb);
  return (ma - mb).array().abs().mean();
}

StftLoss SingleResolutionStftLoss(const Waveform& a, const Waveform& b,
                                  const StftParams& p) {
  CheckPair(a, b);
  const Matrix ma = Stft(a, p).magnitude;
  const Matrix mb = Stft(b, p).magnitude;
  StftLoss loss;
  const double ref = ma.norm();
  if (ref > 0.0) {
    loss.value += (ma - mb).norm() / ref;
  } else {
    loss.convergence_skipped = true;
  }
  const auto la = ma.array().max(kLogFloor).log();
  const auto lb = mb.array().max(kLogFloor).log();
  loss.value += (la - lb).abs().mean();
  return loss;
}

std::vector<StftParams> DefaultStftLossResolutions() {
  return {{512, 128, 512}, {1024, 256, 1024}, {2048, 512, 2048}};
}

StftLoss MultiResolutionStftLoss(const Waveform& a, const Waveform& b,
                                 const std::vector<StftParams>& resolutions) {
  StftLoss total;
  for (const StftParams& p : resolutions) {
    const StftLoss one = SingleResolutionStftLoss(a, b, p);
    total.value += one.value;
    total.convergence_skipped |= one.convergence_skipped;
  }
  return total;
}

MetricSummary Summarize(const std::vector<double>& values) {
  MetricSummary s;
  s.count = static_cast<int>(values.size());
  if (values.empty()) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / s.count;
  s.median = internal::Median(values);
  if (s.count > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.std_error = std::sqrt(ss / (s.count - 1)) / std::sqrt(s.count);
  }
  return s;
}

void EvalReport::Aggregate() {
  std::vector<double> stft, rte, mel, mr;
  for (const EvalRow& r : rows) {
    stft.push_back(r.stft_distance);
    mel.push_back(r.mel_l1);
    mr.push_back(r.mrstft);
    if (r.rte_seconds) rte.push_back(*r.rte_seconds);
  }
  stft_distance = Summarize(stft);
  rte_seconds = Summarize(rte);
  mel_l1 = Summarize(mel);
  mrstft = Summarize(mr);
}

std::string EvalReport::ToCsv() const {
  std::ostringstream os;
  os << "clip_id,stft_distance,rte_seconds,mel_l1,mrstft,flags\n";
  for (const EvalRow& r : rows) {
    os << r.clip_id << ',' << FormatDouble(r.stft_distance) << ','
       << (r.rte_seconds ? FormatDouble(*r.rte_seconds) : "") << ','
       << FormatDouble(r.mel_l1) << ',' << FormatDouble(r.mrstft) << ',';
    for (std::size_t i = 0; i < r.flags.size(); ++i) {
      os << (i ? ";" : "") << r.flags[i];
    }
    os << '\n';
  }
  return os.str();
}

std::string EvalReport::AggregatesJson() const {
  auto to_json = [](const MetricSummary& s) {
    return nlohmann::json{{"mean", s.mean},
                          {"median", s.median},
                          {"std_error", s.std_error},
                          {"count", s.count}};
  };
  const nlohmann::json j = {{"num_rows", rows.size()},
                            {"stft_distance", to_json(stft_distance)},
                            {"rte_seconds", to_json(rte_seconds)},
                            {"mel_l1", to_json(mel_l1)},
                            {"mrstft", to_json(mrstft)}};
  return j.dump(2);
}

EvalRow EvaluatePair(const std::string& clip_id, const Waveform& output,
                     const Waveform& target) {
  EvalRow row;
  row.clip_id = clip_id;
  row.stft_distance = StftDistance(output, target);
  row.mel_l1 = MelL1(output, target);
  const StftLoss mr = MultiResolutionStftLoss(target, output);
  row.mrstft = mr.value;
  if (mr.convergence_skipped) row.flags.push_back("mrstft_convergence_skipped");
  try {
    row.rte_seconds = Rte(output, target);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kNoDecayRegions &&
        e.code() != ErrorCode::kInputTooShort) {
      throw;
    }
    row.flags.push_back(std::string("rte_") +
                        std::string(ErrorCodeName(e.code())));
  }
  return row;
}

}  // namespace acmatch
