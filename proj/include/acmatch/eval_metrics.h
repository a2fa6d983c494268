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

#ifndef ACMATCH_EVAL_METRICS_H_
#define ACMATCH_EVAL_METRICS_H_

#include <optional>
#include <string>
#include <vector>

#include "acmatch/dsp.h"
#include "acmatch/waveform.h"

namespace acmatch {

// All pairwise metrics throw kLengthMismatch on unequal lengths and
// kRateMismatch on unequal rates; nothing is trimmed implicitly.

// Mean squared difference of STFT magnitudes.
double StftDistance(const Waveform& a, const Waveform& b,
                    const StftParams& p = {});

// |BlindRt60(output) - BlindRt60(target)|. Propagates kNoDecayRegions.
double Rte(const Waveform& output, const Waveform& target);

// Mean absolute difference of 80-band mel magnitude spectrograms.
double MelL1(const Waveform& a, const Waveform& b);

struct StftLoss {
  double value = 0.0;
  // Set when `a` had no energy at some resolution, so the spectral
  // convergence term was left out there.
  bool convergence_skipped = false;
};

// ||A| - |B||_F / ||A||_F + mean |log|A| - log|B||, at one resolution.
StftLoss SingleResolutionStftLoss(const Waveform& a, const Waveform& b,
                                  const StftParams& p);

// Sum of SingleResolutionStftLoss over `resolutions`; the default is
// fft/hop/window 512/128/512, 1024/256/1024 and 2048/512/2048.
std::vector<StftParams> DefaultStftLossResolutions();
StftLoss MultiResolutionStftLoss(
    const Waveform& a, const Waveform& b,
    const std::vector<StftParams>& resolutions = DefaultStftLossResolutions());

struct EvalRow {
  std::string clip_id;
  double stft_distance = 0.0;
  std::optional<double> rte_seconds;  // empty when the RTE was not measurable
  double mel_l1 = 0.0;
  double mrstft = 0.0;
  std::vector<std::string> flags;
};

struct MetricSummary {
  double mean = 0.0;
  double median = 0.0;
  double std_error = 0.0;
  int count = 0;
};

struct EvalReport {
  std::vector<EvalRow> rows;
  MetricSummary stft_distance;
  MetricSummary rte_seconds;
  MetricSummary mel_l1;
  MetricSummary mrstft;

  // Recomputes the summaries from `rows`; rows without an RTE are left out
  // of that metric only.
  void Aggregate();
  std::string ToCsv() const;
  std::string AggregatesJson() const;
};

MetricSummary Summarize(const std::vector<double>& values);

// Scores one (output, target) pair, flagging rather than throwing when the
// RTE cannot be measured.
EvalRow EvaluatePair(const std::string& clip_id, const Waveform& output,
                     const Waveform& target);

}  // namespace acmatch

#endif  // ACMATCH_EVAL_METRICS_H_
