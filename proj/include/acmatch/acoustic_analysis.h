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

#ifndef ACMATCH_ACOUSTIC_ANALYSIS_H_
#define ACMATCH_ACOUSTIC_ANALYSIS_H_

#include <string>
#include <vector>

#include "acmatch/rir_sim.h"
#include "acmatch/waveform.h"

namespace acmatch {

// Schroeder backward-integrated energy in dB, 0 at the first sample and
// floored at kEdcFloorDb.
struct EnergyDecayCurve {
  std::vector<double> values;
  int sample_rate = kSampleRate;
};

inline constexpr double kEdcFloorDb = -120.0;

struct AcousticParams {
  double rt60 = 0.5;  // seconds
  double drr = 0.0;   // dB

  // Throws kParamOutOfRange unless rt60 is positive and both are finite.
  void Validate() const;
};

struct DrrMeasurement {
  double drr_db = 0.0;
  // Set when one side of the ratio has no energy and the value was clamped
  // to +/-kDrrClampDb.
  bool clamped = false;
};

inline constexpr double kDrrClampDb = 60.0;

// Throws kZeroSignal for an all-zero IR.
EnergyDecayCurve SchroederEdc(const Waveform& ir);
EnergyDecayCurve SchroederEdc(const ImpulseResponse& ir);

// T20: line fit between the -5 dB and -25 dB crossings, extrapolated to
// 60 dB. Throws kInsufficientDecay when -25 dB is never reached.
double Rt60FromEdc(const EnergyDecayCurve& edc);

// Schroeder RT60 of an IR in one call.
double MeasureRt60(const Waveform& ir);

// Energy within +/-2.5 ms of the direct path over the energy elsewhere.
DrrMeasurement Drr(const ImpulseResponse& ir);

// Blind RT60 from reverberant speech. Octave-band log-energy envelopes are
// scanned for free-decay segments (at least 15 dB of decay within 0.5 s,
// relaxed to 10 and then 6 dB when none qualify); each segment's slope gives
// one decay-time estimate, and the 85th percentile of all estimates is
// returned. Throws kInputTooShort below 2 s and kNoDecayRegions when no
// segment qualifies.
double BlindRt60(const Waveform& speech);

// Syllabic modulation depth: per octave band, the fraction of amplitude
// envelope energy between 2 and 8 Hz, averaged over bands. Throws
// kNoDecayRegions for silent input.
double SyllabicModulationRatio(const Waveform& speech);

// Coarse blind DRR. Inverts a calibration table of SyllabicModulationRatio
// over simulated (rt60, drr) pairs at the given RT60. Hints below the table
// (near-anechoic input) return the table's DRR ceiling.
double BlindDrr(const Waveform& speech, double rt60_hint);

// DRR range covered by the calibration table.
double BlindDrrFloorDb();
double BlindDrrCeilingDb();

// Serializable analysis record.
struct AnalysisRecord {
  std::string clip_id;
  double rt60 = 0.0;
  double drr = 0.0;
  std::string method;  // "schroeder" or "blind"
  std::vector<std::string> flags;
};

}  // namespace acmatch

#endif  // ACMATCH_ACOUSTIC_ANALYSIS_H_
