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

#include <algorithm>
#include <cctype>
#include <random>
#include <set>

#include "acmatch/acoustic_analysis.h"
#include "acmatch/dsp.h"
#include "acmatch/errors.h"
#include "acmatch/reverb_match.h"

namespace acmatch {
namespace {

constexpr double kSnrLoDb = 2.0;
constexpr double kSnrHiDb = 10.0;

struct Draws {
  const IrPoolEntry* ir;
  double snr_db;
  std::uint64_t noise_seed;
};

Draws DrawStages(const Waveform& a_t, const IrPool& pool,
                 std::string_view split, std::uint64_t seed) {
  ValidateWaveform(a_t);
  if (a_t.size() < static_cast<std::size_t>(2 * a_t.sample_rate)) {
    throw Error(ErrorCode::kInputTooShort, "alteration needs at least 2 s");
  }
  const auto candidates = pool.Split(split);
  if (candidates.empty()) {
    throw Error(ErrorCode::kEmptyPool,
                "IR pool has no entries in split '" + std::string(split) + "'");
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
  Draws d;
  d.ir = candidates[pick(rng)];
  d.snr_db = std::uniform_real_distribution<double>(kSnrLoDb, kSnrHiDb)(rng);
  d.noise_seed = rng();
  return d;
}

Waveform Randomize(const Waveform& x, const ImpulseResponse& ir) {
  if (ir.wave.sample_rate != x.sample_rate) {
    throw Error(ErrorCode::kRateMismatch, "pool IR rate differs from audio");
  }
  Waveform wet = FftConvolve(x, AlignedToDirectPath(ir));
  wet.samples.resize(x.size());
  return ScaleToPeak(wet, PeakAbs(x.samples));
}

std::string Normalize(std::string_view name) {
  std::string out;
  for (char c : name) {
    if (c == ' ' || c == '.' || c == '_' || c == '$') continue;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

}  // namespace

bool IsValidSplit(std::string_view split) {
  return split == "train" || split == "val" || split == "test";
}

void IrPool::Validate() const {
  std::set<std::string_view> ids;
  for (const auto& e : entries) {
    if (!ids.insert(e.id).second) {
      throw Error(ErrorCode::kInvalidArgument, "duplicate IR id '" + e.id + "'");
    }
    if (!IsValidSplit(e.split)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "IR '" + e.id + "' has unknown split '" + e.split + "'");
    }
  }
}

std::vector<const IrPoolEntry*> IrPool::Split(std::string_view split) const {
  std::vector<const IrPoolEntry*> out;
  for (const auto& e : entries) {
    if (e.split == split) out.push_back(&e);
  }
  return out;
}

const IrPoolEntry* IrPool::Find(std::string_view id) const {
  for (const auto& e : entries) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

IrPool GenerateIrPool(const IrPoolSpec& spec, std::uint64_t seed) {
  IrPool pool;
  const std::pair<const char*, int> splits[] = {
      {"train", spec.train}, {"val", spec.val}, {"test", spec.test}};
  std::uint64_t index = 0;
  for (const auto& [split, count] : splits) {
    for (int i = 0; i < count; ++i, ++index) {
      const ShoeboxRoom room =
          SampleRandomRoom(seed ^ index, spec.rt60_lo, spec.rt60_hi);
      IrPoolEntry e;
      e.id = std::string(split) + "_" + std::to_string(i);
      e.split = split;
      e.ir = SimulateRir(room, kSampleRate, spec.ir_length_s);
      e.rt60 = MeasureRt60(e.ir.wave);
      pool.entries.push_back(std::move(e));
    }
  }
  return pool;
}

AlterationTrace Alter(const Waveform& a_t, const IrPool& pool,
                      std::string_view split, std::uint64_t seed) {
  const Draws d = DrawStages(a_t, pool, split, seed);
  AlterationTrace trace;
  trace.a_t = a_t;
  DereverbResult dr = Dereverberate(a_t);
  trace.a_c = std::move(dr.output);
  trace.dereverb_passthrough = dr.passthrough;
  trace.a_r = Randomize(trace.a_c, d.ir->ir);
  trace.a_s = AddNoiseAtSnr(trace.a_r, d.snr_db, d.noise_seed);
  trace.sampled_ir_id = d.ir->id;
  trace.snr_db = d.snr_db;
  trace.seed = seed;
  return trace;
}

AlterationVariant ParseAlterationVariant(std::string_view name) {
  const std::string n = Normalize(name);
  if (n == "full") return AlterationVariant::kFull;
  if (n == "dereverb+randomization") {
    return AlterationVariant::kDereverbRandomization;
  }
  if (n == "dereverb+noise") return AlterationVariant::kDereverbNoise;
  if (n == "dereverb") return AlterationVariant::kDereverb;
  if (n == "at+randomization+noise") {
    return AlterationVariant::kRandomizationNoise;
  }
  throw Error(ErrorCode::kBadVariant,
              "unknown alteration variant '" + std::string(name) + "'");
}

std::string_view AlterationVariantName(AlterationVariant v) {
  switch (v) {
    case AlterationVariant::kFull:
      return "full";
    case AlterationVariant::kDereverbRandomization:
      return "dereverb+randomization";
    case AlterationVariant::kDereverbNoise:
      return "dereverb+noise";
    case AlterationVariant::kDereverb:
      return "dereverb";
    case AlterationVariant::kRandomizationNoise:
      return "at+randomization+noise";
  }
  return "unknown";
}

Waveform AblationVariant(const Waveform& a_t, const IrPool& pool,
                         std::string_view split, std::uint64_t seed,
                         AlterationVariant variant) {
  const Draws d = DrawStages(a_t, pool, split, seed);
  const bool dereverb = variant != AlterationVariant::kRandomizationNoise;
  const bool randomize = variant == AlterationVariant::kFull ||
                         variant == AlterationVariant::kDereverbRandomization ||
                         variant == AlterationVariant::kRandomizationNoise;
  const bool noise = variant == AlterationVariant::kFull ||
                     variant == AlterationVariant::kDereverbNoise ||
                     variant == AlterationVariant::kRandomizationNoise;
  Waveform x = dereverb ? Dereverberate(a_t).output : a_t;
  if (randomize) x = Randomize(x, d.ir->ir);
  if (noise) x = AddNoiseAtSnr(x, d.snr_db, d.noise_seed);
  return x;
}

}  // namespace acmatch
