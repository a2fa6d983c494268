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

#ifndef ACMATCH_CORPUS_H_
#define ACMATCH_CORPUS_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "acmatch/alteration.h"
#include "acmatch/waveform.h"

namespace acmatch {

// Environment variable that overrides the corpus root used to resolve
// manifest paths.
inline constexpr char kCorpusRootEnv[] = "ACMATCH_CORPUS_ROOT";

// `fallback` unless kCorpusRootEnv is set and non-empty.
std::filesystem::path CorpusRoot(const std::filesystem::path& fallback);

struct ManifestEntry {
  std::string id;
  std::string wav_path;  // relative to the corpus root
  std::string split = "train";
  std::optional<double> blind_rt60;
  double duration_s = 0.0;
  std::map<std::string, std::string> tags;
};

// JSON lines, one entry per line.
struct CorpusManifest {
  std::vector<ManifestEntry> entries;

  // Throws kInvalidArgument on duplicate ids or unknown splits.
  void Validate() const;
  const ManifestEntry* Find(const std::string& id) const;

  std::string ToJsonl() const;
  static CorpusManifest FromJsonl(const std::string& text);
  static CorpusManifest Load(const std::filesystem::path& path);
  void Save(const std::filesystem::path& path) const;

  // Throws kIo naming the first entry whose WAV is missing under `root`.
  void CheckResolvable(const std::filesystem::path& root) const;
};

struct PairedClip {
  std::string id;
  std::string split;
  Waveform source;  // clean, trimmed
  Waveform target;  // source convolved with the IR, trimmed
  std::string ir_id;
  double ir_rt60 = 0.0;
};

inline constexpr double kPairClipSeconds = 2.56;

struct CleanClip {
  std::string id;
  std::string split;
  Waveform audio;
};

// Assigns every clip an IR drawn uniformly from its split (per-clip seed
// seed ^ index). Sources are trimmed to `clip_seconds` and rounded to float
// precision so that stored pairs re-verify exactly. Throws kEmptyPool and
// kInputTooShort.
std::vector<PairedClip> PairClips(const std::vector<CleanClip>& clean,
                                  const IrPool& pool, std::uint64_t seed,
                                  double clip_seconds = kPairClipSeconds);

// File-backed PairClips: reads the clean manifest under `clean_root`, writes
// source/<id>.wav and target/<id>.wav under `out_root` and returns the target
// manifest. Tags carry source_path, ir_id and ir_rt60.
CorpusManifest BuildPairedCorpus(const CorpusManifest& clean,
                                 const std::filesystem::path& clean_root,
                                 const IrPool& pool, std::uint64_t seed,
                                 const std::filesystem::path& out_root);

struct FilterConfig {
  double min_rt60 = 0.1;
  double bin_width = 0.1;
  double cap_factor = 2.0;
  std::uint64_t seed = 0;
};

// Drops entries with blind_rt60 below min_rt60, then caps every RT60 bin at
// cap_factor times the median non-empty bin count by seeded subsampling.
// Order of survivors is preserved. Throws kInvalidArgument when an entry has
// no blind_rt60 and kEmptyAfterFilter when nothing survives.
CorpusManifest FilterCorpus(const CorpusManifest& manifest,
                            const FilterConfig& config = {});

// Pool directory layout: pool.jsonl plus one float32 WAV per IR.
void SaveIrPool(const IrPool& pool, const std::filesystem::path& dir);
IrPool LoadIrPool(const std::filesystem::path& dir);

}  // namespace acmatch

#endif  // ACMATCH_CORPUS_H_
