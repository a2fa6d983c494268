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

#include "acmatch/corpus.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "json.hpp"

#include "acmatch/acoustic_analysis.h"
#include "acmatch/dsp.h"
#include "acmatch/errors.h"
#include "acmatch/wav_io.h"
#include "stats.h"

namespace acmatch {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string ReadText(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void WriteText(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << text;
}

template <typename Fn>
void ForEachJsonLine(const std::string& text, Fn&& fn) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      fn(json::parse(line));
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kFormat, "line " + std::to_string(line_no) +
                                          ": " + e.what());
    }
  }
}

Waveform RoundToFloat(Waveform w) {
  for (double& v : w.samples) v = static_cast<double>(static_cast<float>(v));
  return w;
}

}  // namespace

fs::path CorpusRoot(const fs::path& fallback) {
  const char* env = std::getenv(kCorpusRootEnv);
  if (env != nullptr && env[0] != '\0') return fs::path(env);
  return fallback;
}

void CorpusManifest::Validate() const {
  std::set<std::string> ids;
  for (const auto& e : entries) {
    if (e.id.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "manifest entry without id");
    }
    if (!ids.insert(e.id).second) {
      throw Error(ErrorCode::kInvalidArgument, "duplicate clip id '" + e.id + "'");
    }
    if (!IsValidSplit(e.split)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "clip '" + e.id + "' has unknown split '" + e.split + "'");
    }
  }
}

const ManifestEntry* CorpusManifest::Find(const std::string& id) const {
  for (const auto& e : entries) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

std::string CorpusManifest::ToJsonl() const {
  std::string out;
  for (const auto& e : entries) {
    json j = {{"id", e.id},
              {"wav_path", e.wav_path},
              {"split", e.split},
              {"duration_s", e.duration_s},
              {"tags", e.tags}};
    j["blind_rt60"] = e.blind_rt60 ? json(*e.blind_rt60) : json(nullptr);
    out += j.dump();
    out += '\n';
  }
  return out;
}

CorpusManifest CorpusManifest::FromJsonl(const std::string& text) {
  CorpusManifest m;
  ForEachJsonLine(text, [&m](const json& j) {
    ManifestEntry e;
    e.id = j.at("id").get<std::string>();
    e.wav_path = j.at("wav_path").get<std::string>();
    e.split = j.value("split", std::string("train"));
    e.duration_s = j.value("duration_s", 0.0);
    if (j.contains("blind_rt60") && !j["blind_rt60"].is_null()) {
      e.blind_rt60 = j["blind_rt60"].get<double>();
    }
    if (j.contains("tags")) {
      e.tags = j["tags"].get<std::map<std::string, std::string>>();
    }
    m.entries.push_back(std::move(e));
  });
  m.Validate();
  return m;
}

CorpusManifest CorpusManifest::Load(const fs::path& path) {
  return FromJsonl(ReadText(path));
}

void CorpusManifest::Save(const fs::path& path) const {
  WriteText(path, ToJsonl());
}

void CorpusManifest::CheckResolvable(const fs::path& root) const {
  for (const auto& e : entries) {
    if (!fs::exists(root / e.wav_path)) {
      throw Error(ErrorCode::kIo, "clip '" + e.id + "': missing " +
                                      (root / e.wav_path).string());
    }
  }
}

std::vector<PairedClip> PairClips(const std::vector<CleanClip>& clean,
                                  const IrPool& pool, std::uint64_t seed,
                                  double clip_seconds) {
  std::vector<PairedClip> out;
  for (std::size_t i = 0; i < clean.size(); ++i) {
    const CleanClip& c = clean[i];
    const auto length =
        static_cast<std::size_t>(std::llround(clip_seconds * c.audio.sample_rate));
    if (c.audio.size() < length) {
      throw Error(ErrorCode::kInputTooShort,
                  "clip '" + c.id + "' is shorter than the pair length");
    }
    const auto candidates = pool.Split(c.split);
    if (candidates.empty()) {
      throw Error(ErrorCode::kEmptyPool,
                  "IR pool has no entries in split '" + c.split + "'");
    }
    std::mt19937_64 rng(seed ^ i);
    std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
    const IrPoolEntry* ir = candidates[pick(rng)];
    PairedClip p;
    p.id = c.id;
    p.split = c.split;
    p.source = RoundToFloat(Resized(c.audio, length));
    p.target = FftConvolve(p.source, AlignedToDirectPath(ir->ir));
    p.target.samples.resize(length);
    p.ir_id = ir->id;
    p.ir_rt60 = ir->rt60;
    out.push_back(std::move(p));
  }
  return out;
}

CorpusManifest BuildPairedCorpus(const CorpusManifest& clean,
                                 const fs::path& clean_root,
                                 const IrPool& pool, std::uint64_t seed,
                                 const fs::path& out_root) {
  clean.Validate();
  std::vector<CleanClip> clips;
  for (const auto& e : clean.entries) {
    clips.push_back({e.id, e.split, ReadWav(clean_root / e.wav_path)});
  }
  const auto pairs = PairClips(clips, pool, seed);
  CorpusManifest out;
  for (const auto& p : pairs) {
    const std::string src_rel = "source/" + p.id + ".wav";
    const std::string tgt_rel = "target/" + p.id + ".wav";
    fs::create_directories(out_root / "source");
    fs::create_directories(out_root / "target");
    WriteWav(out_root / src_rel, p.source);
    WriteWav(out_root / tgt_rel, p.target);
    ManifestEntry e;
    e.id = p.id;
    e.wav_path = tgt_rel;
    e.split = p.split;
    e.duration_s = p.target.duration_seconds();
    try {
      e.blind_rt60 = BlindRt60(p.target);
    } catch (const Error& err) {
      e.tags["blind_rt60_error"] = std::string(ErrorCodeName(err.code()));
    }
    std::ostringstream rt;
    rt.precision(17);
    rt << p.ir_rt60;
    e.tags["source_path"] = src_rel;
    e.tags["ir_id"] = p.ir_id;
    e.tags["ir_rt60"] = rt.str();
    out.entries.push_back(std::move(e));
  }
  return out;
}

CorpusManifest FilterCorpus(const CorpusManifest& manifest,
                            const FilterConfig& config) {
  if (!(config.bin_width > 0.0 && config.cap_factor >= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "bad filter configuration");
  }
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < manifest.entries.size(); ++i) {
    const auto& e = manifest.entries[i];
    if (!e.blind_rt60) {
      throw Error(ErrorCode::kInvalidArgument,
                  "clip '" + e.id + "' has no blind_rt60");
    }
    if (*e.blind_rt60 >= config.min_rt60) kept.push_back(i);
  }
  if (kept.empty()) {
    throw Error(ErrorCode::kEmptyAfterFilter,
                "no clip has RT60 >= " + std::to_string(config.min_rt60));
  }
  std::map<long, std::vector<std::size_t>> bins;
  for (std::size_t i : kept) {
    const double rt = *manifest.entries[i].blind_rt60;
    bins[static_cast<long>(std::floor(rt / config.bin_width))].push_back(i);
  }
  std::vector<double> counts;
  for (const auto& [bin, members] : bins) counts.push_back(members.size());
  const auto cap = std::max<std::size_t>(
      1, static_cast<std::size_t>(
             std::floor(config.cap_factor * internal::Median(counts))));
  std::mt19937_64 rng(config.seed);
  std::set<std::size_t> survivors;
  for (auto& [bin, members] : bins) {
    if (members.size() > cap) {
      std::shuffle(members.begin(), members.end(), rng);
      members.resize(cap);
    }
    survivors.insert(members.begin(), members.end());
  }
  CorpusManifest out;
  for (std::size_t i : survivors) out.entries.push_back(manifest.entries[i]);
  return out;
}

void SaveIrPool(const IrPool& pool, const fs::path& dir) {
  pool.Validate();
  fs::create_directories(dir);
  std::string index;
  for (const auto& e : pool.entries) {
    const std::string rel = e.id + ".wav";
    WriteWav(dir / rel, e.ir.wave);
    index += json{{"id", e.id},
                  {"split", e.split},
                  {"wav_path", rel},
                  {"direct_index", e.ir.direct_index},
                  {"rt60", e.rt60}}
                 .dump();
    index += '\n';
  }
  WriteText(dir / "pool.jsonl", index);
}

IrPool LoadIrPool(const fs::path& dir) {
  IrPool pool;
  ForEachJsonLine(ReadText(dir / "pool.jsonl"), [&](const json& j) {
    IrPoolEntry e;
    e.id = j.at("id").get<std::string>();
    e.split = j.at("split").get<std::string>();
    e.ir.wave = ReadWav(dir / j.at("wav_path").get<std::string>());
    e.ir.direct_index = j.at("direct_index").get<std::size_t>();
    e.rt60 = j.at("rt60").get<double>();
    pool.entries.push_back(std::move(e));
  });
  pool.Validate();
  return pool;
}

}  // namespace acmatch
