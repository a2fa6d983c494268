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

#include "cli_commands.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "acmatch/acoustic_analysis.h"
#include "acmatch/alteration.h"
#include "acmatch/corpus.h"
#include "acmatch/errors.h"
#include "acmatch/eval_metrics.h"
#include "acmatch/kernel_check.h"
#include "acmatch/reverb_match.h"
#include "acmatch/rir_sim.h"
#include "acmatch/speech_synth.h"
#include "acmatch/wav_io.h"
#include "spectrogram_png.h"

namespace acmatch::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Bad flag combinations detected after parsing; reported with exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Helpers

void WriteTextFile(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << text;
}

void WriteWavFile(const fs::path& path, const Waveform& w) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  WriteWav(path, w);
}

json ReadJsonFile(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kFormat, path.string() + ": " + e.what());
  }
}

// "lo:hi" -> {lo, hi}.
std::pair<double, double> ParseRange(const std::string& text) {
  const auto colon = text.find(':');
  try {
    if (colon == std::string::npos) throw std::invalid_argument(text);
    return {std::stod(text.substr(0, colon)), std::stod(text.substr(colon + 1))};
  } catch (const std::exception&) {
    throw UsageError("expected a range lo:hi, got '" + text + "'");
  }
}

// Per-clip seeds depend only on manifest position, not on scheduling.
std::uint64_t ClipSeed(std::uint64_t seed, std::size_t index) { return seed ^ index; }

// Runs fn(i) for i in [0, n) on `jobs` threads. Results must be written by
// index; the lowest-index failure is rethrown so errors are deterministic.
template <typename Fn>
void ParallelFor(std::size_t n, int jobs, Fn&& fn) {
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int threads = std::max(1, std::min<int>(jobs, static_cast<int>(n)));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

int DefaultJobs() {
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

// Manifest paths resolve against --root, else the corpus-root environment
// variable, else the manifest's own directory.
fs::path ResolveRoot(const std::string& root_flag, const fs::path& manifest) {
  if (!root_flag.empty()) return root_flag;
  return CorpusRoot(manifest.has_parent_path() ? manifest.parent_path() : fs::path("."));
}

json RoomJson(const ShoeboxRoom& room) {
  return {{"dims", room.dims},
          {"absorption", room.absorption},
          {"source_pos", room.source},
          {"receiver_pos", room.receiver},
          {"speed_of_sound", room.speed_of_sound},
          {"max_order", room.max_order}};
}

Vec3 ReadVec3(const json& j, const char* key, const char* alt) {
  const json& v = j.contains(key) ? j.at(key) : j.at(alt);
  return v.get<Vec3>();
}

ShoeboxRoom RoomFromJson(const json& j) {
  try {
    ShoeboxRoom room;
    room.dims = j.at("dims").get<Vec3>();
    const json& a = j.at("absorption");
    if (a.is_number()) {
      room.absorption.fill(a.get<double>());
    } else {
      room.absorption = a.get<std::array<double, 6>>();
    }
    room.source = ReadVec3(j, "source_pos", "source");
    room.receiver = ReadVec3(j, "receiver_pos", "receiver");
    room.speed_of_sound = j.value("speed_of_sound", room.speed_of_sound);
    room.max_order = j.value("max_order", room.max_order);
    return room;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kFormat, std::string("bad room description: ") + e.what());
  }
}

std::optional<double> TryBlindRt60(const Waveform& w, std::string* flag = nullptr) {
  try {
    return BlindRt60(w);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kNoDecayRegions && e.code() != ErrorCode::kInputTooShort) {
      throw;
    }
    if (flag) *flag = std::string(ErrorCodeName(e.code()));
    return std::nullopt;
  }
}

json OptionalJson(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

// ---------------------------------------------------------------------------
// simulate

struct SimulateArgs {
  std::string room_path;
  bool sample = false;
  std::string rt60_range = "0.2:1.0";
  std::optional<std::uint64_t> seed;
  std::string out;
  double length_s = 0.0;
  double highpass_hz = kRirHighPassHz;
};

void AddSimulate(CLI::App& app, SimulateArgs& a) {
  CLI::App* sub = app.add_subcommand("simulate", "Simulate a shoebox room impulse response");
  auto* room = sub->add_option("--room", a.room_path,
                               "Room JSON: dims, absorption (number or 6 values), "
                               "source_pos, receiver_pos, optional speed_of_sound and max_order");
  auto* sample = sub->add_flag("--sample", a.sample, "Draw a random room instead of --room");
  room->excludes(sample);
  sub->add_option("--rt60", a.rt60_range, "Sabine RT60 range lo:hi for --sample")
      ->capture_default_str();
  sub->add_option("--seed", a.seed, "Seed for --sample (required with --sample)");
  sub->add_option("--out", a.out, "Output IR WAV; a .json sidecar is written next to it")
      ->required();
  sub->add_option("--length", a.length_s,
                  "IR length in seconds (default max(1, 1.6 x Sabine RT60))");
  sub->add_option("--highpass", a.highpass_hz, "High-pass cutoff in Hz; 0 keeps the raw image sum")
      ->capture_default_str();
}

int RunSimulate(const SimulateArgs& a) {
  ShoeboxRoom room;
  if (a.sample) {
    if (!a.seed) throw UsageError("--sample requires --seed");
    const auto [lo, hi] = ParseRange(a.rt60_range);
    room = SampleRandomRoom(*a.seed, lo, hi);
  } else if (!a.room_path.empty()) {
    room = RoomFromJson(ReadJsonFile(a.room_path));
  } else {
    throw UsageError("simulate needs --room FILE or --sample --seed N");
  }
  room.Validate();
  const double sabine = SabineRt60(room);
  const double length = a.length_s > 0.0 ? a.length_s : std::max(1.0, 1.6 * sabine);
  const ImpulseResponse ir = SimulateRir(room, kSampleRate, length, a.highpass_hz);
  std::optional<double> measured;
  std::string measure_error;
  try {
    measured = MeasureRt60(ir.wave);
  } catch (const Error& e) {
    measure_error = ErrorCodeName(e.code());
  }
  const fs::path out(a.out);
  WriteWavFile(out, ir.wave);
  json sidecar = RoomJson(room);
  sidecar["direct_index"] = ir.direct_index;
  sidecar["sabine_rt60"] = sabine;
  sidecar["measured_rt60"] = OptionalJson(measured);
  sidecar["drr_db"] = Drr(ir).drr_db;
  sidecar["sample_rate"] = kSampleRate;
  sidecar["length_s"] = length;
  sidecar["highpass_hz"] = a.highpass_hz;
  if (a.seed) sidecar["seed"] = *a.seed;
  if (!measure_error.empty()) sidecar["measured_rt60_error"] = measure_error;
  fs::path side = out;
  side.replace_extension(".json");
  WriteTextFile(side, sidecar.dump(2) + "\n");
  std::printf("sabine_rt60 %.4f s  measured_rt60 %s  drr %.2f dB\n", sabine,
              measured ? (std::to_string(*measured) + " s").c_str() : measure_error.c_str(),
              Drr(ir).drr_db);
  std::printf("wrote %s and %s\n", out.c_str(), side.c_str());
  return kExitOk;
}

// ---------------------------------------------------------------------------
// match

struct MatchArgs {
  std::string src;
  std::string ref;
  std::optional<double> rt60;
  std::optional<double> drr;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string report;
  std::string spectrograms;
};

void AddMatch(CLI::App& app, MatchArgs& a) {
  CLI::App* sub = app.add_subcommand(
      "match", "Give a clean source the reverberation of a reference clip or of explicit params");
  sub->add_option("--src", a.src, "Source WAV")->required();
  auto* ref = sub->add_option("--ref", a.ref, "Reverberant reference WAV");
  auto* rt = sub->add_option("--rt60", a.rt60, "Target RT60 in seconds");
  auto* drr = sub->add_option("--drr", a.drr, "Target DRR in dB");
  ref->excludes(rt)->excludes(drr);
  sub->add_option("--seed", a.seed, "Seed for the synthesized IR")->required();
  sub->add_option("--out", a.out, "Output WAV")->required();
  sub->add_option("--report", a.report, "Report JSON (default: --out with .json)");
  sub->add_option("--emit-spectrograms", a.spectrograms,
                  "Directory for source/output spectrogram PNGs");
}

int RunMatch(const MatchArgs& a) {
  MatchRequest req;
  req.source = ReadWav(a.src);
  req.seed = *a.seed;
  if (!a.ref.empty()) {
    req.reference = ReadWav(a.ref);
  } else if (a.rt60 && a.drr) {
    req.reference = AcousticParams{*a.rt60, *a.drr};
  } else {
    throw UsageError("match needs --ref FILE or both --rt60 and --drr");
  }
  const MatchResult r = Match(req);
  const fs::path out(a.out);
  WriteWavFile(out, r.output);
  std::string flag;
  const std::optional<double> measured = TryBlindRt60(r.output, &flag);
  json report = {{"estimated_params", {{"rt60", r.params.rt60}, {"drr", r.params.drr}}},
                 {"params_estimated", r.params_estimated},
                 {"measured_output_rt60", OptionalJson(measured)},
                 {"seed", req.seed},
                 {"source", a.src},
                 {"output", a.out}};
  if (!a.ref.empty()) report["reference"] = a.ref;
  if (!flag.empty()) report["measured_output_rt60_error"] = flag;
  fs::path report_path = a.report.empty() ? fs::path(out).replace_extension(".json")
                                          : fs::path(a.report);
  WriteTextFile(report_path, report.dump(2) + "\n");
  if (!a.spectrograms.empty()) {
    const fs::path dir(a.spectrograms);
    const std::string stem = out.stem().string();
    WriteSpectrogramPng(dir / (stem + "_source.png"), req.source);
    WriteSpectrogramPng(dir / (stem + "_output.png"), r.output);
  }
  std::printf("params rt60 %.4f s  drr %.2f dB (%s)  measured_output_rt60 %s\n",
              r.params.rt60, r.params.drr, r.params_estimated ? "estimated" : "given",
              measured ? std::to_string(*measured).c_str() : flag.c_str());
  return kExitOk;
}

// ---------------------------------------------------------------------------
// alter

struct AlterArgs {
  std::string manifest;
  std::string root;
  std::string pool;
  std::string variant = "full";
  bool keep_stages = false;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::string spectrograms;
  int jobs = DefaultJobs();
};

void AddAlter(CLI::App& app, AlterArgs& a) {
  CLI::App* sub = app.add_subcommand(
      "alter", "Dereverberate, re-reverberate and add noise to every clip of a manifest");
  sub->add_option("--manifest", a.manifest, "Input manifest (JSON lines)")->required();
  sub->add_option("--root", a.root, "Corpus root for manifest paths");
  sub->add_option("--pool", a.pool, "IR pool directory written by make-pool")->required();
  sub->add_option("--variant", a.variant,
                  "full, dereverb+randomization, dereverb+noise, dereverb, at+randomization+noise")
      ->capture_default_str();
  sub->add_flag("--keep-stages", a.keep_stages, "Also write a_t, a_c, a_r and a_s per clip");
  sub->add_option("--out", a.out, "Output directory")->required();
  sub->add_option("--seed", a.seed, "Base seed; clip i uses seed xor i")->required();
  sub->add_option("--emit-spectrograms", a.spectrograms,
                  "Directory for per-clip stage spectrogram PNGs");
  sub->add_option("--jobs", a.jobs, "Worker threads")->capture_default_str();
}

int RunAlter(const AlterArgs& a) {
  const AlterationVariant variant = ParseAlterationVariant(a.variant);
  const CorpusManifest in = CorpusManifest::Load(a.manifest);
  const fs::path root = ResolveRoot(a.root, a.manifest);
  in.CheckResolvable(root);
  const IrPool pool = LoadIrPool(a.pool);
  const fs::path out_dir(a.out);

  static constexpr const char* kStages[] = {"a_t", "a_c", "a_r", "a_s"};
  struct ClipResult {
    ManifestEntry entry;
    std::array<std::optional<double>, 4> stage_rt60;
  };
  std::vector<ClipResult> results(in.entries.size());
  ParallelFor(in.entries.size(), a.jobs, [&](std::size_t i) {
    const ManifestEntry& e = in.entries[i];
    const std::uint64_t seed = ClipSeed(*a.seed, i);
    const Waveform a_t = ReadWav(root / e.wav_path);
    const AlterationTrace tr = Alter(a_t, pool, e.split, seed);
    const Waveform output = variant == AlterationVariant::kFull
                                ? tr.a_s
                                : AblationVariant(a_t, pool, e.split, seed, variant);
    ManifestEntry o = e;
    o.wav_path = "altered/" + e.id + ".wav";
    WriteWavFile(out_dir / o.wav_path, output);
    o.duration_s = output.duration_seconds();
    std::string flag;
    o.blind_rt60 = TryBlindRt60(output, &flag);
    if (!flag.empty()) o.tags["blind_rt60_error"] = flag;
    o.tags["variant"] = std::string(AlterationVariantName(variant));
    o.tags["sampled_ir_id"] = tr.sampled_ir_id;
    o.tags["snr_db"] = std::to_string(tr.snr_db);
    o.tags["seed"] = std::to_string(seed);
    o.tags["source_path"] = e.wav_path;
    const Waveform* stages[] = {&tr.a_t, &tr.a_c, &tr.a_r, &tr.a_s};
    ClipResult& r = results[i];
    for (int s = 0; s < 4; ++s) {
      r.stage_rt60[s] = TryBlindRt60(*stages[s]);
      const std::string name = e.id + "_" + kStages[s];
      if (a.keep_stages) WriteWavFile(out_dir / "stages" / (name + ".wav"), *stages[s]);
      if (!a.spectrograms.empty()) {
        WriteSpectrogramPng(fs::path(a.spectrograms) / (name + ".png"), *stages[s]);
      }
    }
    r.entry = std::move(o);
  });

  CorpusManifest out;
  for (auto& r : results) out.entries.push_back(r.entry);
  out.Save(out_dir / "manifest.jsonl");
  std::printf("%-6s %18s %8s\n", "stage", "mean_blind_rt60_s", "clips");
  for (int s = 0; s < 4; ++s) {
    double sum = 0.0;
    int n = 0;
    for (const auto& r : results) {
      if (r.stage_rt60[s]) {
        sum += *r.stage_rt60[s];
        ++n;
      }
    }
    std::printf("%-6s %18.4f %8d\n", kStages[s], n ? sum / n : 0.0, n);
  }
  std::printf("variant %s: wrote %zu clips to %s\n",
              std::string(AlterationVariantName(variant)).c_str(), out.entries.size(),
              (out_dir / "manifest.jsonl").c_str());
  return kExitOk;
}

// ---------------------------------------------------------------------------
// eval

struct EvalArgs {
  std::string outputs;
  std::string targets;
  std::string outputs_root;
  std::string targets_root;
  std::string out;
  std::string spectrograms;
  int jobs = DefaultJobs();
};

void AddEval(CLI::App& app, EvalArgs& a) {
  CLI::App* sub = app.add_subcommand("eval", "Score output clips against target clips");
  sub->add_option("--outputs", a.outputs, "Manifest of generated clips")->required();
  sub->add_option("--targets", a.targets, "Manifest of target clips")->required();
  sub->add_option("--outputs-root", a.outputs_root, "Corpus root for --outputs paths");
  sub->add_option("--targets-root", a.targets_root, "Corpus root for --targets paths");
  sub->add_option("--out", a.out, "Directory for report.csv and aggregates.json")->required();
  sub->add_option("--emit-spectrograms", a.spectrograms,
                  "Directory for per-clip output/target spectrogram PNGs");
  sub->add_option("--jobs", a.jobs, "Worker threads")->capture_default_str();
}

int RunEval(const EvalArgs& a) {
  const CorpusManifest outputs = CorpusManifest::Load(a.outputs);
  const CorpusManifest targets = CorpusManifest::Load(a.targets);
  for (const auto& e : outputs.entries) {
    if (!targets.Find(e.id)) {
      throw Error(ErrorCode::kMisaligned, "clip '" + e.id + "' is missing from the targets");
    }
  }
  for (const auto& e : targets.entries) {
    if (!outputs.Find(e.id)) {
      throw Error(ErrorCode::kMisaligned, "clip '" + e.id + "' is missing from the outputs");
    }
  }
  const fs::path out_root = ResolveRoot(a.outputs_root, a.outputs);
  const fs::path tgt_root = ResolveRoot(a.targets_root, a.targets);
  outputs.CheckResolvable(out_root);
  targets.CheckResolvable(tgt_root);

  EvalReport report;
  report.rows.resize(outputs.entries.size());
  ParallelFor(outputs.entries.size(), a.jobs, [&](std::size_t i) {
    const ManifestEntry& e = outputs.entries[i];
    const Waveform out = ReadWav(out_root / e.wav_path);
    const Waveform tgt = ReadWav(tgt_root / targets.Find(e.id)->wav_path);
    report.rows[i] = EvaluatePair(e.id, out, tgt);
    if (!a.spectrograms.empty()) {
      WriteSpectrogramPng(fs::path(a.spectrograms) / (e.id + "_output.png"), out);
      WriteSpectrogramPng(fs::path(a.spectrograms) / (e.id + "_target.png"), tgt);
    }
  });
  report.Aggregate();
  const fs::path dir(a.out);
  WriteTextFile(dir / "report.csv", report.ToCsv());
  WriteTextFile(dir / "aggregates.json", report.AggregatesJson() + "\n");
  auto line = [](const char* name, const MetricSummary& s) {
    std::printf("%-14s mean %.6g  median %.6g  se %.3g  n %d\n", name, s.mean, s.median,
                s.std_error, s.count);
  };
  line("stft_distance", report.stft_distance);
  line("rte_seconds", report.rte_seconds);
  line("mel_l1", report.mel_l1);
  line("mrstft", report.mrstft);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// kernel-check

struct KernelArgs {
  std::uint64_t seed = 0;
  std::vector<int> lengths{40960};
};

void AddKernelCheck(CLI::App& app, KernelArgs& a) {
  CLI::App* sub = app.add_subcommand(
      "kernel-check", "Self-test the attention kernel and the feature codec");
  sub->add_option("--seed", a.seed, "Seed for the random weights and inputs")
      ->capture_default_str();
  sub->add_option("--lengths", a.lengths, "Waveform lengths for the codec checks")
      ->delimiter(',')
      ->capture_default_str();
}

int RunKernelCheck(const KernelArgs& a) {
  KernelCheckOptions opts;
  opts.seed = a.seed;
  opts.lengths = a.lengths;
  const std::vector<KernelCheck> checks = RunKernelChecks(opts);
  std::vector<std::string> failing;
  for (const KernelCheck& c : checks) {
    std::printf("%s: %s (%s)\n", c.name.c_str(), c.pass ? "PASS" : "FAIL", c.detail.c_str());
    if (!c.pass) failing.push_back(c.name);
  }
  if (failing.empty()) return kExitOk;
  std::fprintf(stderr, "failing checks:\n");
  for (const auto& f : failing) std::fprintf(stderr, "  %s\n", f.c_str());
  return kExitFailure;
}

// ---------------------------------------------------------------------------
// synth-speech, make-pool, pair, filter, analyze

struct SynthArgs {
  std::optional<std::uint64_t> seed;
  double seconds = 4.0;
  std::string out;
};

void AddSynth(CLI::App& app, SynthArgs& a) {
  CLI::App* sub = app.add_subcommand("synth-speech", "Write a synthetic speech-like test clip");
  sub->add_option("--seed", a.seed, "Seed")->required();
  sub->add_option("--seconds", a.seconds, "Duration")->capture_default_str();
  sub->add_option("--out", a.out, "Output WAV")->required();
}

int RunSynth(const SynthArgs& a) {
  const fs::path out(a.out);
  WriteWavFile(out, SynthesizeSpeech(*a.seed, a.seconds));
  std::printf("wrote %s\n", out.c_str());
  return kExitOk;
}

struct PoolArgs {
  IrPoolSpec spec;
  std::string rt60_range = "0.2:1.0";
  std::optional<std::uint64_t> seed;
  std::string out;
};

void AddMakePool(CLI::App& app, PoolArgs& a) {
  CLI::App* sub = app.add_subcommand("make-pool", "Simulate a train/val/test IR pool");
  sub->add_option("--train", a.spec.train, "Train IRs")->capture_default_str();
  sub->add_option("--val", a.spec.val, "Validation IRs")->capture_default_str();
  sub->add_option("--test", a.spec.test, "Test IRs")->capture_default_str();
  sub->add_option("--rt60", a.rt60_range, "Sabine RT60 range lo:hi")->capture_default_str();
  sub->add_option("--length", a.spec.ir_length_s, "IR length in seconds")->capture_default_str();
  sub->add_option("--seed", a.seed, "Seed")->required();
  sub->add_option("--out", a.out, "Output directory")->required();
}

int RunMakePool(PoolArgs a) {
  std::tie(a.spec.rt60_lo, a.spec.rt60_hi) = ParseRange(a.rt60_range);
  const IrPool pool = GenerateIrPool(a.spec, *a.seed);
  SaveIrPool(pool, a.out);
  std::printf("wrote %zu IRs to %s\n", pool.entries.size(), a.out.c_str());
  return kExitOk;
}

struct PairArgs {
  std::string manifest;
  std::string root;
  std::string pool;
  std::optional<std::uint64_t> seed;
  std::string out;
};

void AddPair(CLI::App& app, PairArgs& a) {
  CLI::App* sub = app.add_subcommand(
      "pair", "Build (clean, reverberant) training pairs from clean clips and an IR pool");
  sub->add_option("--manifest", a.manifest, "Clean-clip manifest")->required();
  sub->add_option("--root", a.root, "Corpus root for manifest paths");
  sub->add_option("--pool", a.pool, "IR pool directory")->required();
  sub->add_option("--seed", a.seed, "Seed")->required();
  sub->add_option("--out", a.out, "Output directory")->required();
}

int RunPair(const PairArgs& a) {
  const CorpusManifest clean = CorpusManifest::Load(a.manifest);
  const fs::path root = ResolveRoot(a.root, a.manifest);
  clean.CheckResolvable(root);
  const CorpusManifest out =
      BuildPairedCorpus(clean, root, LoadIrPool(a.pool), *a.seed, a.out);
  out.Save(fs::path(a.out) / "manifest.jsonl");
  std::printf("wrote %zu pairs to %s\n", out.entries.size(), a.out.c_str());
  return kExitOk;
}

struct FilterArgs {
  std::string manifest;
  std::string out;
  FilterConfig config;
  bool seeded = false;
};

void AddFilter(CLI::App& app, FilterArgs& a) {
  CLI::App* sub = app.add_subcommand(
      "filter", "Drop near-anechoic clips and balance the RT60 distribution");
  sub->add_option("--manifest", a.manifest, "Manifest with blind_rt60 filled in")->required();
  sub->add_option("--out", a.out, "Output manifest")->required();
  sub->add_option("--min-rt60", a.config.min_rt60, "Minimum RT60 in seconds")
      ->capture_default_str();
  sub->add_option("--bin-width", a.config.bin_width, "RT60 bin width in seconds")
      ->capture_default_str();
  sub->add_option("--cap-factor", a.config.cap_factor, "Bin cap as a multiple of the median bin")
      ->capture_default_str();
  sub->add_option("--seed", a.config.seed, "Seed for subsampling")->required();
}

int RunFilter(const FilterArgs& a) {
  const CorpusManifest in = CorpusManifest::Load(a.manifest);
  const CorpusManifest out = FilterCorpus(in, a.config);
  out.Save(a.out);
  std::printf("kept %zu of %zu clips\n", out.entries.size(), in.entries.size());
  return kExitOk;
}

struct AnalyzeArgs {
  std::string wav;
  std::string ir;
  std::string manifest;
  std::string root;
  std::string out;
  int jobs = DefaultJobs();
};

void AddAnalyze(CLI::App& app, AnalyzeArgs& a) {
  CLI::App* sub = app.add_subcommand(
      "analyze", "Measure RT60/DRR of an IR, estimate them blind from audio, or fill a manifest");
  auto* wav = sub->add_option("--wav", a.wav, "Reverberant audio: print blind RT60 and DRR");
  auto* ir = sub->add_option("--ir", a.ir, "Impulse response: print Schroeder RT60 and DRR");
  auto* man = sub->add_option("--manifest", a.manifest,
                              "Manifest whose blind_rt60 and duration_s are filled in");
  wav->excludes(ir)->excludes(man);
  ir->excludes(man);
  sub->add_option("--root", a.root, "Corpus root for manifest paths");
  sub->add_option("--out", a.out, "Output manifest (with --manifest)");
  sub->add_option("--jobs", a.jobs, "Worker threads")->capture_default_str();
}

int RunAnalyze(const AnalyzeArgs& a) {
  if (!a.wav.empty()) {
    const Waveform w = ReadWav(a.wav);
    const double rt60 = BlindRt60(w);
    std::printf("%s\n", json{{"blind_rt60", rt60}, {"blind_drr", BlindDrr(w, rt60)}}.dump().c_str());
    return kExitOk;
  }
  if (!a.ir.empty()) {
    ImpulseResponse ir;
    ir.wave = ReadWav(a.ir);
    const auto peak = std::max_element(
        ir.wave.samples.begin(), ir.wave.samples.end(),
        [](double x, double y) { return std::abs(x) < std::abs(y); });
    ir.direct_index = static_cast<std::size_t>(peak - ir.wave.samples.begin());
    std::printf("%s\n", json{{"rt60", MeasureRt60(ir.wave)},
                             {"drr", Drr(ir).drr_db},
                             {"direct_index", ir.direct_index}}
                            .dump()
                            .c_str());
    return kExitOk;
  }
  if (a.manifest.empty() || a.out.empty()) {
    throw UsageError("analyze needs --wav, --ir, or --manifest with --out");
  }
  CorpusManifest m = CorpusManifest::Load(a.manifest);
  const fs::path root = ResolveRoot(a.root, a.manifest);
  m.CheckResolvable(root);
  ParallelFor(m.entries.size(), a.jobs, [&](std::size_t i) {
    ManifestEntry& e = m.entries[i];
    const Waveform w = ReadWav(root / e.wav_path);
    e.duration_s = w.duration_seconds();
    std::string flag;
    e.blind_rt60 = TryBlindRt60(w, &flag);
    if (!flag.empty()) e.tags["blind_rt60_error"] = flag;
  });
  m.Save(a.out);
  std::printf("analyzed %zu clips\n", m.entries.size());
  return kExitOk;
}

}  // namespace

int RunCli(int argc, char** argv) {
  CLI::App app{"acmatch: room acoustics matching, alteration and evaluation"};
  app.require_subcommand(1);
  SimulateArgs simulate;
  MatchArgs match;
  AlterArgs alter;
  EvalArgs eval;
  KernelArgs kernel;
  SynthArgs synth;
  PoolArgs pool;
  PairArgs pair;
  FilterArgs filter;
  AnalyzeArgs analyze;
  AddSimulate(app, simulate);
  AddMatch(app, match);
  AddAlter(app, alter);
  AddEval(app, eval);
  AddKernelCheck(app, kernel);
  AddSynth(app, synth);
  AddMakePool(app, pool);
  AddPair(app, pair);
  AddFilter(app, filter);
  AddAnalyze(app, analyze);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  const CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  try {
    if (name == "simulate") return RunSimulate(simulate);
    if (name == "match") return RunMatch(match);
    if (name == "alter") return RunAlter(alter);
    if (name == "eval") return RunEval(eval);
    if (name == "kernel-check") return RunKernelCheck(kernel);
    if (name == "synth-speech") return RunSynth(synth);
    if (name == "make-pool") return RunMakePool(pool);
    if (name == "pair") return RunPair(pair);
    if (name == "filter") return RunFilter(filter);
    if (name == "analyze") return RunAnalyze(analyze);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "acmatch %s: usage error: %s\nRun 'acmatch %s --help' for usage.\n",
                 name.c_str(), e.what(), name.c_str());
    return kExitUsage;
  } catch (const Error& e) {
    // what() already leads with the code name.
    std::fprintf(stderr, "acmatch %s: error: %s\n", name.c_str(), e.what());
    return kExitFailure;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "acmatch %s: error: %s\n", name.c_str(), e.what());
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace acmatch::cli
