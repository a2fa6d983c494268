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


// Python bindings. Audio crosses the boundary as 1-D float64 numpy arrays at
// 16 kHz; library errors surface as acmatch.Error.

#include <optional>
#include <string>
#include <vector>

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "acmatch/acoustic_analysis.h"
#include "acmatch/alteration.h"
#include "acmatch/errors.h"
#include "acmatch/eval_metrics.h"
#include "acmatch/kernel_check.h"
#include "acmatch/reverb_match.h"
#include "acmatch/rir_sim.h"
#include "acmatch/speech_synth.h"
#include "acmatch/wav_io.h"

namespace py = pybind11;

namespace acmatch {
namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

Waveform ToWaveform(const Array& a, int sample_rate = kSampleRate) {
  if (a.ndim() != 1) throw Error(ErrorCode::kBadDim, "expected a 1-D array");
  return Waveform(std::vector<double>(a.data(), a.data() + a.size()), sample_rate);
}

Array ToArray(const Waveform& w) {
  Array out(static_cast<py::ssize_t>(w.size()));
  std::copy(w.samples.begin(), w.samples.end(), out.mutable_data());
  return out;
}

py::dict ParamsDict(const AcousticParams& p) {
  py::dict d;
  d["rt60"] = p.rt60;
  d["drr"] = p.drr;
  return d;
}

}  // namespace
}  // namespace acmatch

PYBIND11_MODULE(_core, m) {
  using namespace acmatch;
  m.doc() = "Room acoustics matching, analysis and evaluation.";
  m.attr("SAMPLE_RATE") = kSampleRate;

  // Kept alive by the module; translator state must not be destroyed at exit.
  static const py::handle error_type =
      py::exception<Error>(m, "Error", PyExc_RuntimeError).release();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = error_type(e.what());
      exc.attr("code") = std::string(ErrorCodeName(e.code()));
      PyErr_SetObject(error_type.ptr(), exc.ptr());
    }
  });

  py::class_<ShoeboxRoom>(m, "Room")
      .def(py::init<>())
      .def(py::init([](Vec3 dims, std::array<double, 6> absorption, Vec3 source,
                       Vec3 receiver, double speed_of_sound, int max_order) {
             return ShoeboxRoom{dims, absorption, source, receiver, speed_of_sound,
                                max_order};
           }),
           py::arg("dims"), py::arg("absorption"), py::arg("source"), py::arg("receiver"),
           py::arg("speed_of_sound") = 343.0, py::arg("max_order") = 60)
      .def_readwrite("dims", &ShoeboxRoom::dims)
      .def_readwrite("absorption", &ShoeboxRoom::absorption)
      .def_readwrite("source", &ShoeboxRoom::source)
      .def_readwrite("receiver", &ShoeboxRoom::receiver)
      .def_readwrite("speed_of_sound", &ShoeboxRoom::speed_of_sound)
      .def_readwrite("max_order", &ShoeboxRoom::max_order)
      .def("validate", &ShoeboxRoom::Validate)
      .def("sabine_rt60", &SabineRt60);

  py::class_<ImpulseResponse>(m, "ImpulseResponse")
      .def(py::init([](const Array& samples, std::size_t direct_index) {
             return ImpulseResponse{ToWaveform(samples), direct_index};
           }),
           py::arg("samples"), py::arg("direct_index"))
      .def_property_readonly("samples",
                             [](const ImpulseResponse& ir) { return ToArray(ir.wave); })
      .def_readonly("direct_index", &ImpulseResponse::direct_index)
      .def("aligned", [](const ImpulseResponse& ir) { return ToArray(AlignedToDirectPath(ir)); });

  // Room simulation.
  m.def("simulate_rir", &SimulateRir, py::arg("room"), py::arg("sample_rate") = kSampleRate,
        py::arg("ir_length_s") = 1.0, py::arg("highpass_hz") = kRirHighPassHz);
  m.def("sabine_rt60", &SabineRt60, py::arg("room"));
  m.def("sample_random_room", &SampleRandomRoom, py::arg("seed"), py::arg("rt60_lo"),
        py::arg("rt60_hi"));

  // Analysis.
  m.def(
      "measure_rt60", [](const Array& ir) { return MeasureRt60(ToWaveform(ir)); },
      py::arg("ir"));
  m.def(
      "drr", [](const ImpulseResponse& ir) { return Drr(ir).drr_db; }, py::arg("ir"));
  m.def(
      "blind_rt60", [](const Array& x) { return BlindRt60(ToWaveform(x)); }, py::arg("audio"));
  m.def(
      "blind_drr",
      [](const Array& x, std::optional<double> rt60_hint) {
        const Waveform w = ToWaveform(x);
        return BlindDrr(w, rt60_hint ? *rt60_hint : BlindRt60(w));
      },
      py::arg("audio"), py::arg("rt60_hint") = py::none());

  // Matching.
  m.def(
      "synthesize_ir",
      [](double rt60, double drr, double length_s, std::uint64_t seed) {
        return SynthesizeIr({rt60, drr}, length_s, kSampleRate, seed);
      },
      py::arg("rt60"), py::arg("drr"), py::arg("length_s"), py::arg("seed"));
  m.def(
      "match",
      [](const Array& source, std::optional<Array> reference, std::optional<double> rt60,
         std::optional<double> drr, std::uint64_t seed) {
        MatchRequest req;
        req.source = ToWaveform(source);
        req.seed = seed;
        if (reference) {
          req.reference = ToWaveform(*reference);
        } else if (rt60 && drr) {
          req.reference = AcousticParams{*rt60, *drr};
        } else {
          throw Error(ErrorCode::kInvalidArgument, "pass reference= or both rt60= and drr=");
        }
        const MatchResult r = Match(req);
        py::dict d;
        d["output"] = ToArray(r.output);
        d["params"] = ParamsDict(r.params);
        d["params_estimated"] = r.params_estimated;
        d["ir"] = r.ir;
        return d;
      },
      py::arg("source"), py::kw_only(), py::arg("reference") = py::none(),
      py::arg("rt60") = py::none(), py::arg("drr") = py::none(), py::arg("seed"));
  m.def(
      "dereverberate",
      [](const Array& x) {
        const DereverbResult r = Dereverberate(ToWaveform(x));
        return py::make_tuple(ToArray(r.output), r.rt60_estimate, r.passthrough);
      },
      py::arg("audio"));

  // Alteration.
  py::class_<IrPool>(m, "IrPool")
      .def("__len__", [](const IrPool& p) { return p.entries.size(); })
      .def_property_readonly("ids", [](const IrPool& p) {
        std::vector<std::string> ids;
        for (const auto& e : p.entries) ids.push_back(e.id);
        return ids;
      });
  m.def(
      "generate_ir_pool",
      [](std::uint64_t seed, int train, int val, int test, double rt60_lo, double rt60_hi,
         double ir_length_s) {
        return GenerateIrPool({train, val, test, rt60_lo, rt60_hi, ir_length_s}, seed);
      },
      py::arg("seed"), py::arg("train") = 20, py::arg("val") = 5, py::arg("test") = 5,
      py::arg("rt60_lo") = 0.2, py::arg("rt60_hi") = 1.0, py::arg("ir_length_s") = 1.5);
  m.def(
      "alter",
      [](const Array& a_t, const IrPool& pool, const std::string& split, std::uint64_t seed) {
        const AlterationTrace t = Alter(ToWaveform(a_t), pool, split, seed);
        py::dict d;
        d["a_t"] = ToArray(t.a_t);
        d["a_c"] = ToArray(t.a_c);
        d["a_r"] = ToArray(t.a_r);
        d["a_s"] = ToArray(t.a_s);
        d["sampled_ir_id"] = t.sampled_ir_id;
        d["snr_db"] = t.snr_db;
        d["dereverb_passthrough"] = t.dereverb_passthrough;
        return d;
      },
      py::arg("a_t"), py::arg("pool"), py::arg("split"), py::arg("seed"));
  m.def(
      "ablation_variant",
      [](const Array& a_t, const IrPool& pool, const std::string& split, std::uint64_t seed,
         const std::string& variant) {
        return ToArray(AblationVariant(ToWaveform(a_t), pool, split, seed,
                                       ParseAlterationVariant(variant)));
      },
      py::arg("a_t"), py::arg("pool"), py::arg("split"), py::arg("seed"), py::arg("variant"));

  // Metrics.
  m.def(
      "stft_distance",
      [](const Array& a, const Array& b) { return StftDistance(ToWaveform(a), ToWaveform(b)); },
      py::arg("a"), py::arg("b"));
  m.def(
      "rte",
      [](const Array& out, const Array& tgt) { return Rte(ToWaveform(out), ToWaveform(tgt)); },
      py::arg("output"), py::arg("target"));
  m.def(
      "mel_l1", [](const Array& a, const Array& b) { return MelL1(ToWaveform(a), ToWaveform(b)); },
      py::arg("a"), py::arg("b"));
  m.def(
      "mrstft",
      [](const Array& a, const Array& b) {
        return MultiResolutionStftLoss(ToWaveform(a), ToWaveform(b)).value;
      },
      py::arg("a"), py::arg("b"));
  m.def(
      "evaluate_pair",
      [](const std::string& id, const Array& out, const Array& tgt) {
        const EvalRow r = EvaluatePair(id, ToWaveform(out), ToWaveform(tgt));
        py::dict d;
        d["clip_id"] = r.clip_id;
        d["stft_distance"] = r.stft_distance;
        d["rte_seconds"] = r.rte_seconds;
        d["mel_l1"] = r.mel_l1;
        d["mrstft"] = r.mrstft;
        d["flags"] = r.flags;
        return d;
      },
      py::arg("clip_id"), py::arg("output"), py::arg("target"));

  // Utilities.
  m.def(
      "synthesize_speech",
      [](std::uint64_t seed, double seconds) { return ToArray(SynthesizeSpeech(seed, seconds)); },
      py::arg("seed"), py::arg("seconds"));
  m.def(
      "read_wav",
      [](const std::filesystem::path& path) {
        const Waveform w = ReadWav(path);
        return py::make_tuple(ToArray(w), w.sample_rate);
      },
      py::arg("path"));
  m.def(
      "write_wav",
      [](const std::filesystem::path& path, const Array& x, int sample_rate) {
        WriteWav(path, ToWaveform(x, sample_rate), WavEncoding::kFloat32);
      },
      py::arg("path"), py::arg("audio"), py::arg("sample_rate") = kSampleRate);
  m.def(
      "kernel_checks",
      [](std::uint64_t seed, std::vector<int> lengths) {
        KernelCheckOptions opts;
        opts.seed = seed;
        opts.lengths = std::move(lengths);
        py::list out;
        for (const KernelCheck& c : RunKernelChecks(opts)) {
          py::dict d;
          d["name"] = c.name;
          d["value"] = c.value;
          d["threshold"] = c.threshold;
          d["pass"] = c.pass;
          d["detail"] = c.detail;
          out.append(d);
        }
        return out;
      },
      py::arg("seed") = 0, py::arg("lengths") = std::vector<int>{40960});
}
