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

#include "acmatch/wav_io.h"

#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "acmatch/errors.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace acmatch {
namespace {

namespace fs = std::filesystem;

fs::path TempPath(const std::string& name) {
  return fs::temp_directory_path() / ("acmatch_wav_" + name);
}

void Put16(std::ofstream& out, std::uint16_t v) {
  out.write(reinterpret_cast<const char*>(&v), 2);
}
void Put32(std::ofstream& out, std::uint32_t v) {
  out.write(reinterpret_cast<const char*>(&v), 4);
}

TEST(WavIoTest, Float32RoundTripIsExactForFloatValues) {
  Waveform w = testing::RandomWaveform(1234, 1, 0.2);
  for (double& v : w.samples) v = static_cast<float>(v);
  const fs::path p = TempPath("f32.wav");
  WriteWav(p, w, WavEncoding::kFloat32);
  const Waveform r = ReadWav(p);
  EXPECT_EQ(r.sample_rate, 16000);
  EXPECT_EQ(r.samples, w.samples);
}

TEST(WavIoTest, Pcm16RoundTripWithinQuantization) {
  const Waveform w = testing::RandomWaveform(500, 2, 0.2);
  const fs::path p = TempPath("pcm.wav");
  WriteWav(p, w, WavEncoding::kPcm16);
  const Waveform r = ReadWav(p);
  ASSERT_EQ(r.size(), w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    EXPECT_NEAR(r.samples[i], std::clamp(w.samples[i], -1.0, 1.0), 1.0 / 32767);
  }
}

TEST(WavIoTest, RejectsStereo) {
  const fs::path p = TempPath("stereo.wav");
  {
    std::ofstream out(p, std::ios::binary);
    out.write("RIFF", 4);
    Put32(out, 36 + 8);
    out.write("WAVEfmt ", 8);
    Put32(out, 16);
    Put16(out, 1);
    Put16(out, 2);
    Put32(out, 16000);
    Put32(out, 16000 * 4);
    Put16(out, 4);
    Put16(out, 16);
    out.write("data", 4);
    Put32(out, 8);
    Put32(out, 0);
    Put32(out, 0);
  }
  try {
    ReadWav(p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kFormat);
  }
}

TEST(WavIoTest, RejectsOtherRates) {
  const fs::path p = TempPath("rate.wav");
  WriteWav(p, Waveform({0.0, 0.1}, 22050));
  try {
    ReadWav(p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kRateMismatch);
  }
}

TEST(WavIoTest, MissingFileIsIoError) {
  try {
    ReadWav(TempPath("does_not_exist.wav"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
}

}  // namespace
}  // namespace acmatch
