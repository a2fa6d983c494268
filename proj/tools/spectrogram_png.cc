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

#include "spectrogram_png.h"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <vector>

#include "acmatch/dsp.h"
#include "acmatch/errors.h"

namespace acmatch::cli {
namespace {

constexpr double kRangeDb = 80.0;
constexpr int kRowsPerBin = 2;

struct FileCloser {
  void operator()(std::FILE* f) const { std::fclose(f); }
};

}  // namespace

void WriteSpectrogramPng(const std::filesystem::path& path, const Waveform& w,
                         double max_hz) {
  const StftParams params;
  const Spectrogram spec = Stft(w, params);
  const double bin_hz = static_cast<double>(w.sample_rate) / params.fft_size;
  const int bins = std::min(spec.num_bins(),
                            static_cast<int>(std::floor(max_hz / bin_hz)) + 1);
  const int frames = spec.num_frames();

  std::vector<double> db(static_cast<std::size_t>(frames) * bins);
  double peak = -HUGE_VAL;
  for (int f = 0; f < frames; ++f) {
    for (int k = 0; k < bins; ++k) {
      const double v = 20.0 * std::log10(spec.magnitude(f, k) + 1e-12);
      db[static_cast<std::size_t>(f) * bins + k] = v;
      peak = std::max(peak, v);
    }
  }

  const int height = bins * kRowsPerBin;
  std::vector<png_byte> pixels(static_cast<std::size_t>(frames) * height);
  for (int y = 0; y < height; ++y) {
    const int k = bins - 1 - y / kRowsPerBin;  // low frequencies at the bottom
    for (int f = 0; f < frames; ++f) {
      const double v = db[static_cast<std::size_t>(f) * bins + k];
      const double level = std::clamp((v - (peak - kRangeDb)) / kRangeDb, 0.0, 1.0);
      pixels[static_cast<std::size_t>(y) * frames + f] =
          static_cast<png_byte>(std::lround(255.0 * level));
    }
  }

  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::unique_ptr<std::FILE, FileCloser> file(std::fopen(path.c_str(), "wb"));
  if (!file) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  png_structp png =
      png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_write_struct(&png, &info);
    throw Error(ErrorCode::kIo, "libpng initialization failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw Error(ErrorCode::kIo, "libpng failed writing " + path.string());
  }
  png_init_io(png, file.get());
  png_set_IHDR(png, info, frames, height, 8, PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int y = 0; y < height; ++y) {
    png_write_row(png, pixels.data() + static_cast<std::size_t>(y) * frames);
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

}  // namespace acmatch::cli
