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

#include "acmatch/kernel_check.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "acmatch/conv_codec.h"
#include "acmatch/errors.h"
#include "acmatch/xmodal.h"

namespace acmatch {
namespace {

// Softmax-weighted sum written as explicit loops.
Matrix LoopAttention(const Matrix& a, const Matrix& v) {
  const Eigen::Index s = a.cols();
  Matrix out = Matrix::Zero(a.rows(), s);
  std::vector<double> w(v.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    double mx = -HUGE_VAL;
    for (Eigen::Index j = 0; j < v.rows(); ++j) {
      double dot = 0.0;
      for (Eigen::Index k = 0; k < s; ++k) dot += a(i, k) * v(j, k);
      w[j] = dot / std::sqrt(static_cast<double>(s));
      mx = std::max(mx, w[j]);
    }
    double z = 0.0;
    for (double& x : w) z += (x = std::exp(x - mx));
    for (Eigen::Index j = 0; j < v.rows(); ++j) {
      for (Eigen::Index k = 0; k < s; ++k) out(i, k) += w[j] / z * v(j, k);
    }
  }
  return out;
}

double Inner(const Matrix& a, const Matrix& b) {
  return (a.array() * b.array()).sum();
}

// Largest |analytic - numeric| / max(1, |numeric|) over central differences
// of f at x.
template <typename F>
double MaxGradError(F&& f, Matrix x, const Matrix& analytic) {
  constexpr double kEps = 1e-5;
  double worst = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double keep = x.data()[i];
    x.data()[i] = keep + kEps;
    const double hi = f(x);
    x.data()[i] = keep - kEps;
    const double lo = f(x);
    x.data()[i] = keep;
    const double numeric = (hi - lo) / (2.0 * kEps);
    worst = std::max(worst, std::abs(analytic.data()[i] - numeric) /
                                std::max(1.0, std::abs(numeric)));
  }
  return worst;
}

struct Dims {
  int la, lv, s;
};

Dims DrawDims(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> len(1, 8);
  std::uniform_int_distribution<int> dim(2, 16);
  return {len(rng), len(rng), dim(rng)};
}

std::string Sci(double v) {
  std::ostringstream os;
  os.precision(2);
  os << std::scientific << v;
  return os.str();
}

KernelCheck Bound(std::string name, double value, double threshold) {
  KernelCheck c{std::move(name), value, threshold, value < threshold, ""};
  c.detail = "max " + Sci(value);
  return c;
}

}  // namespace

std::vector<KernelCheck> RunKernelChecks(const KernelCheckOptions& options) {
  std::vector<KernelCheck> out;
  std::mt19937_64 rng(options.seed);
  auto next_seed = [&rng] { return static_cast<std::uint64_t>(rng()); };

  double forward_err = 0.0;
  bool shapes_ok = true;
  for (int i = 0; i < options.forward_instances; ++i) {
    const Dims d = DrawDims(rng);
    const Matrix a = RandomMatrix(d.la, d.s, 2.0, next_seed());
    const Matrix v = RandomMatrix(d.lv, d.s, 2.0, next_seed());
    const Matrix got = CrossModalAttention(a, v);
    shapes_ok &= got.rows() == d.la && got.cols() == d.s;
    if (shapes_ok) {
      forward_err = std::max(
          forward_err, (got - LoopAttention(a, v)).cwiseAbs().maxCoeff());
    }
  }
  out.push_back({"attention output shape", shapes_ok ? 0.0 : 1.0, 0.5,
                 shapes_ok, shapes_ok ? "L_A x S" : "shape mismatch"});
  out.push_back(Bound("attention forward max abs err < 1e-10", forward_err, 1e-10));

  double grad_err = 0.0;
  for (int i = 0; i < options.gradient_instances; ++i) {
    const Dims d = DrawDims(rng);
    const Matrix a = RandomMatrix(d.la, d.s, 1.0, next_seed());
    const Matrix v = RandomMatrix(d.lv, d.s, 1.0, next_seed());
    const Matrix g = RandomMatrix(d.la, d.s, 1.0, next_seed());
    const AttentionGrads grads = CrossModalAttentionGrad(a, v, g);
    grad_err = std::max(
        grad_err,
        MaxGradError([&](const Matrix& x) { return Inner(g, CrossModalAttention(x, v)); },
                     a, grads.d_a));
    grad_err = std::max(
        grad_err,
        MaxGradError([&](const Matrix& x) { return Inner(g, CrossModalAttention(a, x)); },
                     v, grads.d_v));
  }
  out.push_back(Bound("attention grad max rel err < 1e-4", grad_err, 1e-4));

  const ConvEncoder enc = ConvEncoder::Random(ConvStackSpec(), next_seed(), true);
  const ConvDecoder dec = TieDecoder(enc);
  const int factor = enc.spec.TotalFactor();
  for (int length : options.lengths) {
    if (length <= 0 || length % factor != 0) {
      throw Error(ErrorCode::kLengthNotAligned,
                  "length " + std::to_string(length) + " is not a positive multiple of " +
                      std::to_string(factor));
    }
    std::normal_distribution<double> normal;
    std::vector<double> samples(length);
    for (double& s : samples) s = normal(rng);
    const Waveform x(std::move(samples), kSampleRate);
    const FeatureSequence features = ConvEncode(x, enc);
    const Matrix y = RandomMatrix(static_cast<int>(features.rows()),
                                  static_cast<int>(features.cols()), 1.0, next_seed());
    const Waveform back = ConvDecode(y, dec);
    const bool geometry = features.rows() == length / factor &&
                          static_cast<int>(back.size()) == length;
    KernelCheck shape{"codec length " + std::to_string(length) + " round trip",
                      geometry ? 0.0 : 1.0, 0.5, geometry, ""};
    shape.detail = "encoder length " + std::to_string(features.rows()) + " x " +
                   std::to_string(features.cols()) + ", decoder length " +
                   std::to_string(back.size());
    out.push_back(shape);
    if (!geometry) continue;
    const double lhs = Inner(features, y);
    double rhs = 0.0;
    for (int i = 0; i < length; ++i) rhs += x.samples[i] * back.samples[i];
    out.push_back(Bound("codec tied adjoint rel err < 1e-8 (length " +
                            std::to_string(length) + ")",
                        std::abs(lhs - rhs) / std::max(std::abs(lhs), 1e-300), 1e-8));
  }
  return out;
}

}  // namespace acmatch
