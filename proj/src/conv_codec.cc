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

#include "acmatch/conv_codec.h"

#include <cmath>
#include <string>

#include "acmatch/errors.h"

namespace acmatch {

int ConvStackSpec::TotalFactor() const {
  int f = 1;
  for (int s : strides) f *= s;
  return f;
}

std::vector<int> ConvStackSpec::Channels() const {
  std::vector<int> c{embed_channels};
  for (std::size_t i = 0; i < strides.size(); ++i) c.push_back(c.back() * 2);
  return c;
}

void ConvStackSpec::Validate() const {
  if (kernel_sizes.size() != strides.size() || strides.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "kernel and stride lists must match");
  }
  for (std::size_t i = 0; i < strides.size(); ++i) {
    const int d = kernel_sizes[i] - strides[i];
    if (strides[i] <= 0 || d < 0 || d % 2 != 0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "layer " + std::to_string(i) +
                      " needs kernel >= stride with an even difference");
    }
  }
  if (embed_kernel % 2 != 1 || embed_channels <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "embedding kernel must be odd");
  }
}

int Conv1dLayer::OutputLength(int input_length) const {
  return (input_length + 2 * padding() - kernel) / stride + 1;
}

Matrix Conv1dLayer::Forward(const Matrix& x) const {
  if (x.cols() != in_channels) {
    throw Error(ErrorCode::kShapeMismatch,
                "conv layer expects " + std::to_string(in_channels) +
                    " channels, got " + std::to_string(x.cols()));
  }
  const int n_in = static_cast<int>(x.rows());
  const int n_out = OutputLength(n_in);
  const int pad = padding();
  Matrix cols = Matrix::Zero(n_out, kernel * in_channels);
  for (int i = 0; i < n_out; ++i) {
    for (int j = 0; j < kernel; ++j) {
      const int t = i * stride - pad + j;
      if (t < 0 || t >= n_in) continue;
      cols.block(i, j * in_channels, 1, in_channels) = x.row(t);
    }
  }
  Matrix y = cols * weight.transpose();
  y.rowwise() += bias.transpose();
  return y;
}

Matrix Conv1dLayer::Adjoint(const Matrix& y, int input_length) const {
  if (y.cols() != out_channels) {
    throw Error(ErrorCode::kShapeMismatch,
                "transposed conv expects " + std::to_string(out_channels) +
                    " channels, got " + std::to_string(y.cols()));
  }
  const Matrix cols = y * weight;
  const int pad = padding();
  Matrix x = Matrix::Zero(input_length, in_channels);
  for (int i = 0; i < static_cast<int>(y.rows()); ++i) {
    for (int j = 0; j < kernel; ++j) {
      const int t = i * stride - pad + j;
      if (t < 0 || t >= input_length) continue;
      x.row(t) += cols.block(i, j * in_channels, 1, in_channels);
    }
  }
  return x;
}

namespace {

Conv1dLayer MakeLayer(int in, int out, int kernel, int stride,
                      std::uint64_t seed, bool random, bool zero_bias) {
  Conv1dLayer l;
  l.in_channels = in;
  l.out_channels = out;
  l.kernel = kernel;
  l.stride = stride;
  if (random) {
    const double scale = 1.0 / std::sqrt(static_cast<double>(in * kernel));
    l.weight = RandomMatrix(out, kernel * in, scale, seed);
    l.bias = zero_bias ? Vector::Zero(out)
                       : Vector(RandomMatrix(out, 1, 0.1, seed + 1));
  } else {
    l.weight = Matrix::Zero(out, kernel * in);
    l.bias = Vector::Zero(out);
  }
  return l;
}

ConvEncoder BuildEncoder(const ConvStackSpec& spec, std::uint64_t seed,
                         bool random, bool zero_bias) {
  spec.Validate();
  ConvEncoder e;
  e.spec = spec;
  const std::vector<int> ch = spec.Channels();
  e.embed = MakeLayer(1, ch[0], spec.embed_kernel, 1, seed, random, zero_bias);
  for (std::size_t i = 0; i < spec.strides.size(); ++i) {
    e.layers.push_back(MakeLayer(ch[i], ch[i + 1], spec.kernel_sizes[i],
                                 spec.strides[i], seed + 16 * (i + 1), random,
                                 zero_bias));
  }
  return e;
}

}  // namespace

ConvEncoder ConvEncoder::Random(const ConvStackSpec& spec, std::uint64_t seed,
                                bool zero_bias) {
  return BuildEncoder(spec, seed, true, zero_bias);
}

ConvEncoder ConvEncoder::Zero(const ConvStackSpec& spec) {
  return BuildEncoder(spec, 0, false, true);
}

ConvDecoder TieDecoder(const ConvEncoder& encoder) {
  ConvDecoder d;
  d.spec = encoder.spec;
  d.layers = encoder.layers;
  d.embed = encoder.embed;
  for (const auto& l : d.layers) d.layer_bias.push_back(Vector::Zero(l.in_channels));
  d.embed_bias = Vector::Zero(1);
  return d;
}

ConvDecoder ConvDecoder::Zero(const ConvStackSpec& spec) {
  return TieDecoder(ConvEncoder::Zero(spec));
}

FeatureSequence ConvEncode(const Waveform& w, const ConvEncoder& encoder) {
  const int factor = encoder.spec.TotalFactor();
  if (w.size() == 0 || w.size() % factor != 0) {
    throw Error(ErrorCode::kLengthNotAligned,
                "input length " + std::to_string(w.size()) +
                    " is not a multiple of " + std::to_string(factor));
  }
  Matrix x = Eigen::Map<const Eigen::VectorXd>(w.samples.data(),
                                               static_cast<Eigen::Index>(w.size()));
  x = encoder.embed.Forward(x);
  for (const auto& layer : encoder.layers) x = layer.Forward(x);
  return x;
}

Waveform ConvDecode(const FeatureSequence& features, const ConvDecoder& decoder,
                    int sample_rate) {
  if (decoder.layers.empty() ||
      features.cols() != decoder.layers.back().out_channels) {
    throw Error(ErrorCode::kShapeMismatch,
                "feature dim does not match the decoder");
  }
  Matrix y = features;
  for (std::size_t i = decoder.layers.size(); i-- > 0;) {
    const Conv1dLayer& l = decoder.layers[i];
    y = l.Adjoint(y, static_cast<int>(y.rows()) * l.stride);
    y.rowwise() += decoder.layer_bias[i].transpose();
  }
  y = decoder.embed.Adjoint(y, static_cast<int>(y.rows()));
  y.rowwise() += decoder.embed_bias.transpose();
  std::vector<double> samples(y.data(), y.data() + y.size());
  return Waveform(std::move(samples), sample_rate);
}

}  // namespace acmatch
