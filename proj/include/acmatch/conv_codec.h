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

#ifndef ACMATCH_CONV_CODEC_H_
#define ACMATCH_CONV_CODEC_H_

#include <cstdint>
#include <vector>

#include "acmatch/waveform.h"
#include "acmatch/xmodal.h"

namespace acmatch {

struct ConvStackSpec {
  std::vector<int> kernel_sizes{16, 8, 4, 4};
  std::vector<int> strides{8, 4, 2, 2};
  int embed_channels = 32;
  int embed_kernel = 7;

  // Product of strides.
  int TotalFactor() const;
  // Channels after the embedding and after each strided layer.
  std::vector<int> Channels() const;
  // Throws kInvalidArgument unless the lists have equal length and every
  // (kernel - stride) is even and non-negative.
  void Validate() const;
};

// 1D convolution over time-major activations (time x channels). Padding is
// (kernel - stride) / 2 on each side, so the output length is exactly
// input / stride.
struct Conv1dLayer {
  int in_channels = 0;
  int out_channels = 0;
  int kernel = 1;
  int stride = 1;
  // out_channels x (kernel * in_channels); column j * in_channels + c holds
  // tap j of input channel c.
  Matrix weight;
  Vector bias;

  int padding() const { return (kernel - stride) / 2; }
  int OutputLength(int input_length) const;
  Matrix Forward(const Matrix& x) const;
  // Adjoint of Forward without bias: <Forward0(x), y> == <x, Adjoint(y)>.
  Matrix Adjoint(const Matrix& y, int input_length) const;

  template <typename F>
  void Visit(F&& f) {
    f("weight", weight);
    f("bias", bias);
  }
};

struct ConvEncoder {
  ConvStackSpec spec;
  Conv1dLayer embed;
  std::vector<Conv1dLayer> layers;

  static ConvEncoder Random(const ConvStackSpec& spec, std::uint64_t seed,
                            bool zero_bias = false);
  static ConvEncoder Zero(const ConvStackSpec& spec);
};

// Transposed layers in reverse order, each the adjoint of an encoder layer
// plus its own bias.
struct ConvDecoder {
  ConvStackSpec spec;
  std::vector<Conv1dLayer> layers;  // encoder order; applied in reverse
  Conv1dLayer embed;
  std::vector<Vector> layer_bias;   // bias added after each transposed layer
  Vector embed_bias;

  static ConvDecoder Zero(const ConvStackSpec& spec);
};

// Decoder sharing the encoder's weights with zero biases.
ConvDecoder TieDecoder(const ConvEncoder& encoder);

// Throws kLengthNotAligned unless the length is a multiple of TotalFactor().
FeatureSequence ConvEncode(const Waveform& w, const ConvEncoder& encoder);

// Output length is features.rows() * TotalFactor(). Throws kShapeMismatch on
// a channel mismatch.
Waveform ConvDecode(const FeatureSequence& features, const ConvDecoder& decoder,
                    int sample_rate = kSampleRate);

}  // namespace acmatch

#endif  // ACMATCH_CONV_CODEC_H_
