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

#ifndef ACMATCH_CONFORMER_H_
#define ACMATCH_CONFORMER_H_

#include <cstdint>
#include <string>
#include <vector>

#include "acmatch/xmodal.h"

namespace acmatch {

enum class CrossAttentionMode {
  kProjected,  // multi-head with per-head projections
  kBilinear,   // projection-free single head, CrossModalAttention
};

struct ConformerWeights {
  int dim = kFeatureDim;
  CrossAttentionMode cross_mode = CrossAttentionMode::kProjected;

  LayerNormWeights ff1_norm;
  FeedForwardWeights ff1;
  LayerNormWeights cross_norm;
  MultiHeadAttentionWeights cross_attn;
  LayerNormWeights self_norm;
  MultiHeadAttentionWeights self_attn;
  // Convolution module: pointwise to 2*dim, GLU, depthwise, norm, swish,
  // pointwise back to dim.
  LayerNormWeights conv_norm;
  Matrix conv_pw1;  // dim x 2dim
  Vector conv_pw1_bias;
  Matrix conv_dw;   // kernel x dim, odd kernel, centered
  Vector conv_dw_bias;
  LayerNormWeights conv_mid_norm;
  Matrix conv_pw2;  // dim x dim
  Vector conv_pw2_bias;
  LayerNormWeights ff2_norm;
  FeedForwardWeights ff2;
  LayerNormWeights final_norm;

  // Residual branches all zero; norms identity.
  static ConformerWeights Identity(int dim, int ff_hidden, int conv_kernel,
                                   int heads = kNumHeads);
  static ConformerWeights Random(int dim, int ff_hidden, int conv_kernel,
                                 std::uint64_t seed, int heads = kNumHeads);

  template <typename F>
  void Visit(F&& f);
};

// Half-step FF, cross-modal attention over V, self-attention, convolution
// module, half-step FF, each residual, then a final layer norm. Output has
// A's shape. Throws kShapeMismatch on inconsistent dims.
FeatureSequence ConformerBlockForward(const FeatureSequence& a,
                                      const FeatureSequence& v,
                                      const ConformerWeights& w);

// Blocks applied in order with the same V.
FeatureSequence ConformerStackForward(const FeatureSequence& a,
                                      const FeatureSequence& v,
                                      const std::vector<ConformerWeights>& w);

template <typename F>
void ConformerWeights::Visit(F&& f) {
  auto nested = [&f](const std::string& prefix, auto& sub) {
    sub.Visit([&](const char* name, auto& t) { f(prefix + "." + name, t); });
  };
  nested("ff1_norm", ff1_norm);
  nested("ff1", ff1);
  nested("cross_norm", cross_norm);
  nested("cross_attn", cross_attn);
  nested("self_norm", self_norm);
  nested("self_attn", self_attn);
  nested("conv_norm", conv_norm);
  f(std::string("conv.pw1"), conv_pw1);
  f(std::string("conv.pw1_bias"), conv_pw1_bias);
  f(std::string("conv.dw"), conv_dw);
  f(std::string("conv.dw_bias"), conv_dw_bias);
  nested("conv_mid_norm", conv_mid_norm);
  f(std::string("conv.pw2"), conv_pw2);
  f(std::string("conv.pw2_bias"), conv_pw2_bias);
  nested("ff2_norm", ff2_norm);
  nested("ff2", ff2);
  nested("final_norm", final_norm);
}

}  // namespace acmatch

#endif  // ACMATCH_CONFORMER_H_
