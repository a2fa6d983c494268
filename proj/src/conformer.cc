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

#include "acmatch/conformer.h"

#include <cmath>

#include "acmatch/errors.h"

namespace acmatch {
namespace {

double Sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

Matrix ConvModule(const ConformerWeights& w, const Matrix& x) {
  const int dim = w.dim;
  Matrix h = LayerNorm(w.conv_norm, x) * w.conv_pw1;
  h.rowwise() += w.conv_pw1_bias.transpose();
  // GLU: first half gated by the sigmoid of the second half.
  Matrix glu = h.leftCols(dim).array() *
               h.rightCols(dim).unaryExpr([](double z) { return Sigmoid(z); })
                   .array();
  const int k = static_cast<int>(w.conv_dw.rows());
  const int half = k / 2;
  const int n = static_cast<int>(x.rows());
  Matrix dw = Matrix::Zero(n, dim);
  for (int t = 0; t < n; ++t) {
    for (int j = 0; j < k; ++j) {
      const int s = t + j - half;
      if (s < 0 || s >= n) continue;
      dw.row(t).array() += glu.row(s).array() * w.conv_dw.row(j).array();
    }
  }
  dw.rowwise() += w.conv_dw_bias.transpose();
  Matrix act = LayerNorm(w.conv_mid_norm, dw)
                   .unaryExpr([](double z) { return z * Sigmoid(z); });
  Matrix out = act * w.conv_pw2;
  out.rowwise() += w.conv_pw2_bias.transpose();
  return out;
}

}  // namespace

ConformerWeights ConformerWeights::Identity(int dim, int ff_hidden,
                                            int conv_kernel, int heads) {
  ConformerWeights w;
  w.dim = dim;
  for (LayerNormWeights* n : {&w.ff1_norm, &w.cross_norm, &w.self_norm,
                              &w.conv_norm, &w.conv_mid_norm, &w.ff2_norm,
                              &w.final_norm}) {
    *n = LayerNormWeights::Identity(dim);
  }
  w.ff1 = FeedForwardWeights::Zero(dim, ff_hidden);
  w.ff2 = FeedForwardWeights::Zero(dim, ff_hidden);
  w.cross_attn = MultiHeadAttentionWeights::Zero(dim, heads);
  w.self_attn = MultiHeadAttentionWeights::Zero(dim, heads);
  w.conv_pw1 = Matrix::Zero(dim, 2 * dim);
  w.conv_pw1_bias = Vector::Zero(2 * dim);
  w.conv_dw = Matrix::Zero(conv_kernel, dim);
  w.conv_dw_bias = Vector::Zero(dim);
  w.conv_pw2 = Matrix::Zero(dim, dim);
  w.conv_pw2_bias = Vector::Zero(dim);
  return w;
}

ConformerWeights ConformerWeights::Random(int dim, int ff_hidden,
                                          int conv_kernel, std::uint64_t seed,
                                          int heads) {
  ConformerWeights w = Identity(dim, ff_hidden, conv_kernel, heads);
  w.ff1 = FeedForwardWeights::Random(dim, ff_hidden, seed);
  w.ff2 = FeedForwardWeights::Random(dim, ff_hidden, seed + 10);
  w.cross_attn = MultiHeadAttentionWeights::Random(dim, heads, seed + 20);
  w.self_attn = MultiHeadAttentionWeights::Random(dim, heads, seed + 30);
  const double s = 1.0 / std::sqrt(static_cast<double>(dim));
  w.conv_pw1 = RandomMatrix(dim, 2 * dim, s, seed + 40);
  w.conv_dw = RandomMatrix(conv_kernel, dim, 1.0 / std::sqrt(conv_kernel),
                           seed + 41);
  w.conv_pw2 = RandomMatrix(dim, dim, s, seed + 42);
  return w;
}

FeatureSequence ConformerBlockForward(const FeatureSequence& a,
                                      const FeatureSequence& v,
                                      const ConformerWeights& w) {
  if (a.cols() != w.dim || v.cols() != w.dim) {
    throw Error(ErrorCode::kShapeMismatch,
                "conformer inputs must have the block's feature dim");
  }
  Matrix x = a;
  x += 0.5 * FeedForward(w.ff1, LayerNorm(w.ff1_norm, x));
  const Matrix q = LayerNorm(w.cross_norm, x);
  if (w.cross_mode == CrossAttentionMode::kBilinear) {
    x += CrossModalAttention(q, v);
  } else {
    x += MultiHeadAttention(w.cross_attn, q, v);
  }
  const Matrix s = LayerNorm(w.self_norm, x);
  x += MultiHeadAttention(w.self_attn, s, s);
  x += ConvModule(w, x);
  x += 0.5 * FeedForward(w.ff2, LayerNorm(w.ff2_norm, x));
  return LayerNorm(w.final_norm, x);
}

FeatureSequence ConformerStackForward(const FeatureSequence& a,
                                      const FeatureSequence& v,
                                      const std::vector<ConformerWeights>& w) {
  Matrix x = a;
  for (const auto& block : w) x = ConformerBlockForward(x, v, block);
  return x;
}

}  // namespace acmatch
