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

#ifndef ACMATCH_XMODAL_H_
#define ACMATCH_XMODAL_H_

#include <cstdint>
#include <vector>

#include "acmatch/waveform.h"

namespace acmatch {

// length x dim feature sequences (audio, visual, fused).
using FeatureSequence = Matrix;
using Vector = Eigen::VectorXd;

inline constexpr int kFeatureDim = 512;
inline constexpr int kNumHeads = 8;

// Row-wise softmax with the row maximum subtracted first.
Matrix RowSoftmax(const Matrix& scores);

// softmax(A V^T / sqrt(S)) V with no projections. Throws kShapeMismatch when
// the feature dims differ.
FeatureSequence CrossModalAttention(const FeatureSequence& a,
                                    const FeatureSequence& v);

struct AttentionGrads {
  Matrix d_a;
  Matrix d_v;
};

// Gradients of <upstream, CrossModalAttention(a, v)> with respect to a and v.
AttentionGrads CrossModalAttentionGrad(const FeatureSequence& a,
                                       const FeatureSequence& v,
                                       const Matrix& upstream);

// PE(pos, 2i) = sin(pos / 10000^(2i/dim)), PE(pos, 2i+1) = cos(same).
// Throws kBadDim for odd dim.
FeatureSequence PositionalEncoding(int length, int dim);

// x -> swish(x W1 + b1) W2 + b2.
struct FeedForwardWeights {
  Matrix w1;  // dim x hidden
  Vector b1;
  Matrix w2;  // hidden x dim
  Vector b2;

  static FeedForwardWeights Zero(int dim, int hidden);
  static FeedForwardWeights Random(int dim, int hidden, std::uint64_t seed);
  template <typename F>
  void Visit(F&& f) {
    f("w1", w1);
    f("b1", b1);
    f("w2", w2);
    f("b2", b2);
  }
};

Matrix FeedForward(const FeedForwardWeights& w, const Matrix& x);

struct FeedForwardGrads {
  Matrix d_x;
  Matrix d_w1;
  Vector d_b1;
  Matrix d_w2;
  Vector d_b2;
};

FeedForwardGrads FeedForwardGrad(const FeedForwardWeights& w, const Matrix& x,
                                 const Matrix& upstream);

// Per-row normalization to zero mean and unit variance, then gamma/beta.
struct LayerNormWeights {
  Vector gamma;
  Vector beta;
  double eps = 1e-5;

  static LayerNormWeights Identity(int dim);
  template <typename F>
  void Visit(F&& f) {
    f("gamma", gamma);
    f("beta", beta);
  }
};

Matrix LayerNorm(const LayerNormWeights& w, const Matrix& x);

struct LayerNormGrads {
  Matrix d_x;
  Vector d_gamma;
  Vector d_beta;
};

LayerNormGrads LayerNormGrad(const LayerNormWeights& w, const Matrix& x,
                             const Matrix& upstream);

// Projected multi-head attention; queries from `x`, keys and values from
// `context`. Each head attends over dim / heads channels.
struct MultiHeadAttentionWeights {
  int heads = kNumHeads;
  Matrix wq, wk, wv, wo;  // dim x dim
  Vector bq, bk, bv, bo;

  static MultiHeadAttentionWeights Zero(int dim, int heads);
  static MultiHeadAttentionWeights Random(int dim, int heads,
                                          std::uint64_t seed);
  template <typename F>
  void Visit(F&& f) {
    f("wq", wq);
    f("wk", wk);
    f("wv", wv);
    f("wo", wo);
    f("bq", bq);
    f("bk", bk);
    f("bv", bv);
    f("bo", bo);
  }
};

// Throws kBadDim when dim is not divisible by heads, kShapeMismatch on
// inconsistent dims.
Matrix MultiHeadAttention(const MultiHeadAttentionWeights& w, const Matrix& x,
                          const Matrix& context);

// Uniform(-scale, scale) matrix, used to seed random weights.
Matrix RandomMatrix(int rows, int cols, double scale, std::uint64_t seed);

}  // namespace acmatch

#endif  // ACMATCH_XMODAL_H_
