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

#include "acmatch/xmodal.h"

#include <cmath>
#include <random>
#include <string>

#include "acmatch/errors.h"

namespace acmatch {
namespace {

void CheckSameDim(const Matrix& a, const Matrix& b, const char* what) {
  if (a.cols() != b.cols()) {
    throw Error(ErrorCode::kShapeMismatch,
                std::string(what) + ": feature dims " +
                    std::to_string(a.cols()) + " and " +
                    std::to_string(b.cols()) + " differ");
  }
}

Matrix AddRowVector(Matrix m, const Vector& v) {
  m.rowwise() += v.transpose();
  return m;
}

double Sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace

Matrix RandomMatrix(int rows, int cols, double scale, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-scale, scale);
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = u(rng);
  }
  return m;
}

Matrix RowSoftmax(const Matrix& scores) {
  Matrix p(scores.rows(), scores.cols());
  for (Eigen::Index i = 0; i < scores.rows(); ++i) {
    const double top = scores.row(i).maxCoeff();
    double sum = 0.0;
    for (Eigen::Index j = 0; j < scores.cols(); ++j) {
      p(i, j) = std::exp(scores(i, j) - top);
      sum += p(i, j);
    }
    p.row(i) /= sum;
  }
  return p;
}

FeatureSequence CrossModalAttention(const FeatureSequence& a,
                                    const FeatureSequence& v) {
  CheckSameDim(a, v, "cross-modal attention");
  if (v.rows() == 0) {
    throw Error(ErrorCode::kShapeMismatch, "visual sequence is empty");
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(a.cols()));
  const Matrix p = RowSoftmax(a * v.transpose() * scale);
  return p * v;
}

AttentionGrads CrossModalAttentionGrad(const FeatureSequence& a,
                                       const FeatureSequence& v,
                                       const Matrix& upstream) {
  CheckSameDim(a, v, "cross-modal attention");
  if (upstream.rows() != a.rows() || upstream.cols() != a.cols()) {
    throw Error(ErrorCode::kShapeMismatch,
                "upstream gradient shape differs from the attention output");
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(a.cols()));
  const Matrix p = RowSoftmax(a * v.transpose() * scale);
  const Matrix dp = upstream * v.transpose();
  const Vector row_dot = (dp.array() * p.array()).rowwise().sum();
  Matrix ds = dp;
  ds.colwise() -= row_dot;
  ds = (ds.array() * p.array()).matrix();
  AttentionGrads g;
  g.d_a = ds * v * scale;
  g.d_v = p.transpose() * upstream + ds.transpose() * a * scale;
  return g;
}

FeatureSequence PositionalEncoding(int length, int dim) {
  if (dim <= 0 || dim % 2 != 0) {
    throw Error(ErrorCode::kBadDim,
                "positional encoding needs an even dim, got " +
                    std::to_string(dim));
  }
  FeatureSequence pe(length, dim);
  for (int pos = 0; pos < length; ++pos) {
    for (int i = 0; i < dim / 2; ++i) {
      const double angle =
          pos / std::pow(10000.0, 2.0 * i / static_cast<double>(dim));
      pe(pos, 2 * i) = std::sin(angle);
      pe(pos, 2 * i + 1) = std::cos(angle);
    }
  }
  return pe;
}

FeedForwardWeights FeedForwardWeights::Zero(int dim, int hidden) {
  return {Matrix::Zero(dim, hidden), Vector::Zero(hidden),
          Matrix::Zero(hidden, dim), Vector::Zero(dim)};
}

FeedForwardWeights FeedForwardWeights::Random(int dim, int hidden,
                                              std::uint64_t seed) {
  FeedForwardWeights w;
  w.w1 = RandomMatrix(dim, hidden, 1.0 / std::sqrt(dim), seed);
  w.b1 = RandomMatrix(hidden, 1, 0.1, seed + 1);
  w.w2 = RandomMatrix(hidden, dim, 1.0 / std::sqrt(hidden), seed + 2);
  w.b2 = RandomMatrix(dim, 1, 0.1, seed + 3);
  return w;
}

Matrix FeedForward(const FeedForwardWeights& w, const Matrix& x) {
  if (x.cols() != w.w1.rows()) {
    throw Error(ErrorCode::kShapeMismatch, "feed-forward input dim mismatch");
  }
  Matrix h = AddRowVector(x * w.w1, w.b1);
  h = h.unaryExpr([](double z) { return z * Sigmoid(z); });
  return AddRowVector(h * w.w2, w.b2);
}

FeedForwardGrads FeedForwardGrad(const FeedForwardWeights& w, const Matrix& x,
                                 const Matrix& upstream) {
  const Matrix h = AddRowVector(x * w.w1, w.b1);
  const Matrix act = h.unaryExpr([](double z) { return z * Sigmoid(z); });
  const Matrix slope = h.unaryExpr([](double z) {
    const double s = Sigmoid(z);
    return s * (1.0 + z * (1.0 - s));
  });
  FeedForwardGrads g;
  g.d_w2 = act.transpose() * upstream;
  g.d_b2 = upstream.colwise().sum().transpose();
  const Matrix dh = ((upstream * w.w2.transpose()).array() * slope.array())
                        .matrix();
  g.d_w1 = x.transpose() * dh;
  g.d_b1 = dh.colwise().sum().transpose();
  g.d_x = dh * w.w1.transpose();
  return g;
}

LayerNormWeights LayerNormWeights::Identity(int dim) {
  return {Vector::Ones(dim), Vector::Zero(dim)};
}

namespace {

// Normalized rows and their inverse standard deviations.
std::pair<Matrix, Vector> Standardize(const Matrix& x, double eps) {
  Matrix xhat(x.rows(), x.cols());
  Vector inv_std(x.rows());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const double mean = x.row(i).mean();
    const double var = (x.row(i).array() - mean).square().mean();
    inv_std(i) = 1.0 / std::sqrt(var + eps);
    xhat.row(i) = (x.row(i).array() - mean) * inv_std(i);
  }
  return {xhat, inv_std};
}

}  // namespace

Matrix LayerNorm(const LayerNormWeights& w, const Matrix& x) {
  if (x.cols() != w.gamma.size()) {
    throw Error(ErrorCode::kShapeMismatch, "layer norm dim mismatch");
  }
  Matrix y = Standardize(x, w.eps).first;
  y = (y.array().rowwise() * w.gamma.transpose().array()).matrix();
  return AddRowVector(y, w.beta);
}

LayerNormGrads LayerNormGrad(const LayerNormWeights& w, const Matrix& x,
                             const Matrix& upstream) {
  const auto [xhat, inv_std] = Standardize(x, w.eps);
  LayerNormGrads g;
  g.d_gamma = (upstream.array() * xhat.array()).colwise().sum().transpose();
  g.d_beta = upstream.colwise().sum().transpose();
  const Matrix dxhat =
      (upstream.array().rowwise() * w.gamma.transpose().array()).matrix();
  g.d_x.resize(x.rows(), x.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const double m1 = dxhat.row(i).mean();
    const double m2 = (dxhat.row(i).array() * xhat.row(i).array()).mean();
    g.d_x.row(i) =
        (dxhat.row(i).array() - m1 - xhat.row(i).array() * m2) * inv_std(i);
  }
  return g;
}

MultiHeadAttentionWeights MultiHeadAttentionWeights::Zero(int dim, int heads) {
  MultiHeadAttentionWeights w;
  w.heads = heads;
  w.wq = w.wk = w.wv = w.wo = Matrix::Zero(dim, dim);
  w.bq = w.bk = w.bv = w.bo = Vector::Zero(dim);
  return w;
}

MultiHeadAttentionWeights MultiHeadAttentionWeights::Random(
    int dim, int heads, std::uint64_t seed) {
  MultiHeadAttentionWeights w;
  w.heads = heads;
  const double s = 1.0 / std::sqrt(dim);
  w.wq = RandomMatrix(dim, dim, s, seed);
  w.wk = RandomMatrix(dim, dim, s, seed + 1);
  w.wv = RandomMatrix(dim, dim, s, seed + 2);
  w.wo = RandomMatrix(dim, dim, s, seed + 3);
  w.bq = RandomMatrix(dim, 1, 0.1, seed + 4);
  w.bk = RandomMatrix(dim, 1, 0.1, seed + 5);
  w.bv = RandomMatrix(dim, 1, 0.1, seed + 6);
  w.bo = RandomMatrix(dim, 1, 0.1, seed + 7);
  return w;
}

Matrix MultiHeadAttention(const MultiHeadAttentionWeights& w, const Matrix& x,
                          const Matrix& context) {
  CheckSameDim(x, context, "multi-head attention");
  const auto dim = static_cast<int>(x.cols());
  if (w.heads <= 0 || dim % w.heads != 0) {
    throw Error(ErrorCode::kBadDim, "dim " + std::to_string(dim) +
                                        " is not divisible by head count");
  }
  if (w.wq.rows() != dim) {
    throw Error(ErrorCode::kShapeMismatch, "projection dim mismatch");
  }
  const Matrix q = AddRowVector(x * w.wq, w.bq);
  const Matrix k = AddRowVector(context * w.wk, w.bk);
  const Matrix v = AddRowVector(context * w.wv, w.bv);
  const int dh = dim / w.heads;
  const double scale = 1.0 / std::sqrt(static_cast<double>(dh));
  Matrix merged(x.rows(), dim);
  for (int h = 0; h < w.heads; ++h) {
    const Matrix qh = q.middleCols(h * dh, dh);
    const Matrix kh = k.middleCols(h * dh, dh);
    const Matrix p = RowSoftmax(qh * kh.transpose() * scale);
    merged.middleCols(h * dh, dh) = p * v.middleCols(h * dh, dh);
  }
  return AddRowVector(merged * w.wo, w.bo);
}

}  // namespace acmatch
