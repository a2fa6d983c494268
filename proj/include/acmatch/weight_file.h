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

#ifndef ACMATCH_WEIGHT_FILE_H_
#define ACMATCH_WEIGHT_FILE_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "acmatch/conformer.h"
#include "acmatch/conv_codec.h"
#include "acmatch/xmodal.h"

namespace acmatch {

// Layout: u64 little-endian header length, a JSON header
// {"tensors": [{"name", "shape", "offset"}]} with byte offsets into the data
// section, then little-endian float32 data.
class WeightFile {
 public:
  struct Tensor {
    std::vector<std::int64_t> shape;
    std::vector<float> data;
  };

  void Put(const std::string& name, const Matrix& m);
  void Put(const std::string& name, const Vector& v);
  // Throw kFormat when the tensor is missing and kShapeMismatch when its
  // shape differs from the destination's current shape.
  void Get(const std::string& name, Matrix& m) const;
  void Get(const std::string& name, Vector& v) const;

  bool Contains(const std::string& name) const;
  const std::map<std::string, Tensor>& tensors() const { return tensors_; }

  std::string Serialize() const;
  static WeightFile Parse(const std::string& bytes);
  void Save(const std::filesystem::path& path) const;
  static WeightFile Load(const std::filesystem::path& path);

 private:
  const Tensor& Find(const std::string& name) const;
  std::map<std::string, Tensor> tensors_;
};

void PutWeights(WeightFile& file, const std::string& prefix,
                const ConformerWeights& w);
// `w` must already have the expected shapes (e.g. from Identity()).
void GetWeights(const WeightFile& file, const std::string& prefix,
                ConformerWeights& w);
void PutWeights(WeightFile& file, const std::string& prefix,
                const ConvEncoder& e);
void GetWeights(const WeightFile& file, const std::string& prefix,
                ConvEncoder& e);

}  // namespace acmatch

#endif  // ACMATCH_WEIGHT_FILE_H_
