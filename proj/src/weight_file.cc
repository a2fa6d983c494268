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

#include "acmatch/weight_file.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "acmatch/errors.h"

namespace acmatch {

static_assert(std::endian::native == std::endian::little,
              "weight files are read and written in host byte order");

namespace {

std::string ShapeString(const std::vector<std::int64_t>& shape) {
  std::string s = "[";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    s += (i ? "," : "") + std::to_string(shape[i]);
  }
  return s + "]";
}

}  // namespace

void WeightFile::Put(const std::string& name, const Matrix& m) {
  Tensor t;
  t.shape = {m.rows(), m.cols()};
  t.data.resize(m.size());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      t.data[i * m.cols() + j] = static_cast<float>(m(i, j));
    }
  }
  tensors_[name] = std::move(t);
}

void WeightFile::Put(const std::string& name, const Vector& v) {
  Tensor t;
  t.shape = {v.size()};
  t.data.resize(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) t.data[i] = static_cast<float>(v(i));
  tensors_[name] = std::move(t);
}

const WeightFile::Tensor& WeightFile::Find(const std::string& name) const {
  const auto it = tensors_.find(name);
  if (it == tensors_.end()) {
    throw Error(ErrorCode::kFormat, "weight file has no tensor '" + name + "'");
  }
  return it->second;
}

void WeightFile::Get(const std::string& name, Matrix& m) const {
  const Tensor& t = Find(name);
  const std::vector<std::int64_t> want = {m.rows(), m.cols()};
  if (t.shape != want) {
    throw Error(ErrorCode::kShapeMismatch,
                "tensor '" + name + "' has shape " + ShapeString(t.shape) +
                    ", expected " + ShapeString(want));
  }
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      m(i, j) = t.data[i * m.cols() + j];
    }
  }
}

void WeightFile::Get(const std::string& name, Vector& v) const {
  const Tensor& t = Find(name);
  const std::vector<std::int64_t> want = {v.size()};
  if (t.shape != want) {
    throw Error(ErrorCode::kShapeMismatch,
                "tensor '" + name + "' has shape " + ShapeString(t.shape) +
                    ", expected " + ShapeString(want));
  }
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = t.data[i];
}

bool WeightFile::Contains(const std::string& name) const {
  return tensors_.count(name) > 0;
}

std::string WeightFile::Serialize() const {
  nlohmann::json header = {{"tensors", nlohmann::json::array()}};
  std::uint64_t offset = 0;
  for (const auto& [name, t] : tensors_) {
    header["tensors"].push_back(
        {{"name", name}, {"shape", t.shape}, {"offset", offset}});
    offset += t.data.size() * sizeof(float);
  }
  const std::string text = header.dump();
  const std::uint64_t len = text.size();
  std::string out(sizeof(len), '\0');
  std::memcpy(out.data(), &len, sizeof(len));
  out += text;
  for (const auto& [name, t] : tensors_) {
    out.append(reinterpret_cast<const char*>(t.data.data()),
               t.data.size() * sizeof(float));
  }
  return out;
}

WeightFile WeightFile::Parse(const std::string& bytes) {
  std::uint64_t len = 0;
  if (bytes.size() < sizeof(len)) {
    throw Error(ErrorCode::kFormat, "weight file is truncated");
  }
  std::memcpy(&len, bytes.data(), sizeof(len));
  if (len > bytes.size() - sizeof(len)) {
    throw Error(ErrorCode::kFormat, "weight file header length is invalid");
  }
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(bytes.substr(sizeof(len), len));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kFormat, std::string("bad weight header: ") + e.what());
  }
  const std::size_t data_start = sizeof(len) + len;
  WeightFile file;
  for (const auto& entry : header.at("tensors")) {
    Tensor t;
    t.shape = entry.at("shape").get<std::vector<std::int64_t>>();
    std::size_t count = 1;
    for (auto d : t.shape) {
      if (d < 0) throw Error(ErrorCode::kFormat, "negative tensor dim");
      count *= static_cast<std::size_t>(d);
    }
    const auto offset = entry.at("offset").get<std::uint64_t>();
    if (data_start + offset + count * sizeof(float) > bytes.size()) {
      throw Error(ErrorCode::kFormat, "tensor data runs past end of file");
    }
    t.data.resize(count);
    std::memcpy(t.data.data(), bytes.data() + data_start + offset,
                count * sizeof(float));
    file.tensors_[entry.at("name").get<std::string>()] = std::move(t);
  }
  return file;
}

void WeightFile::Save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << Serialize();
}

WeightFile WeightFile::Load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return Parse(os.str());
}

namespace {

// "block0" + "ff1.w1" -> "block0.ff1.w1"; an empty prefix adds nothing.
std::string Scoped(const std::string& prefix, const std::string& name) {
  return prefix.empty() ? name : prefix + "." + name;
}

}  // namespace

void PutWeights(WeightFile& file, const std::string& prefix,
                const ConformerWeights& w) {
  const_cast<ConformerWeights&>(w).Visit(
      [&](const std::string& name, auto& t) { file.Put(Scoped(prefix, name), t); });
}

void GetWeights(const WeightFile& file, const std::string& prefix,
                ConformerWeights& w) {
  w.Visit([&](const std::string& name, auto& t) { file.Get(Scoped(prefix, name), t); });
}

void PutWeights(WeightFile& file, const std::string& prefix,
                const ConvEncoder& e) {
  file.Put(Scoped(prefix, "embed.weight"), e.embed.weight);
  file.Put(Scoped(prefix, "embed.bias"), e.embed.bias);
  for (std::size_t i = 0; i < e.layers.size(); ++i) {
    const std::string p = Scoped(prefix, "layer" + std::to_string(i) + ".");
    file.Put(p + "weight", e.layers[i].weight);
    file.Put(p + "bias", e.layers[i].bias);
  }
}

void GetWeights(const WeightFile& file, const std::string& prefix,
                ConvEncoder& e) {
  file.Get(Scoped(prefix, "embed.weight"), e.embed.weight);
  file.Get(Scoped(prefix, "embed.bias"), e.embed.bias);
  for (std::size_t i = 0; i < e.layers.size(); ++i) {
    const std::string p = Scoped(prefix, "layer" + std::to_string(i) + ".");
    file.Get(p + "weight", e.layers[i].weight);
    file.Get(p + "bias", e.layers[i].bias);
  }
}

}  // namespace acmatch
