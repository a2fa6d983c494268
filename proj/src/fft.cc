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

#include "fft.h"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>
#include <vector>

namespace acmatch {
namespace {

struct PlanPair {
  fftw_plan forward;
  fftw_plan inverse;
};

std::mutex& PlanMutex() {
  static std::mutex mu;
  return mu;
}

// Planning is not thread-safe in FFTW; plans live for the process lifetime.
PlanPair GetPlans(int n) {
  static std::map<int, PlanPair>* cache = new std::map<int, PlanPair>();
  std::lock_guard<std::mutex> lock(PlanMutex());
  auto it = cache->find(n);
  if (it != cache->end()) return it->second;
  std::vector<double> real(n);
  std::vector<std::complex<double>> cplx(n / 2 + 1);
  auto* c = reinterpret_cast<fftw_complex*>(cplx.data());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  PlanPair plans{fftw_plan_dft_r2c_1d(n, real.data(), c, flags),
                 fftw_plan_dft_c2r_1d(n, c, real.data(),
                                      flags | FFTW_DESTROY_INPUT)};
  cache->emplace(n, plans);
  return plans;
}

}  // namespace

RealFft::RealFft(int size) : size_(size) {
  PlanPair p = GetPlans(size);
  forward_plan_ = p.forward;
  inverse_plan_ = p.inverse;
}

void RealFft::Forward(const double* in, std::complex<double>* out) const {
  fftw_execute_dft_r2c(static_cast<fftw_plan>(forward_plan_),
                       const_cast<double*>(in),
                       reinterpret_cast<fftw_complex*>(out));
}

void RealFft::Inverse(const std::complex<double>* in, double* out) const {
  // c2r destroys its input.
  std::vector<std::complex<double>> scratch(in, in + size_ / 2 + 1);
  fftw_execute_dft_c2r(static_cast<fftw_plan>(inverse_plan_),
                       reinterpret_cast<fftw_complex*>(scratch.data()), out);
}

}  // namespace acmatch
