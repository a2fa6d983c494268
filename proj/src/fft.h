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

#ifndef ACMATCH_SRC_FFT_H_
#define ACMATCH_SRC_FFT_H_

#include <complex>

namespace acmatch {

// Real-input FFT of a fixed size backed by FFTW. Plans are created once per
// size and shared; Forward/Inverse are safe to call concurrently.
class RealFft {
 public:
  explicit RealFft(int size);

  int size() const { return size_; }

  // `in` holds size() samples, `out` receives size()/2 + 1 bins.
  void Forward(const double* in, std::complex<double>* out) const;
  // Unnormalized inverse: Inverse(Forward(x)) == size() * x.
  void Inverse(const std::complex<double>* in, double* out) const;

 private:
  int size_;
  void* forward_plan_;
  void* inverse_plan_;
};

}  // namespace acmatch

#endif  // ACMATCH_SRC_FFT_H_
