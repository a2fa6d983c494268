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

#ifndef ACMATCH_KERNEL_CHECK_H_
#define ACMATCH_KERNEL_CHECK_H_

#include <cstdint>
#include <string>
#include <vector>

namespace acmatch {

struct KernelCheckOptions {
  std::uint64_t seed = 0;
  int forward_instances = 100;
  int gradient_instances = 20;
  // Waveform lengths pushed through the full-width encoder and tied decoder.
  std::vector<int> lengths{40960};
};

struct KernelCheck {
  std::string name;  // e.g. "attention grad max rel err < 1e-4"
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::string detail;
};

// Seeded self-tests of the attention kernel (loop oracle, central finite
// differences, output shape) and of the codec (length arithmetic, tied
// adjoint identity). Throws kLengthNotAligned for a length that is not a
// multiple of the codec's downsampling factor.
std::vector<KernelCheck> RunKernelChecks(const KernelCheckOptions& options);

}  // namespace acmatch

#endif  // ACMATCH_KERNEL_CHECK_H_
