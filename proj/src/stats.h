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

#ifndef ACMATCH_SRC_STATS_H_
#define ACMATCH_SRC_STATS_H_

#include <span>
#include <vector>

namespace acmatch::internal {

// Linear-interpolated percentile (q in [0, 100]) of a non-empty sample.
double Percentile(std::vector<double> values, double q);

double Median(std::vector<double> values);

// Least-squares slope of y against x.
double LineSlope(std::span<const double> x, std::span<const double> y);

}  // namespace acmatch::internal

#endif  // ACMATCH_SRC_STATS_H_
