// Copyright 2026 The tfqsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "tfq/tfq.hpp"

namespace tfqtest {

inline constexpr double kPi = std::numbers::pi;
inline const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

inline double max_abs_diff(const tfq::CVec& a, const tfq::CVec& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// L2 distance between two amplitudes on the same grid.
inline double distance(const tfq::SpectralAmplitude& a, const tfq::SpectralAmplitude& b) {
  return std::sqrt(tfq::norm_squared(a - b));
}

// |<a|b>|^2 for single-mode amplitudes that need not be normalized.
inline double overlap2(const tfq::SpectralAmplitude& a, const tfq::SpectralAmplitude& b) {
  return std::norm(tfq::inner_product(a, b)) /
         (tfq::norm_squared(a) * tfq::norm_squared(b));
}

inline double sum(const std::vector<double>& v, double scale = 1.0) {
  double s = 0.0;
  for (double x : v) s += x;
  return s * scale;
}

}  // namespace tfqtest
