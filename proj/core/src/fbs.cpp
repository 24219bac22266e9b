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

#include <cmath>
#include <numbers>

#include "fft.hpp"
#include "tfq/optics.hpp"

namespace tfq {
namespace {

// line(x) <- line(x + c), band-limited and periodic over the line.
void shift_line(CVec& line, double c_over_dx) {
  const std::size_t n = line.size();
  if (c_over_dx == 0.0) return;
  detail::fft_inplace(line, -1);
  const double nd = static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) {
    double kk = k < n / 2 ? static_cast<double>(k) : static_cast<double>(k) - nd;
    if (2 * k == n) {
      line[k] *= std::cos(std::numbers::pi * c_over_dx);
    } else {
      line[k] *= std::polar(1.0, 2.0 * std::numbers::pi * kk * c_over_dx / nd);
    }
  }
  for (auto& v : line) v /= nd;
  detail::fft_inplace(line, +1);
}

// g(x, y) <- g(x + a y, y): x is the row (first) index.
void shear_first(CVec& d, const FrequencyGrid& g, double a) {
  const std::size_t n = g.n_points;
  const double dw = g.d_omega();
  CVec line(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) line[i] = d[i * n + j];
    shift_line(line, a * g.omega(j) / dw);
    for (std::size_t i = 0; i < n; ++i) d[i * n + j] = line[i];
  }
}

// g(x, y) <- g(x, y + b x)
void shear_second(CVec& d, const FrequencyGrid& g, double b) {
  const std::size_t n = g.n_points;
  const double dw = g.d_omega();
  CVec line(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::copy(d.begin() + static_cast<long>(i * n),
              d.begin() + static_cast<long>((i + 1) * n), line.begin());
    shift_line(line, b * g.omega(i) / dw);
    std::copy(line.begin(), line.end(), d.begin() + static_cast<long>(i * n));
  }
}

cplx bilinear_at(const CVec& d, const FrequencyGrid& g, double u, double v) {
  const std::size_t n = g.n_points;
  const double dw = g.d_omega();
  const double fu = (u - g.omega_min) / dw;
  const double fv = (v - g.omega_min) / dw;
  if (fu < 0.0 || fv < 0.0) return {};
  const auto i = static_cast<std::size_t>(fu);
  const auto j = static_cast<std::size_t>(fv);
  if (i + 1 >= n || j + 1 >= n) return {};
  const double tu = fu - static_cast<double>(i);
  const double tv = fv - static_cast<double>(j);
  return (1 - tu) * (1 - tv) * d[i * n + j] + tu * (1 - tv) * d[(i + 1) * n + j] +
         (1 - tu) * tv * d[i * n + j + 1] + tu * tv * d[(i + 1) * n + j + 1];
}

void check_support(const CVec& d, const FrequencyGrid& g, double total) {
  // Content must stay inside the disc that the shears never wrap.
  const double half = std::min(-g.omega_min, g.omega_max);
  const double r = 0.92 * half;
  const std::size_t n = g.n_points;
  double out = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = g.omega(i);
    for (std::size_t j = 0; j < n; ++j) {
      const double y = g.omega(j);
      if (x * x + y * y > r * r) out += std::norm(d[i * n + j]);
    }
  }
  const double dw = g.d_omega();
  out *= dw * dw;
  if (half <= 0.0 || out > 1e-10 * std::max(total, 1e-300)) {
    throw OutOfBand("joint amplitude does not fit the rotated band");
  }
}

}  // namespace

JointAmplitude frequency_beam_splitter(const JointAmplitude& j,
                                       Interpolation method) {
  const FrequencyGrid& g = j.grid();
  const std::size_t n = g.n_points;
  CVec d = j.to_dense();
  const double total = j.norm_squared();
  check_support(d, g, total);

  if (method == Interpolation::bilinear) {
    CVec out(n * n);
    const double h = 1.0 / std::numbers::sqrt2;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        const double x = g.omega(i);
        const double y = g.omega(k);
        out[i * n + k] = bilinear_at(d, g, h * (x + y), h * (x - y));
      }
    }
    return JointAmplitude::from_dense(g, std::move(out));
  }

  // B(u, w) = A(u, -w); then A' = B o R with R a -45 degree rotation,
  // split into three shears.
  CVec b(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    SpectralAmplitude row(g);
    for (std::size_t k = 0; k < n; ++k) row.samples[k] = d[i * n + k];
    row = reflect(row, 0.0);
    std::copy(row.samples.begin(), row.samples.end(),
              b.begin() + static_cast<long>(i * n));
  }
  const double theta = -std::numbers::pi / 4.0;
  const double a = -std::tan(theta / 2.0);
  const double s = std::sin(theta);
  shear_first(b, g, a);
  shear_second(b, g, s);
  shear_first(b, g, a);
  return JointAmplitude::from_dense(g, std::move(b));
}

}  // namespace tfq
