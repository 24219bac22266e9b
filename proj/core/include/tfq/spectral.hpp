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

#include <cstddef>
#include <functional>

#include "tfq/errors.hpp"

namespace tfq {

// Uniform baseband grid. Sample j sits at omega_min + j*d_omega, so the last
// sample is omega_max - d_omega.
struct FrequencyGrid {
  double omega_min = -1.0;
  double omega_max = 1.0;
  std::size_t n_points = 2;

  static FrequencyGrid make(double omega_min, double omega_max,
                            std::size_t n_points);
  // Grid with omega = 0 on sample n/2; handy for combs whose period is a
  // whole number of steps.
  static FrequencyGrid centered(double d_omega, std::size_t n_points);

  double d_omega() const {
    return (omega_max - omega_min) / static_cast<double>(n_points);
  }
  double omega(std::size_t j) const {
    return omega_min + static_cast<double>(j) * d_omega();
  }
  std::size_t size() const { return n_points; }
  std::size_t nearest_index(double omega) const;
  FrequencyGrid refined() const;  // same band, twice the points

  friend bool operator==(const FrequencyGrid&, const FrequencyGrid&) = default;
};

void validate(const FrequencyGrid& grid);

struct SpectralAmplitude {
  FrequencyGrid grid;
  CVec samples;

  SpectralAmplitude() = default;
  explicit SpectralAmplitude(const FrequencyGrid& g)
      : grid(g), samples(g.n_points, cplx{0.0, 0.0}) {}
  SpectralAmplitude(const FrequencyGrid& g, CVec s)
      : grid(g), samples(std::move(s)) {}

  std::size_t size() const { return samples.size(); }
  cplx& operator[](std::size_t j) { return samples[j]; }
  const cplx& operator[](std::size_t j) const { return samples[j]; }
};

// Time-domain samples produced by to_time_domain. t_k = (k - n/2) * dt with
// dt = 2 pi / (n d_omega); `source` remembers the frequency grid for the
// inverse transform.
struct TimeAmplitude {
  FrequencyGrid source;
  double dt = 0.0;
  CVec samples;

  double time(std::size_t k) const {
    return (static_cast<double>(k) -
            static_cast<double>(samples.size() / 2)) * dt;
  }
  std::size_t size() const { return samples.size(); }
};

struct GaussianSpec {
  double center = 0.0;
  double width = 1.0;  // sigma in exp(-(w - w0)^2 / 2 sigma^2)
};

// Raw exp(-(w - w0)^2 / 2 sigma^2) samples, no normalization or checks.
CVec gaussian_samples(double center, double width, const FrequencyGrid& grid);

SpectralAmplitude gaussian_amplitude(const GaussianSpec& spec,
                                     const FrequencyGrid& grid);

cplx inner_product(const SpectralAmplitude& a, const SpectralAmplitude& b);
double norm_squared(const SpectralAmplitude& a);
double norm_squared(const TimeAmplitude& a);
SpectralAmplitude normalized(const SpectralAmplitude& a);

SpectralAmplitude operator+(const SpectralAmplitude& a,
                            const SpectralAmplitude& b);
SpectralAmplitude operator-(const SpectralAmplitude& a,
                            const SpectralAmplitude& b);
SpectralAmplitude operator*(cplx c, const SpectralAmplitude& a);

// psi(t) = (2 pi)^(-1/2) int psi(w) exp(-i w t) dw, discretized so that
// Parseval holds exactly. A spectral phase exp(i w tau) delays by +tau.
TimeAmplitude to_time_domain(const SpectralAmplitude& a);
SpectralAmplitude from_time_domain(const TimeAmplitude& t);

using PhaseFn = std::function<double(double)>;
SpectralAmplitude apply_phase(const SpectralAmplitude& a, const PhaseFn& phase);
SpectralAmplitude multiply(const SpectralAmplitude& a,
                           const std::function<cplx(double)>& f);

double mean_frequency(const SpectralAmplitude& a);
double rms_width(const SpectralAmplitude& a);
double mean_time(const TimeAmplitude& a);
double rms_width(const TimeAmplitude& a);
// sqrt(2) * rms width: the sigma of an amplitude exp(-x^2 / 2 sigma^2).
double gaussian_width(const SpectralAmplitude& a);
double gaussian_width(const TimeAmplitude& a);

// a(w) -> a(w - delta). Exact index shift when delta is a whole number of
// steps, band-limited (FFT) shift otherwise.
SpectralAmplitude shift_frequency(const SpectralAmplitude& a, double delta);
// a(w) -> a(2c - w). Requires 2c to land on the grid's reflection lattice.
SpectralAmplitude reflect(const SpectralAmplitude& a, double center);

// Probability mass carried by the outermost `fraction` of the band on each
// side; used to detect clipped tails.
double edge_mass(const SpectralAmplitude& a, double fraction);

}  // namespace tfq
