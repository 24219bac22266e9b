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

#include "tfq/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fft.hpp"

namespace tfq {
namespace {

bool is_power_of_two(std::size_t n) { return n >= 2 && (n & (n - 1)) == 0; }

void require_same_grid(const FrequencyGrid& a, const FrequencyGrid& b) {
  if (!(a == b)) throw GridMismatch("amplitudes live on different grids");
}

template <typename Weight>
double weighted_mean(const CVec& s, Weight x, double* norm) {
  double total = 0.0;
  double first = 0.0;
  for (std::size_t j = 0; j < s.size(); ++j) {
    double p = std::norm(s[j]);
    total += p;
    first += p * x(j);
  }
  *norm = total;
  return total > 0.0 ? first / total : 0.0;
}

template <typename Weight>
double weighted_std(const CVec& s, Weight x, double step) {
  double total = 0.0;
  double mu = weighted_mean(s, x, &total);
  if (total * step < 1e-12) {
    throw DegenerateDistribution("distribution norm below 1e-12");
  }
  double second = 0.0;
  for (std::size_t j = 0; j < s.size(); ++j) {
    double d = x(j) - mu;
    second += std::norm(s[j]) * d * d;
  }
  return std::sqrt(second / total);
}

}  // namespace

FrequencyGrid FrequencyGrid::make(double omega_min, double omega_max,
                                  std::size_t n_points) {
  FrequencyGrid g{omega_min, omega_max, n_points};
  validate(g);
  return g;
}

FrequencyGrid FrequencyGrid::centered(double d_omega, std::size_t n_points) {
  double half = d_omega * static_cast<double>(n_points / 2);
  return make(-half, half, n_points);
}

std::size_t FrequencyGrid::nearest_index(double w) const {
  double x = std::round((w - omega_min) / d_omega());
  x = std::clamp(x, 0.0, static_cast<double>(n_points - 1));
  return static_cast<std::size_t>(x);
}

FrequencyGrid FrequencyGrid::refined() const {
  return make(omega_min, omega_max, 2 * n_points);
}

void validate(const FrequencyGrid& g) {
  if (!is_power_of_two(g.n_points)) {
    throw ConfigError("grid n_points must be a power of two >= 2");
  }
  if (!(g.omega_max > g.omega_min) || !std::isfinite(g.omega_min) ||
      !std::isfinite(g.omega_max)) {
    throw ConfigError("grid needs finite omega_min < omega_max");
  }
}

CVec gaussian_samples(double center, double width, const FrequencyGrid& grid) {
  CVec out(grid.n_points);
  double inv = 1.0 / (2.0 * width * width);
  for (std::size_t j = 0; j < grid.n_points; ++j) {
    double d = grid.omega(j) - center;
    out[j] = std::exp(-d * d * inv);
  }
  return out;
}

SpectralAmplitude gaussian_amplitude(const GaussianSpec& spec,
                                     const FrequencyGrid& grid) {
  validate(grid);
  if (!(spec.width > 0.0)) throw ConfigError("gaussian width must be > 0");
  if (spec.width < 3.0 * grid.d_omega()) {
    throw UnresolvablePeak("width below 3 grid steps");
  }
  // |G|^2 = exp(-x^2/sigma^2): the mass beyond distance d is erfc(d/sigma)/2.
  double lo = (spec.center - grid.omega_min) / spec.width;
  double hi = (grid.omega_max - spec.center) / spec.width;
  double clipped = 0.5 * std::erfc(lo) + 0.5 * std::erfc(hi);
  if (clipped > 1e-12) {
    throw OutOfBand("gaussian tails clipped by the band edges");
  }
  return normalized(
      SpectralAmplitude(grid, gaussian_samples(spec.center, spec.width, grid)));
}

cplx inner_product(const SpectralAmplitude& a, const SpectralAmplitude& b) {
  require_same_grid(a.grid, b.grid);
  cplx acc{0.0, 0.0};
  for (std::size_t j = 0; j < a.samples.size(); ++j) {
    acc += std::conj(a.samples[j]) * b.samples[j];
  }
  return acc * a.grid.d_omega();
}

double norm_squared(const SpectralAmplitude& a) {
  double acc = 0.0;
  for (const auto& v : a.samples) acc += std::norm(v);
  return acc * a.grid.d_omega();
}

double norm_squared(const TimeAmplitude& a) {
  double acc = 0.0;
  for (const auto& v : a.samples) acc += std::norm(v);
  return acc * a.dt;
}

SpectralAmplitude normalized(const SpectralAmplitude& a) {
  double n2 = norm_squared(a);
  if (!(n2 > 0.0)) throw DegenerateDistribution("cannot normalize zero state");
  return (1.0 / std::sqrt(n2)) * a;
}

SpectralAmplitude operator+(const SpectralAmplitude& a,
                            const SpectralAmplitude& b) {
  require_same_grid(a.grid, b.grid);
  SpectralAmplitude out = a;
  for (std::size_t j = 0; j < out.samples.size(); ++j) {
    out.samples[j] += b.samples[j];
  }
  return out;
}

SpectralAmplitude operator-(const SpectralAmplitude& a,
                            const SpectralAmplitude& b) {
  return a + cplx{-1.0, 0.0} * b;
}

SpectralAmplitude operator*(cplx c, const SpectralAmplitude& a) {
  SpectralAmplitude out = a;
  for (auto& v : out.samples) v *= c;
  return out;
}

TimeAmplitude to_time_domain(const SpectralAmplitude& a) {
  const std::size_t n = a.samples.size();
  const double dw = a.grid.d_omega();
  TimeAmplitude t;
  t.source = a.grid;
  t.dt = 2.0 * std::numbers::pi / (static_cast<double>(n) * dw);
  t.samples = a.samples;
  for (std::size_t j = 1; j < n; j += 2) t.samples[j] = -t.samples[j];
  detail::fft_inplace(t.samples, -1);
  const double scale = dw / std::sqrt(2.0 * std::numbers::pi);
  for (std::size_t k = 0; k < n; ++k) {
    t.samples[k] *= scale * std::polar(1.0, -a.grid.omega_min * t.time(k));
  }
  return t;
}

SpectralAmplitude from_time_domain(const TimeAmplitude& t) {
  const std::size_t n = t.samples.size();
  SpectralAmplitude a(t.source);
  a.samples = t.samples;
  for (std::size_t k = 0; k < n; ++k) {
    a.samples[k] *= std::polar(1.0, t.source.omega_min * t.time(k));
  }
  detail::fft_inplace(a.samples, +1);
  const double scale = t.dt / std::sqrt(2.0 * std::numbers::pi);
  for (std::size_t j = 0; j < n; ++j) {
    a.samples[j] *= (j % 2 == 0 ? scale : -scale);
  }
  return a;
}

SpectralAmplitude apply_phase(const SpectralAmplitude& a,
                              const PhaseFn& phase) {
  SpectralAmplitude out = a;
  for (std::size_t j = 0; j < out.samples.size(); ++j) {
    out.samples[j] *= std::polar(1.0, phase(a.grid.omega(j)));
  }
  return out;
}

SpectralAmplitude multiply(const SpectralAmplitude& a,
                           const std::function<cplx(double)>& f) {
  SpectralAmplitude out = a;
  for (std::size_t j = 0; j < out.samples.size(); ++j) {
    out.samples[j] *= f(a.grid.omega(j));
  }
  return out;
}

double mean_frequency(const SpectralAmplitude& a) {
  double total = 0.0;
  double mu = weighted_mean(
      a.samples, [&](std::size_t j) { return a.grid.omega(j); }, &total);
  if (total * a.grid.d_omega() < 1e-12) {
    throw DegenerateDistribution("distribution norm below 1e-12");
  }
  return mu;
}

double rms_width(const SpectralAmplitude& a) {
  return weighted_std(
      a.samples, [&](std::size_t j) { return a.grid.omega(j); },
      a.grid.d_omega());
}

double mean_time(const TimeAmplitude& a) {
  double total = 0.0;
  double mu = weighted_mean(
      a.samples, [&](std::size_t k) { return a.time(k); }, &total);
  if (total * a.dt < 1e-12) {
    throw DegenerateDistribution("distribution norm below 1e-12");
  }
  return mu;
}

double rms_width(const TimeAmplitude& a) {
  return weighted_std(
      a.samples, [&](std::size_t k) { return a.time(k); }, a.dt);
}

double gaussian_width(const SpectralAmplitude& a) {
  return std::numbers::sqrt2 * rms_width(a);
}

double gaussian_width(const TimeAmplitude& a) {
  return std::numbers::sqrt2 * rms_width(a);
}

SpectralAmplitude shift_frequency(const SpectralAmplitude& a, double delta) {
  const double steps = delta / a.grid.d_omega();
  const double whole = std::round(steps);
  if (std::abs(steps - whole) < 1e-9) {
    const auto n = static_cast<long long>(a.samples.size());
    const auto m = static_cast<long long>(whole);
    SpectralAmplitude out(a.grid);
    for (long long j = 0; j < n; ++j) {
      long long src = j - m;
      if (src >= 0 && src < n) out.samples[j] = a.samples[src];
    }
    return out;
  }
  TimeAmplitude t = to_time_domain(a);
  for (std::size_t k = 0; k < t.samples.size(); ++k) {
    t.samples[k] *= std::polar(1.0, -delta * t.time(k));
  }
  return from_time_domain(t);
}

SpectralAmplitude reflect(const SpectralAmplitude& a, double center) {
  const double dw = a.grid.d_omega();
  const double s = 2.0 * (center - a.grid.omega_min) / dw;
  const double s0 = std::round(s);
  const auto n = static_cast<long long>(a.samples.size());
  const auto m = static_cast<long long>(s0);
  SpectralAmplitude out(a.grid);
  for (long long j = 0; j < n; ++j) {
    long long src = m - j;
    if (src >= 0 && src < n) out.samples[j] = a.samples[src];
  }
  if (std::abs(s - s0) < 1e-9) return out;
  // Reflected about the nearest lattice centre; move the rest continuously.
  return shift_frequency(out, (s - s0) * dw);
}

double edge_mass(const SpectralAmplitude& a, double fraction) {
  const std::size_t n = a.samples.size();
  auto k = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n)));
  k = std::min(k, n / 2);
  double acc = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    acc += std::norm(a.samples[j]) + std::norm(a.samples[n - 1 - j]);
  }
  return acc * a.grid.d_omega();
}

}  // namespace tfq
