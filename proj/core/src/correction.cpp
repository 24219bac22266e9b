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

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>

#include "tfq/protocol.hpp"

namespace tfq {
namespace {

using Eigen::MatrixXcd;

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

CorrectionResult entanglement_correct_round(const JointAmplitude& joint,
                                            MeasuredVariable measure,
                                            double resolution,
                                            double lattice_period,
                                            std::uint64_t seed) {
  if (joint.empty()) throw UsageError("empty joint amplitude");
  if (!(lattice_period > 0.0)) throw ConfigError("lattice period must be > 0");
  if (!(resolution >= 0.0) || !std::isfinite(resolution)) {
    throw ConfigError("detector resolution must be >= 0");
  }
  const FrequencyGrid& g = joint.grid();
  const std::size_t n = g.n_points;
  const auto ni = static_cast<Eigen::Index>(n);

  // d(i, k): signal frequency i, ancilla sample k in the measured variable.
  MatrixXcd d(ni, ni);
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    SpectralAmplitude row(g, joint.row(i));
    if (measure == MeasuredVariable::time) {
      TimeAmplitude t = to_time_domain(row);
      for (std::size_t k = 0; k < n; ++k) d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = t.samples[k];
      if (i == 0) {
        for (std::size_t k = 0; k < n; ++k) x[k] = t.time(k);
      }
    } else {
      for (std::size_t k = 0; k < n; ++k) d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = row.samples[k];
      if (i == 0) {
        for (std::size_t k = 0; k < n; ++k) x[k] = g.omega(k);
      }
    }
  }

  if (resolution > 0.0) {
    const double step = std::abs(x[1] - x[0]);
    const double norm = step / std::pow(std::numbers::pi * resolution * resolution, 0.25);
    MatrixXcd m(ni, ni);
    for (Eigen::Index k = 0; k < ni; ++k) {
      for (Eigen::Index c = 0; c < ni; ++c) {
        const double u = (x[static_cast<std::size_t>(k)] - x[static_cast<std::size_t>(c)]) / resolution;
        m(k, c) = norm * std::exp(-0.5 * u * u);
      }
    }
    d = (d * m).eval();
  }

  std::vector<double> p(n, 0.0);
  double total = 0.0;
  cplx first{};
  for (std::size_t k = 0; k < n; ++k) {
    p[k] = d.col(static_cast<Eigen::Index>(k)).squaredNorm();
    total += p[k];
    first += p[k] * std::polar(1.0, 2.0 * std::numbers::pi * x[k] / lattice_period);
  }
  if (!(total > 0.0)) throw DegenerateDistribution("ancilla marginal vanishes");
  if (std::abs(first) / total < 1e-3) {
    throw RegimeViolation("ancilla marginal shows no lattice structure");
  }

  std::mt19937_64 rng(seed);
  const double u = uniform01(rng) * total;
  std::size_t pick = n - 1;
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    acc += p[k];
    if (u < acc) {
      pick = k;
      break;
    }
  }
  while (p[pick] <= 0.0 && pick > 0) --pick;

  CorrectionResult r;
  r.outcome = x[pick];
  r.syndrome = lattice_deviation(r.outcome, lattice_period);
  r.conditional = SpectralAmplitude(g);
  for (std::size_t i = 0; i < n; ++i) {
    r.conditional.samples[i] = d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(pick));
  }
  r.conditional = normalized(r.conditional);
  if (measure == MeasuredVariable::time) {
    const double s = r.syndrome;
    r.corrected = apply_phase(r.conditional, [s](double w) { return -w * s; });
  } else {
    r.corrected = shift_frequency(r.conditional, -r.syndrome);
  }
  return r;
}

}  // namespace tfq
