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

#include "tfq/optics.hpp"

#include <cmath>
#include <numbers>

namespace tfq {
namespace {

CVec constant(std::size_t n, cplx v) { return CVec(n, v); }

CVec phase_samples(const FrequencyGrid& g, const PhaseFn& phi) {
  CVec out(g.n_points);
  for (std::size_t j = 0; j < g.n_points; ++j) out[j] = std::polar(1.0, phi(g.omega(j)));
  return out;
}

ModeTransform single_mode(const std::string& mode, CVec f) {
  return {{mode}, {std::move(f)}};
}

void require_modes(const PhotonicState& s, const ElementSpec& e) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, BeamSplitter>) {
          s.require_mode(x.mode_a);
          s.require_mode(x.mode_b);
          if (x.mode_a == x.mode_b) throw UsageError("beam splitter needs two modes");
        } else {
          s.require_mode(x.mode);
        }
      },
      e);
}

}  // namespace

ModeTransform to_transform(const ElementSpec& e, const FrequencyGrid& g) {
  const std::size_t n = g.n_points;
  return std::visit(
      [&](const auto& x) -> ModeTransform {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, BeamSplitter>) {
          const double h = 1.0 / std::numbers::sqrt2;
          return {{x.mode_a, x.mode_b},
                  {constant(n, h), constant(n, h), constant(n, h), constant(n, -h)}};
        } else if constexpr (std::is_same_v<T, PhaseMask>) {
          return single_mode(x.mode, phase_samples(g, x.phase));
        } else if constexpr (std::is_same_v<T, Delay>) {
          const double tau = x.tau;
          return single_mode(x.mode, phase_samples(g, [tau](double w) { return w * tau; }));
        } else {
          const double b = x.beta2L;
          return single_mode(x.mode,
                             phase_samples(g, [b](double w) { return 0.5 * b * w * w; }));
        }
      },
      e);
}

PhotonicState apply_element(const PhotonicState& state, const ElementSpec& e) {
  require_modes(state, e);
  return apply_transform(state, to_transform(e, state.grid()));
}

PhotonicState apply_circuit(const PhotonicState& state,
                            const std::vector<ElementSpec>& elements) {
  PhotonicState s = state;
  for (const auto& e : elements) s = apply_element(s, e);
  return s;
}

PhotonicState cat_fqbs(const PhotonicState& state, const std::string& mode_a,
                       const std::string& mode_b, double phi,
                       const CatParams& band) {
  state.require_mode(mode_a);
  if (mode_a == mode_b) throw UsageError("FQBS needs two distinct modes");
  PhotonicState s = state;
  s.add_mode(mode_b);
  const double mid = band.midpoint();
  PhaseFn step = [mid, phi](double w) { return w > mid ? phi : 0.0; };
  return apply_circuit(s, {BeamSplitter{mode_a, mode_b}, PhaseMask{mode_b, step},
                           BeamSplitter{mode_a, mode_b}});
}

PhotonicState gkp_fqbs(const PhotonicState& state, const std::string& mode_a,
                       const std::string& mode_b, double tau) {
  state.require_mode(mode_a);
  if (mode_a == mode_b) throw UsageError("FQBS needs two distinct modes");
  PhotonicState s = state;
  s.add_mode(mode_b);
  // Swap, beam splitter, delay on a, beam splitter; collapsed into one map.
  const FrequencyGrid& g = s.grid();
  CVec minus(g.n_points);
  CVec plus(g.n_points);
  for (std::size_t j = 0; j < g.n_points; ++j) {
    cplx e = std::polar(1.0, g.omega(j) * tau);
    minus[j] = 0.5 * (e - 1.0);
    plus[j] = 0.5 * (e + 1.0);
  }
  ModeTransform t{{mode_a, mode_b}, {minus, plus, plus, minus}};
  return apply_transform(s, t);
}

std::vector<double> port_spectrum(const PhotonicState& state,
                                  const std::string& mode) {
  state.require_mode(mode);
  const std::size_t n = state.grid().n_points;
  std::vector<double> out(n, 0.0);
  auto it = state.singles().find(mode);
  if (it != state.singles().end()) {
    for (std::size_t j = 0; j < n; ++j) out[j] += std::norm(it->second[j]);
  }
  for (const auto& [key, a] : state.doubles()) {
    if (key.first != mode && key.second != mode) continue;
    std::vector<double> m;
    double w = 1.0;
    if (key.first == mode && key.second == mode) {
      m = a.first_marginal();
      w = 2.0;
    } else if (key.first == mode) {
      m = a.first_marginal();
    } else {
      m = a.second_marginal();
    }
    for (std::size_t j = 0; j < n; ++j) out[j] += w * m[j];
  }
  return out;
}

PhotonicState apply_dispersion(const PhotonicState& state,
                               const std::string& mode, double beta2L) {
  if (!std::isfinite(beta2L)) throw ConfigError("beta2L must be finite");
  return apply_element(state, Dispersion{mode, beta2L});
}

}  // namespace tfq
