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

#include <string>
#include <variant>
#include <vector>

#include "tfq/joint.hpp"
#include "tfq/photonic_state.hpp"
#include "tfq/states.hpp"

namespace tfq {

// a^+ -> (a^+ + b^+)/sqrt2, b^+ -> (a^+ - b^+)/sqrt2. Squares to identity.
struct BeamSplitter {
  std::string mode_a;
  std::string mode_b;
};
struct PhaseMask {
  std::string mode;
  PhaseFn phase;
};
// exp(i w tau): delays the wavepacket by +tau.
struct Delay {
  std::string mode;
  double tau = 0.0;
};
// exp(i beta2L w^2 / 2)
struct Dispersion {
  std::string mode;
  double beta2L = 0.0;
};

using ElementSpec = std::variant<BeamSplitter, PhaseMask, Delay, Dispersion>;

ModeTransform to_transform(const ElementSpec& e, const FrequencyGrid& grid);
PhotonicState apply_element(const PhotonicState& state, const ElementSpec& e);
PhotonicState apply_circuit(const PhotonicState& state,
                            const std::vector<ElementSpec>& elements);

// Mach-Zehnder with a step phase phi on every frequency above the cat
// midpoint. Input in mode_a leaves as a: (1 + e^{i phi(w)})/2 and
// b: (1 - e^{i phi(w)})/2. mode_b is created if absent.
PhotonicState cat_fqbs(const PhotonicState& state, const std::string& mode_a,
                       const std::string& mode_b, double phi,
                       const CatParams& band);

// Mach-Zehnder with a delay tau. Input in mode_a leaves as
// a: (e^{i w tau} - 1)/2 and b: (e^{i w tau} + 1)/2, so at tau = pi/omega_bar
// odd teeth exit a with a minus sign and even teeth exit b.
PhotonicState gkp_fqbs(const PhotonicState& state, const std::string& mode_a,
                       const std::string& mode_b, double tau);

// Photon-number density in `mode` over the grid (partner photons integrated
// out). Integrates to the mean photon number of the mode.
std::vector<double> port_spectrum(const PhotonicState& state,
                                  const std::string& mode);

PhotonicState apply_dispersion(const PhotonicState& state,
                               const std::string& mode, double beta2L);

enum class Interpolation { fourier, bilinear };

// A'(x, y) = A((x + y)/sqrt2, (x - y)/sqrt2).
JointAmplitude frequency_beam_splitter(
    const JointAmplitude& j, Interpolation method = Interpolation::fourier);

}  // namespace tfq
