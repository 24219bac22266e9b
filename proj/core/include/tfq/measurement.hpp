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

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tfq/photonic_state.hpp"
#include "tfq/states.hpp"

namespace tfq {

// Amplitude transmission with unit peak. band: Gaussian around center;
// even/odd: the matching comb teeth with envelope kappa_tilde.
struct FilterSpec {
  enum class Kind { even, odd, band };
  Kind kind = Kind::band;
  double center = 0.0;
  double width = 1.0;  // band
  double sigma_tilde = 0.1;
  double kappa_tilde = 10.0;
  double omega_bar = 1.0;

  static FilterSpec band(double center, double width);
  static FilterSpec comb(int parity, double omega_bar, double sigma_tilde,
                         double kappa_tilde);
};

void validate(const FilterSpec& f);
std::vector<double> transmission(const FilterSpec& f, const FrequencyGrid& g);

struct FilterResult {
  PhotonicState state;       // unnormalized
  double pass_probability;   // squared norm of `state`
};
FilterResult apply_filter(const PhotonicState& state, const std::string& mode,
                          const FilterSpec& filter);

enum class DetectorKind { threshold, pnr };
struct DetectorModel {
  DetectorKind kind = DetectorKind::threshold;
};
std::string to_string(DetectorKind k);

struct Detector {
  std::optional<FilterSpec> filter;
  DetectorModel model;
};
using DetectorAssignment = std::map<std::string, Detector>;

// Fired modes with counts, sorted by mode. Threshold detectors report 1.
struct Pattern {
  std::vector<std::pair<std::string, int>> counts;

  static Pattern none() { return {}; }
  static Pattern of(std::vector<std::pair<std::string, int>> c);
  bool empty() const { return counts.empty(); }
  int total() const;
  int count(const std::string& mode) const;
  std::string label() const;  // "none", "a", "a,b", "a^2"
  auto operator<=>(const Pattern&) const = default;
};

struct ConditionalMember {
  double weight = 0.0;
  PhotonicState state;  // normalized, spectator (and external) modes
};

// Pattern-conditioned state of everything not detected or traced, as an
// eigen-ensemble of its density matrix.
struct ConditionalState {
  bool available = true;
  std::vector<ConditionalMember> members;
};

struct OutcomeRecord {
  Pattern pattern;
  double probability = 0.0;
  bool ambiguous = false;  // a threshold click fed by two photons
  std::array<double, 3> by_photon_number{};  // split by detected photons
  ConditionalState conditional;
};

std::vector<OutcomeRecord> detect_pattern_probabilities(
    const PhotonicState& state, const DetectorAssignment& detectors);

// One term of sum_m x_m (x) |chi_m>, where chi_m is a photon in a mode that
// never meets the detectors. Members then carry it as `external_mode`.
struct Branch {
  PhotonicState state;
  SpectralAmplitude external;
};
std::vector<OutcomeRecord> detect_with_external(
    const std::vector<Branch>& branches, const DetectorAssignment& detectors,
    const std::string& external_mode);

const OutcomeRecord* find_record(const std::vector<OutcomeRecord>& records,
                                 const Pattern& pattern);
// Principal member of the conditional state.
PhotonicState postselect(const std::vector<OutcomeRecord>& records,
                         const Pattern& pattern);

// Name of the traced mode that absorbs what a filter on `mode` rejects.
std::string loss_mode(const std::string& mode);

}  // namespace tfq
