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

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tfq/measurement.hpp"
#include "tfq/optics.hpp"
#include "tfq/states.hpp"

namespace tfq {

// 1/(2(1 + e^{-D^2/2s^2})), or 3/(4(...)) with PNR detectors.
double analytic_success(double delta, double sigma, bool pnr);
// Same law written with the squared logical overlap.
double analytic_success_from_overlap(double overlap_squared, bool pnr);

struct TeleportCoefficients {
  double sigma = 0.0;
  double sigma_tilde = 0.0;
  // Double quadrature of the defining integrals.
  cplx a;
  cplx b;
  // Closed forms as printed, and the full tooth-pair Gaussian series.
  cplx a_closed;
  cplx b_closed;
  cplx a_series;
  cplx b_series;
  double a_deviation = 0.0;  // |closed - quadrature| / |quadrature|
  double b_deviation = 0.0;
  bool a_flagged = false;
  bool b_flagged = false;
};

TeleportCoefficients teleport_coefficients(double sigma, double sigma_tilde,
                                           double kappa, double kappa_tilde,
                                           double omega_bar);

enum class PauliOp { I, X, Z, XZ };  // XZ: Z first, then X
std::string to_string(PauliOp p);

// Z for GKP: binned parity (-1)^{round(w/wb)}, or the delay line e^{i pi w/wb}.
enum class ZVariant { binned, delay_line };

SpectralAmplitude pauli_correct(const SpectralAmplitude& a, PauliOp op,
                                const EncodingParams& params,
                                ZVariant z = ZVariant::binned);
PhotonicState pauli_correct(const PhotonicState& state, const std::string& mode,
                            PauliOp op, const EncodingParams& params,
                            ZVariant z = ZVariant::binned);

double state_fidelity(const PhotonicState& a, const PhotonicState& b);
double state_fidelity(const SpectralAmplitude& a, const SpectralAmplitude& b);

// Detected-mode names by logical role after the per-arm interferometers.
inline const char* kA0 = "a0";
inline const char* kA1 = "a1";
inline const char* kB0 = "b0";
inline const char* kB1 = "b1";

// Coincidence patterns each Bell state leaves on the four detectors.
using BellTable = std::map<BellVariant, std::vector<Pattern>>;
const BellTable& bell_pattern_table();
// Runs the four Bell states through the detection chain (PNR, no filters).
BellTable derive_bell_table(const EncodingParams& params,
                            const FrequencyGrid& grid);

// Pauli that maps the heralded resource-side state back to the input.
PauliOp recovery_pauli(BellVariant resource, BellVariant outcome);

struct TeleportConfig {
  QubitSpec input;
  // Tilde widths; defaults to half the input widths.
  std::optional<EncodingParams> epr;
  BellVariant variant = BellVariant::psi_plus;
  DetectorKind detectors = DetectorKind::threshold;
  FrequencyGrid grid;
  ZVariant z = ZVariant::binned;
};

EncodingParams resolved_epr(const TeleportConfig& cfg);
void validate(const TeleportConfig& cfg);

struct PatternReport {
  Pattern pattern;
  double probability = 0.0;      // two-photon part, heralded
  double raw_probability = 0.0;
  bool accepted = false;
  bool ambiguous = false;
  std::optional<BellVariant> bell;
  PauliOp pauli = PauliOp::I;
  double fidelity = 0.0;         // accepted patterns only
  // Principal member of the heralded state on C, after the Pauli.
  std::optional<SpectralAmplitude> corrected;
};

struct TeleportReport {
  std::vector<PatternReport> per_pattern;
  double heralding_probability = 0.0;  // both photons reach the detectors
  double total_success = 0.0;
  double total_success_optimistic = 0.0;
  double raw_success = 0.0;
  double ambiguous_probability = 0.0;  // heralded
  double analytic_success = 0.0;
  double mean_fidelity = 0.0;
  double completeness = 0.0;           // sum of all pattern probabilities
};

TeleportReport run_teleport(const TeleportConfig& cfg);

enum class MeasuredVariable { time, frequency };

struct CorrectionResult {
  double outcome = 0.0;   // sampled ancilla value
  double syndrome = 0.0;  // deviation from the nearest lattice point
  SpectralAmplitude conditional;  // signal before the displacement
  SpectralAmplitude corrected;
};

// Ancilla = second argument of `joint`. resolution 0: grid-resolved
// projection; otherwise projection onto a Gaussian mode of that width.
CorrectionResult entanglement_correct_round(const JointAmplitude& joint,
                                            MeasuredVariable measure,
                                            double resolution,
                                            double lattice_period,
                                            std::uint64_t seed);

// Nearest lattice point, ties toward zero.
double lattice_deviation(double x, double period);
// rms distance to the nearest lattice point under a density on sample points.
double lattice_peak_width(const std::vector<double>& x,
                          const std::vector<double>& density, double period);
double lattice_peak_width(const TimeAmplitude& t, double period);
double lattice_peak_width(const SpectralAmplitude& a, double period);

}  // namespace tfq
