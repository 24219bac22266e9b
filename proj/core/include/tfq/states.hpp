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

#include <functional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "tfq/joint.hpp"
#include "tfq/photonic_state.hpp"
#include "tfq/spectral.hpp"

namespace tfq {

struct CatParams {
  double omega1 = -0.5;
  double omega2 = 0.5;
  double sigma = 0.05;

  double delta() const { return omega2 - omega1; }
  double midpoint() const { return 0.5 * (omega1 + omega2); }
};

// Comb with teeth at n * omega_bar, tooth width sigma and Gaussian envelope
// c_n = exp(-(n omega_bar / kappa)^2 / 2). sigma = 0 selects the
// monochromatic limit: one grid sample per tooth.
struct GkpParams {
  double omega_bar = 1.0;
  double sigma = 0.1;
  double kappa = 10.0;
  int n_max = 0;  // 0: smallest n with |c_n| < 1e-8 beyond it

  double envelope(int n) const;
  int truncation() const;
  bool monochromatic() const { return sigma == 0.0; }
};

using EncodingParams = std::variant<CatParams, GkpParams>;
enum class Encoding { cat, gkp };

Encoding encoding_of(const EncodingParams& p);
void validate(const CatParams& p);
void validate(const GkpParams& p);
void validate(const EncodingParams& p);

struct QubitSpec {
  cplx alpha{1.0, 0.0};
  cplx beta{0.0, 0.0};
  EncodingParams params = CatParams{};
};

SpectralAmplitude cat_logical(const CatParams& p, int which,
                              const FrequencyGrid& grid);
SpectralAmplitude gkp_logical(const GkpParams& p, int mu,
                              const FrequencyGrid& grid);
SpectralAmplitude logical_state(const EncodingParams& p, int which,
                                const FrequencyGrid& grid);

// Unnormalized continuous wavefunctions, for grid-free quadrature.
std::function<double(double)> cat_function(const CatParams& p, int which);
// parity: 0 even teeth, 1 odd teeth, -1 all teeth.
std::function<double(double)> comb_function(const GkpParams& p, int parity);

SpectralAmplitude make_qubit(const QubitSpec& spec, const FrequencyGrid& grid);

struct GramSchmidtResult {
  SpectralAmplitude basis_a;
  SpectralAmplitude basis_b;
  cplx overlap;       // <q0|q1>
  double n_factor;    // 1 / sqrt(1 - |<q0|q1>|^2)
  // alpha|0> + beta|1> = c_a |a> + c_b |b>
  std::pair<cplx, cplx> coefficients(cplx alpha, cplx beta) const;
};

GramSchmidtResult gram_schmidt(const SpectralAmplitude& q0,
                               const SpectralAmplitude& q1);

enum class BellVariant { phi_plus, phi_minus, psi_plus, psi_minus };
std::string to_string(BellVariant v);
BellVariant bell_variant_from_string(const std::string& s);

// Logical-label decomposition sum_k w_k |first_k>|second_k> of an EPR state,
// with weights already carrying the numerical normalization.
struct EprTerm {
  cplx weight;
  int first_logical;
  int second_logical;
};
struct EprDecomposition {
  SpectralAmplitude zero;
  SpectralAmplitude one;
  std::vector<EprTerm> terms;
  double normalization;  // N_EPR
};

EprDecomposition epr_decomposition(const EncodingParams& p, BellVariant v,
                                   const FrequencyGrid& grid);
PhotonicState epr_pair(const EncodingParams& p, BellVariant v,
                       const std::string& mode_a, const std::string& mode_b,
                       const FrequencyGrid& grid);

struct JsaShape {
  enum class Form { spdc_cavity, fbs_entangled };
  Form form = Form::spdc_cavity;
  double kappa_plus = 1.0;
  double kappa_minus = 1.0;
  GkpParams comb;
};

JointAmplitude jsa_build(const JsaShape& shape, const FrequencyGrid& grid);

// Closed-form reference values.
namespace closed_form {

double cat_overlap(double delta, double sigma);        // exp(-D^2 / 4 s^2)
double cat_overlap_squared(double delta, double sigma);  // exp(-D^2 / 2 s^2) = overlap^2
double epr_normalization(double delta, double sigma);  // (2 + 2 e^{-D^2/2s^2})^{-1/2}
double qubit_normalization(cplx alpha, cplx beta, cplx overlap);
// e^{-wb^2/4s^2} sum_n c_{2n} c_{2n+1} / sqrt(sum c_{2n}^2 sum c_{2n+1}^2)
double gkp_overlap(const GkpParams& p);
// Full Gaussian-product series over every tooth pair, exact for the comb.
double gkp_overlap_series(const GkpParams& p);
// N_mu from 1 = N^2 sum |c_{2n+mu}|^2 sqrt(pi sigma^2)
double gkp_norm_constant(const GkpParams& p, int mu);

}  // namespace closed_form

}  // namespace tfq
