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

#include "tfq/states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace tfq {
namespace {

constexpr double kEnvelopeCut = 1e-8;

bool on_lattice(double x, double step) {
  double r = x / step;
  return std::abs(r - std::round(r)) < 1e-9;
}

// Teeth of the requested parity (-1 = all) that survive truncation.
std::vector<int> teeth(const GkpParams& p, int parity) {
  const int nmax = p.truncation();
  std::vector<int> out;
  for (int n = -nmax; n <= nmax; ++n) {
    int par = ((n % 2) + 2) % 2;
    if (parity < 0 || par == parity) out.push_back(n);
  }
  return out;
}

CVec comb_samples(const GkpParams& p, int parity, const FrequencyGrid& grid) {
  validate(p);
  CVec out(grid.n_points);
  const double dw = grid.d_omega();
  if (p.monochromatic()) {
    if (!on_lattice(p.omega_bar, dw) || !on_lattice(-grid.omega_min, dw)) {
      throw UnresolvablePeak(
          "monochromatic comb needs teeth on grid samples (omega_bar and 0 "
          "must be whole numbers of steps)");
    }
    for (int n : teeth(p, parity)) {
      double w = n * p.omega_bar;
      double idx = std::round((w - grid.omega_min) / dw);
      if (idx < 0 || idx >= static_cast<double>(grid.n_points)) {
        if (p.envelope(n) > kEnvelopeCut) {
          throw OutOfBand("comb tooth outside the band");
        }
        continue;
      }
      out[static_cast<std::size_t>(idx)] += p.envelope(n);
    }
    return out;
  }
  if (p.sigma < 3.0 * dw) throw UnresolvablePeak("tooth width below 3 grid steps");
  const double half = 40.0 * p.sigma;
  const double inv = 1.0 / (2.0 * p.sigma * p.sigma);
  double total = 0.0;
  double clipped = 0.0;
  for (int n : teeth(p, parity)) {
    const double c = p.envelope(n);
    const double w0 = n * p.omega_bar;
    total += c * c;
    clipped += c * c *
               (0.5 * std::erfc((w0 - grid.omega_min) / p.sigma) +
                0.5 * std::erfc((grid.omega_max - w0) / p.sigma));
    auto lo = static_cast<long long>(std::floor((w0 - half - grid.omega_min) / dw));
    auto hi = static_cast<long long>(std::ceil((w0 + half - grid.omega_min) / dw));
    lo = std::max(lo, 0LL);
    hi = std::min(hi, static_cast<long long>(grid.n_points) - 1);
    for (long long j = lo; j <= hi; ++j) {
      double d = grid.omega(static_cast<std::size_t>(j)) - w0;
      out[static_cast<std::size_t>(j)] += c * std::exp(-d * d * inv);
    }
  }
  if (total > 0.0 && clipped / total > 1e-12) {
    throw OutOfBand("comb tails clipped by the band edges");
  }
  return out;
}

}  // namespace

double GkpParams::envelope(int n) const {
  double x = n * omega_bar / kappa;
  return std::exp(-0.5 * x * x);
}

int GkpParams::truncation() const {
  if (n_max > 0) {
    if (envelope(n_max + 1) >= kEnvelopeCut) {
      throw TruncationError("envelope coefficient beyond n_max is >= 1e-8");
    }
    return n_max;
  }
  int n = 0;
  while (envelope(n + 1) >= kEnvelopeCut) ++n;
  return n;
}

Encoding encoding_of(const EncodingParams& p) {
  return std::holds_alternative<CatParams>(p) ? Encoding::cat : Encoding::gkp;
}

void validate(const CatParams& p) {
  if (!(p.sigma > 0.0)) throw ConfigError("cat sigma must be > 0");
  if (p.omega1 == p.omega2) throw ConfigError("cat omega1 must differ from omega2");
  if (!std::isfinite(p.omega1) || !std::isfinite(p.omega2)) {
    throw ConfigError("cat frequencies must be finite");
  }
}

void validate(const GkpParams& p) {
  if (!(p.omega_bar > 0.0)) throw ConfigError("gkp omega_bar must be > 0");
  if (!(p.sigma >= 0.0)) throw ConfigError("gkp sigma must be >= 0");
  if (!(p.kappa > 0.0)) throw ConfigError("gkp kappa must be > 0");
  if (p.n_max < 0) throw ConfigError("gkp n_max must be >= 0");
}

void validate(const EncodingParams& p) {
  std::visit([](const auto& x) { validate(x); }, p);
}

SpectralAmplitude cat_logical(const CatParams& p, int which,
                              const FrequencyGrid& grid) {
  validate(p);
  if (which != 0 && which != 1) throw UsageError("logical index must be 0 or 1");
  return gaussian_amplitude({which == 0 ? p.omega1 : p.omega2, p.sigma}, grid);
}

SpectralAmplitude gkp_logical(const GkpParams& p, int mu,
                              const FrequencyGrid& grid) {
  if (mu != 0 && mu != 1) throw UsageError("logical index must be 0 or 1");
  validate(grid);
  return normalized(SpectralAmplitude(grid, comb_samples(p, mu, grid)));
}

SpectralAmplitude logical_state(const EncodingParams& p, int which,
                                const FrequencyGrid& grid) {
  if (const auto* c = std::get_if<CatParams>(&p)) return cat_logical(*c, which, grid);
  return gkp_logical(std::get<GkpParams>(p), which, grid);
}

std::function<double(double)> cat_function(const CatParams& p, int which) {
  const double w0 = which == 0 ? p.omega1 : p.omega2;
  const double s = p.sigma;
  return [w0, s](double w) {
    double d = w - w0;
    return std::exp(-d * d / (2.0 * s * s));
  };
}

std::function<double(double)> comb_function(const GkpParams& p, int parity) {
  validate(p);
  const int nmax = p.truncation();
  const double s = p.sigma;
  const double wb = p.omega_bar;
  const GkpParams q = p;
  // Only teeth within 40 widths contribute at double precision.
  return [q, nmax, s, wb, parity](double w) {
    const int lo = std::max(-nmax, static_cast<int>(std::floor((w - 40.0 * s) / wb)));
    const int hi = std::min(nmax, static_cast<int>(std::ceil((w + 40.0 * s) / wb)));
    double acc = 0.0;
    for (int n = lo; n <= hi; ++n) {
      if (parity >= 0 && ((n % 2) + 2) % 2 != parity) continue;
      const double d = w - n * wb;
      acc += q.envelope(n) * std::exp(-d * d / (2.0 * s * s));
    }
    return acc;
  };
}

SpectralAmplitude make_qubit(const QubitSpec& spec, const FrequencyGrid& grid) {
  if (std::norm(spec.alpha) + std::norm(spec.beta) <= 0.0) {
    throw ConfigError("alpha and beta cannot both vanish");
  }
  auto zero = logical_state(spec.params, 0, grid);
  auto one = logical_state(spec.params, 1, grid);
  SpectralAmplitude raw = spec.alpha * zero + spec.beta * one;
  if (norm_squared(raw) < 1e-24) {
    throw DegenerateQubit("alpha|0> + beta|1> has vanishing norm");
  }
  return normalized(raw);
}

std::pair<cplx, cplx> GramSchmidtResult::coefficients(cplx alpha,
                                                      cplx beta) const {
  return {alpha + beta * overlap, beta / n_factor};
}

GramSchmidtResult gram_schmidt(const SpectralAmplitude& q0,
                               const SpectralAmplitude& q1) {
  cplx r = inner_product(q0, q1);
  double ar = std::abs(r);
  if (ar > 1.0 - 1e-9) throw ParallelStates("inputs are (nearly) parallel");
  double n = 1.0 / std::sqrt(1.0 - ar * ar);
  SpectralAmplitude b = cplx{n, 0.0} * (q1 - r * q0);
  return {q0, b, r, n};
}

std::string to_string(BellVariant v) {
  switch (v) {
    case BellVariant::phi_plus: return "phi+";
    case BellVariant::phi_minus: return "phi-";
    case BellVariant::psi_plus: return "psi+";
    case BellVariant::psi_minus: return "psi-";
  }
  return "?";
}

BellVariant bell_variant_from_string(const std::string& s) {
  if (s == "phi+") return BellVariant::phi_plus;
  if (s == "phi-") return BellVariant::phi_minus;
  if (s == "psi+") return BellVariant::psi_plus;
  if (s == "psi-") return BellVariant::psi_minus;
  throw ConfigError("unknown Bell variant '" + s + "'");
}

EprDecomposition epr_decomposition(const EncodingParams& p, BellVariant v,
                                   const FrequencyGrid& grid) {
  EprDecomposition d;
  d.zero = logical_state(p, 0, grid);
  d.one = logical_state(p, 1, grid);
  switch (v) {
    case BellVariant::phi_plus: d.terms = {{1.0, 0, 0}, {1.0, 1, 1}}; break;
    case BellVariant::phi_minus: d.terms = {{1.0, 0, 0}, {-1.0, 1, 1}}; break;
    case BellVariant::psi_plus: d.terms = {{1.0, 0, 1}, {1.0, 1, 0}}; break;
    case BellVariant::psi_minus: d.terms = {{1.0, 0, 1}, {-1.0, 1, 0}}; break;
  }
  const cplx g01 = inner_product(d.zero, d.one);
  auto ov = [&](int a, int b) -> cplx {
    if (a == b) return 1.0;
    return a == 0 ? g01 : std::conj(g01);
  };
  cplx n2{0.0, 0.0};
  for (const auto& a : d.terms) {
    for (const auto& b : d.terms) {
      n2 += std::conj(a.weight) * b.weight * ov(a.first_logical, b.first_logical) *
            ov(a.second_logical, b.second_logical);
    }
  }
  d.normalization = 1.0 / std::sqrt(n2.real());
  for (auto& t : d.terms) t.weight *= d.normalization;
  return d;
}

PhotonicState epr_pair(const EncodingParams& p, BellVariant v,
                       const std::string& mode_a, const std::string& mode_b,
                       const FrequencyGrid& grid) {
  if (mode_a == mode_b) throw UsageError("EPR pair needs two distinct modes");
  auto d = epr_decomposition(p, v, grid);
  PhotonicState s(grid);
  for (const auto& t : d.terms) {
    const auto& f = t.first_logical == 0 ? d.zero : d.one;
    const auto& g = t.second_logical == 0 ? d.zero : d.one;
    s.add_pair(mode_a, f.samples, mode_b, g.samples, t.weight);
  }
  return s;
}

JointAmplitude jsa_build(const JsaShape& shape, const FrequencyGrid& grid) {
  validate(grid);
  validate(shape.comb);
  if (!(shape.kappa_plus > 0.0) || !(shape.kappa_minus > 0.0)) {
    throw ConfigError("JSA envelope widths must be > 0");
  }
  if (shape.comb.sigma < 3.0 * grid.d_omega()) {
    throw UnresolvablePeak("comb tooth width below 3 grid steps");
  }
  const double kp = shape.kappa_plus;
  const double km = shape.kappa_minus;
  auto fp = [kp](double x) { return std::exp(-x * x / (2.0 * kp * kp)); };
  auto fm = [km](double x) { return std::exp(-x * x / (2.0 * km * km)); };
  const double r2 = 1.0 / std::numbers::sqrt2;
  JointAmplitude j;
  if (shape.form == JsaShape::Form::spdc_cavity) {
    CVec f = comb_samples(shape.comb, -1, grid);
    const std::size_t n = grid.n_points;
    CVec d(n * n);
    for (std::size_t a = 0; a < n; ++a) {
      const double ws = grid.omega(a);
      for (std::size_t b = 0; b < n; ++b) {
        const double wi = grid.omega(b);
        d[a * n + b] = fp((ws + wi) * r2) * fm((ws - wi) * r2) * f[a] * f[b];
      }
    }
    j = JointAmplitude::from_dense(grid, std::move(d));
  } else {
    shape.comb.truncation();
    auto f = comb_function(shape.comb, -1);
    j = JointAmplitude::from_function(grid, [&](double ws, double wi) {
      const double p = (ws + wi) * r2;
      const double m = (ws - wi) * r2;
      return cplx{fp(p) * fm(m) * f(p) * f(m), 0.0};
    });
  }
  const double n2 = j.norm_squared();
  if (!(n2 > 0.0)) throw OutOfBand("joint amplitude vanishes on the grid");
  j.scale(1.0 / std::sqrt(n2));
  return j;
}

namespace closed_form {

double cat_overlap(double delta, double sigma) {
  return std::exp(-delta * delta / (4.0 * sigma * sigma));
}

double cat_overlap_squared(double delta, double sigma) {
  return std::exp(-delta * delta / (2.0 * sigma * sigma));
}

double epr_normalization(double delta, double sigma) {
  return 1.0 / std::sqrt(2.0 + 2.0 * cat_overlap_squared(delta, sigma));
}

double qubit_normalization(cplx alpha, cplx beta, cplx overlap) {
  double n2 = std::norm(alpha) + std::norm(beta) +
              2.0 * (std::conj(alpha) * beta * overlap).real();
  return 1.0 / std::sqrt(n2);
}

double gkp_overlap(const GkpParams& p) {
  const int nmax = p.truncation();
  double cross = 0.0;
  double se = 0.0;
  double so = 0.0;
  for (int n = -nmax; n <= nmax; ++n) {
    double c = p.envelope(n);
    if (n % 2 == 0) se += c * c; else so += c * c;
  }
  for (int n = -nmax; 2 * n + 1 <= nmax; ++n) {
    if (2 * n < -nmax) continue;
    cross += p.envelope(2 * n) * p.envelope(2 * n + 1);
  }
  double g = std::exp(-p.omega_bar * p.omega_bar / (4.0 * p.sigma * p.sigma));
  return g * cross / std::sqrt(se * so);
}

double gkp_overlap_series(const GkpParams& p) {
  auto even = teeth(p, 0);
  auto odd = teeth(p, 1);
  auto pair_sum = [&](const std::vector<int>& a, const std::vector<int>& b) {
    double acc = 0.0;
    for (int n : a) {
      for (int m : b) {
        double d = (n - m) * p.omega_bar;
        acc += p.envelope(n) * p.envelope(m) *
               std::exp(-d * d / (4.0 * p.sigma * p.sigma));
      }
    }
    return acc;
  };
  return pair_sum(even, odd) / std::sqrt(pair_sum(even, even) * pair_sum(odd, odd));
}

double gkp_norm_constant(const GkpParams& p, int mu) {
  double s = 0.0;
  for (int n : teeth(p, mu)) s += p.envelope(n) * p.envelope(n);
  return 1.0 / std::sqrt(s * std::sqrt(std::numbers::pi * p.sigma * p.sigma));
}

}  // namespace closed_form

}  // namespace tfq
