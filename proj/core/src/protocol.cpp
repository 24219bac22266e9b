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

#include "tfq/protocol.hpp"

#include <cmath>
#include <numbers>

#include "tfq/oracle.hpp"

namespace tfq {
namespace {

constexpr double kFlagTol = 1e-3;

std::vector<int> teeth_of(const GkpParams& p, int parity) {
  const int nmax = p.truncation();
  std::vector<int> out;
  for (int n = -nmax; n <= nmax; ++n) {
    if (((n % 2) + 2) % 2 == parity) out.push_back(n);
  }
  return out;
}

// int e^{i w tau} g_s1(w - x1) g_s2(w - x2) dw, g_s(x) = exp(-x^2/2s^2).
cplx gauss_pair(double x1, double s1, double x2, double s2, double tau) {
  const double v = s1 * s1 + s2 * s2;
  const double a2 = s1 * s1 * s2 * s2 / v;
  const double xm = (x1 * s2 * s2 + x2 * s1 * s1) / v;
  const double d = x1 - x2;
  return std::sqrt(2.0 * std::numbers::pi * a2) * std::exp(-d * d / (2.0 * v)) *
         std::exp(-0.5 * tau * tau * a2) * std::polar(1.0, tau * xm);
}

struct Comb {
  GkpParams p;
  int parity;
};

cplx comb_series(const Comb& f, const Comb& g, double tau) {
  cplx acc{};
  for (int n : teeth_of(f.p, f.parity)) {
    for (int m : teeth_of(g.p, g.parity)) {
      acc += f.p.envelope(n) * g.p.envelope(m) *
             gauss_pair(n * f.p.omega_bar, f.p.sigma, m * g.p.omega_bar, g.p.sigma, tau);
    }
  }
  return acc;
}

double series_norm(const Comb& f) { return std::sqrt(comb_series(f, f, 0.0).real()); }

// int (e^{i w tau} + sign) f g over normalized combs.
cplx series_integral(const Comb& f, const Comb& g, double tau, double sign) {
  return (comb_series(f, g, tau) + sign * comb_series(f, g, 0.0)) /
         (series_norm(f) * series_norm(g));
}

struct Quad {
  double lo;
  double hi;
  std::vector<double> breaks;
};

Quad quad_range(const GkpParams& a, const GkpParams& b) {
  const int n = std::max(a.truncation(), b.truncation()) + 1;
  const double half = n * a.omega_bar + 40.0 * std::max(a.sigma, b.sigma);
  return {-half, half, oracle::lattice_breaks(-half, half, 0.0, a.omega_bar)};
}

cplx quad_integral(const Comb& f, const Comb& g, double tau, double sign,
                   const Quad& q) {
  auto ff = comb_function(f.p, f.parity);
  auto gg = comb_function(g.p, g.parity);
  const oracle::RealFn f2 = [&](double w) { return ff(w) * ff(w); };
  const oracle::RealFn g2 = [&](double w) { return gg(w) * gg(w); };
  const double nf = std::sqrt(oracle::integrate(f2, q.lo, q.hi, q.breaks));
  const double ng = std::sqrt(oracle::integrate(g2, q.lo, q.hi, q.breaks));
  // e^{i w tau} +- 1 in half-angle form, free of cancellation near its zeros.
  const oracle::ComplexFn h = [&](double w) {
    const double x = 0.5 * w * tau;
    const cplx k = sign > 0.0 ? cplx{2.0 * std::cos(x), 0.0} : cplx{0.0, 2.0 * std::sin(x)};
    return k * std::polar(1.0, x) * ff(w) * gg(w);
  };
  const cplx v = oracle::integrate_complex(h, q.lo, q.hi, q.breaks);
  return v / (nf * ng);
}

double rel_dev(cplx x, cplx ref) {
  const double d = std::abs(x - ref);
  const double s = std::abs(ref);
  if (s < 1e-12) return d < 1e-12 ? 0.0 : d / 1e-12;
  return d / s;
}

long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

struct Bins {
  long long m;     // samples per period
  long long i0;    // lattice index of sample 0
};

Bins gkp_bins(const GkpParams& p, const FrequencyGrid& g) {
  const double dw = g.d_omega();
  const double m = p.omega_bar / dw;
  const double i0 = g.omega_min / dw;
  if (std::abs(m - std::round(m)) > 1e-9 || std::abs(i0 - std::round(i0)) > 1e-6) {
    throw GridMismatch("GKP Pauli operators need omega_bar and omega_min on the grid lattice");
  }
  return {std::llround(m), std::llround(i0)};
}

long long bin_of(const Bins& b, long long i) { return floor_div(2 * i + b.m, 2 * b.m); }

SpectralAmplitude gkp_x(const SpectralAmplitude& a, const GkpParams& p) {
  const Bins b = gkp_bins(p, a.grid);
  const auto n = static_cast<long long>(a.samples.size());
  SpectralAmplitude out(a.grid);
  for (long long j = 0; j < n; ++j) {
    const long long bin = bin_of(b, j + b.i0);
    const long long dst = bin % 2 == 0 ? j + b.m : j - b.m;
    if (dst >= 0 && dst < n) out.samples[static_cast<std::size_t>(dst)] = a.samples[static_cast<std::size_t>(j)];
  }
  return out;
}

SpectralAmplitude gkp_z(const SpectralAmplitude& a, const GkpParams& p, ZVariant z) {
  SpectralAmplitude out = a;
  if (z == ZVariant::delay_line) {
    for (std::size_t j = 0; j < out.samples.size(); ++j) {
      out.samples[j] *= std::polar(1.0, std::numbers::pi * a.grid.omega(j) / p.omega_bar);
    }
    return out;
  }
  const Bins b = gkp_bins(p, a.grid);
  for (std::size_t j = 0; j < out.samples.size(); ++j) {
    if (bin_of(b, static_cast<long long>(j) + b.i0) % 2 != 0) out.samples[j] = -out.samples[j];
  }
  return out;
}

SpectralAmplitude cat_z(const SpectralAmplitude& a, const CatParams& p) {
  SpectralAmplitude out = a;
  const double mid = p.midpoint();
  for (std::size_t j = 0; j < out.samples.size(); ++j) {
    if (a.grid.omega(j) > mid) out.samples[j] = -out.samples[j];
  }
  return out;
}

SpectralAmplitude apply_x(const SpectralAmplitude& a, const EncodingParams& e) {
  if (const auto* c = std::get_if<CatParams>(&e)) return reflect(a, c->midpoint());
  return gkp_x(a, std::get<GkpParams>(e));
}

SpectralAmplitude apply_z(const SpectralAmplitude& a, const EncodingParams& e,
                          ZVariant z) {
  if (const auto* c = std::get_if<CatParams>(&e)) return cat_z(a, *c);
  return gkp_z(a, std::get<GkpParams>(e), z);
}

SpectralAmplitude single_mode_amplitude(const PhotonicState& s,
                                              std::string& mode) {
  const double total = s.norm_squared();
  if (!(total > 0.0)) throw SectorMismatch("state has zero norm");
  std::string found;
  for (const auto& [m, v] : s.singles()) {
    SpectralAmplitude a(s.grid());
    a.samples = v;
    if (norm_squared(a) > 1e-12 * total) {
      if (!found.empty()) throw SectorMismatch("photon spread over several modes");
      found = m;
    }
  }
  if (found.empty() || std::norm(s.vacuum_amp()) > 1e-12 * total ||
      s.sector_probability(2) > 1e-12 * total) {
    throw SectorMismatch("state is not a single photon in one mode");
  }
  mode = found;
  return s.single_amplitude(found);
}

}  // namespace

double analytic_success(double delta, double sigma, bool pnr) {
  if (!(sigma > 0.0)) throw ConfigError("sigma must be > 0");
  return analytic_success_from_overlap(
      std::exp(-delta * delta / (2.0 * sigma * sigma)), pnr);
}

double analytic_success_from_overlap(double overlap_squared, bool pnr) {
  return (pnr ? 0.75 : 0.5) / (1.0 + overlap_squared);
}

TeleportCoefficients teleport_coefficients(double sigma, double sigma_tilde,
                                           double kappa, double kappa_tilde,
                                           double omega_bar) {
  if (!(sigma > 0.0) || !(sigma_tilde > 0.0) || !(kappa > 0.0) ||
      !(kappa_tilde > 0.0) || !(omega_bar > 0.0)) {
    throw ConfigError("coefficient widths must be > 0");
  }
  if (omega_bar < 5.0 * std::max(sigma, sigma_tilde)) {
    throw RegimeViolation("comb period below 5 peak widths");
  }
  const GkpParams in{omega_bar, sigma, kappa, 0};
  const GkpParams ep{omega_bar, sigma_tilde, kappa_tilde, 0};
  const double tau = std::numbers::pi / omega_bar;

  TeleportCoefficients r;
  r.sigma = sigma;
  r.sigma_tilde = sigma_tilde;

  const Comb in0{in, 0};
  const Comb in1{in, 1};
  const Comb ep0{ep, 0};
  const Comb ep1{ep, 1};

  r.a_series = -0.5 * series_integral(in0, ep0, tau, 1.0) *
               series_integral(ep1, ep1, tau, -1.0);
  r.b_series = -0.5 * series_integral(in1, ep0, tau, 1.0) *
               series_integral(ep0, ep1, tau, -1.0);

  const Quad q = quad_range(in, ep);
  r.a = -0.5 * quad_integral(in0, ep0, tau, 1.0, q) * quad_integral(ep1, ep1, tau, -1.0, q);
  r.b = -0.5 * quad_integral(in1, ep0, tau, 1.0, q) * quad_integral(ep0, ep1, tau, -1.0, q);

  // Printed forms, with every width combination read literally.
  const double s2 = sigma * sigma;
  const double t2 = sigma_tilde * sigma_tilde;
  const double alpha2 = s2 * t2 / (s2 + t2);
  const double alpha_t2 = t2 * t2 / (t2 + t2);
  const double wb2 = omega_bar * omega_bar;
  const double pi2 = std::numbers::pi * std::numbers::pi;
  const double pre = std::sqrt(sigma_tilde * sigma_tilde) * std::sqrt(sigma * sigma_tilde) /
                     (4.0 * std::sqrt(t2 + s2) * std::sqrt(t2 + t2));
  r.a_closed = pre * (std::exp(-pi2 * alpha2 / (2.0 * wb2)) + 1.0) *
               (-std::exp(-pi2 * alpha_t2 / (2.0 * wb2)) - 1.0);
  double s_eo = 0.0;
  double s_oe = 0.0;
  double s_oo = 0.0;
  double s_ee = 0.0;
  for (int n : teeth_of(in, 0)) {
    s_ee += in.envelope(n) * in.envelope(n);
    s_eo += in.envelope(n) * in.envelope(n + 1);
  }
  for (int m : teeth_of(in, 1)) {
    s_oo += in.envelope(m) * in.envelope(m);
    s_oe += in.envelope(m) * in.envelope(m - 1);
  }
  const double ratio = s_oe * s_eo / (s_oo * s_ee);
  const cplx e = std::exp(-pi2 * alpha2 / (2.0 * wb2)) * std::exp(-wb2 / (2.0 * (t2 + t2))) *
                 std::polar(1.0, std::numbers::pi * t2 / (s2 + t2));
  r.b_closed = pre * ratio * (e + 1.0) * (e - 1.0);

  r.a_deviation = rel_dev(r.a_closed, r.a);
  r.b_deviation = rel_dev(r.b_closed, r.b);
  r.a_flagged = r.a_deviation > kFlagTol;
  r.b_flagged = r.b_deviation > kFlagTol;
  return r;
}

std::string to_string(PauliOp p) {
  switch (p) {
    case PauliOp::I: return "I";
    case PauliOp::X: return "X";
    case PauliOp::Z: return "Z";
    case PauliOp::XZ: return "XZ";
  }
  return "?";
}

SpectralAmplitude pauli_correct(const SpectralAmplitude& a, PauliOp op,
                                const EncodingParams& params, ZVariant z) {
  switch (op) {
    case PauliOp::I: return a;
    case PauliOp::X: return apply_x(a, params);
    case PauliOp::Z: return apply_z(a, params, z);
    case PauliOp::XZ: return apply_x(apply_z(a, params, z), params);
  }
  return a;
}

PhotonicState pauli_correct(const PhotonicState& state, const std::string& mode,
                            PauliOp op, const EncodingParams& params, ZVariant z) {
  state.require_mode(mode);
  const FrequencyGrid g = state.grid();
  return apply_local(state, mode, [&](const CVec& v) {
    SpectralAmplitude a(g);
    a.samples = v;
    return pauli_correct(a, op, params, z).samples;
  });
}

double state_fidelity(const SpectralAmplitude& a, const SpectralAmplitude& b) {
  const double na = norm_squared(a);
  const double nb = norm_squared(b);
  if (!(na > 0.0) || !(nb > 0.0)) throw SectorMismatch("zero-norm amplitude");
  return std::min(1.0, std::norm(inner_product(a, b)) / (na * nb));
}

double state_fidelity(const PhotonicState& a, const PhotonicState& b) {
  std::string ma;
  std::string mb;
  auto sa = single_mode_amplitude(a, ma);
  auto sb = single_mode_amplitude(b, mb);
  if (ma != mb) throw SectorMismatch("photons live in different modes");
  return state_fidelity(sa, sb);
}

double lattice_deviation(double x, double period) {
  const double q = x / period;
  const double k = q > 0.0 ? std::ceil(q - 0.5) : std::floor(q + 0.5);
  return x - k * period;
}

double lattice_peak_width(const std::vector<double>& x,
                          const std::vector<double>& density, double period) {
  double acc = 0.0;
  double tot = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = lattice_deviation(x[i], period);
    acc += density[i] * d * d;
    tot += density[i];
  }
  if (!(tot > 0.0)) throw DegenerateDistribution("empty density");
  return std::sqrt(acc / tot);
}

double lattice_peak_width(const TimeAmplitude& t, double period) {
  std::vector<double> x(t.samples.size());
  std::vector<double> d(t.samples.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    x[k] = t.time(k);
    d[k] = std::norm(t.samples[k]);
  }
  return lattice_peak_width(x, d, period);
}

double lattice_peak_width(const SpectralAmplitude& a, double period) {
  std::vector<double> x(a.samples.size());
  std::vector<double> d(a.samples.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    x[j] = a.grid.omega(j);
    d[j] = std::norm(a.samples[j]);
  }
  return lattice_peak_width(x, d, period);
}

}  // namespace tfq
