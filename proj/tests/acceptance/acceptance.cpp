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

// Acceptance run: one PASS/FAIL line per criterion, with the numbers behind
// it, followed by data tables in the layout of the figures.

#include <fmt/core.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "tfq/tfq.hpp"

using namespace tfq;

namespace {

constexpr double kPi = std::numbers::pi;
const double kR2 = 1.0 / std::numbers::sqrt2;

int failures = 0;

void verdict(int id, bool pass, const std::string& what) {
  fmt::print("criterion {:2d}: {} - {}\n", id, pass ? "PASS" : "FAIL", what);
  if (!pass) ++failures;
  std::fflush(stdout);
}

void detail(const std::string& s) { fmt::print("    {}\n", s); }

TeleportConfig cat_config(double d_over_s, DetectorKind k) {
  const double h = d_over_s / 2.0;
  TeleportConfig c;
  c.input = {kR2, kR2, CatParams{-h, h, 1.0}};
  c.grid = FrequencyGrid::make(-h - 12.0, h + 12.0, 512);
  c.detectors = k;
  return c;
}

double dist(const SpectralAmplitude& a, const SpectralAmplitude& b) {
  return std::sqrt(norm_squared(a - b));
}

double state_dist(const PhotonicState& a, const PhotonicState& b) {
  return std::sqrt(std::abs(a.norm_squared() + b.norm_squared() - 2.0 * inner_product(a, b).real()));
}

struct Quad {
  double lo, hi;
  std::vector<double> breaks;
  double operator()(const oracle::RealFn& f) const { return oracle::integrate(f, lo, hi, breaks); }
};

Quad comb_quad(const GkpParams& p, const GkpParams& q) {
  const double h = (std::max(p.truncation(), q.truncation()) + 1.0) * p.omega_bar;
  return {-h, h, oracle::lattice_breaks(-h, h, 0.0, p.omega_bar)};
}

void criterion1() {
  bool ok = true;
  for (double d : {2.0, 4.0, 6.0, 10.0}) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = run_teleport(cat_config(d, DetectorKind::threshold));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const double diff = std::abs(r.total_success - r.analytic_success);
    const bool pass = diff < 1e-3 && secs < 30.0;
    ok = ok && pass;
    detail(fmt::format("D/s = {:4.1f}: simulated {:.6f}  formula {:.6f}  |diff| {:.2e}  ({:.2f} s) {}",
                       d, r.total_success, r.analytic_success, diff, secs, pass ? "ok" : "off"));
  }
  verdict(1, ok, "threshold teleport success against 1/(2(1+exp(-D^2/2s^2)))");
}

void criterion2() {
  const auto r = run_teleport(cat_config(10.0, DetectorKind::pnr));
  auto matched = cat_config(10.0, DetectorKind::pnr);
  matched.epr = CatParams{-5.0, 5.0, 1.0};
  const auto m = run_teleport(matched);
  const double target = analytic_success(10.0, 1.0, true);
  detail(fmt::format("strict success {:.6f}, ambiguous (bunched Phi+/Phi-) {:.6f}, optimistic {:.6f}, formula {:.6f}",
                     r.total_success, r.ambiguous_probability, r.total_success_optimistic, target));
  detail(fmt::format("equal-width resource: strict {:.6f}, optimistic {:.6f}", m.total_success,
                     m.total_success_optimistic));
  const bool reached = std::abs(r.total_success - target) < 1e-3;
  const bool documented = !reached && r.ambiguous_probability > 0.0 &&
                          std::abs(r.total_success - 0.5) < 1e-3 &&
                          std::abs(m.total_success_optimistic - target) < 1e-3;
  if (documented) {
    detail("Phi+ and Phi- leave identical bunching patterns, so PNR cannot tell them apart;");
    detail("they are rejected and the shortfall to 3/4 is the ambiguous share reported above");
  }
  verdict(2, reached || documented, reached ? "PNR success reaches 3/4" : "PNR shortfall documented");
}

void criterion3() {
  // Fibonacci points on the Bloch sphere.
  double lo = 1.0, hi = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / 20.0;
    const double th = std::acos(z);
    const double ph = i * kPi * (3.0 - std::sqrt(5.0));
    auto c = cat_config(10.0, DetectorKind::threshold);
    c.input.alpha = std::cos(th / 2);
    c.input.beta = std::polar(std::sin(th / 2), ph);
    const double s = run_teleport(c).total_success;
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  detail(fmt::format("20 Bloch points at D = 10s: min {:.12f} max {:.12f}", lo, hi));
  verdict(3, hi - lo < 1e-6, fmt::format("success independent of alpha, beta (spread {:.2e})", hi - lo));
}

void criterion4() {
  bool ok = true;
  const auto g = FrequencyGrid::centered(1.0 / 128.0, 32768);
  for (double s : {0.05, 0.1, 0.2}) {
    const GkpParams p{1.0, s, 10.0};
    const double num = inner_product(gkp_logical(p, 0, g), gkp_logical(p, 1, g)).real();
    const double printed = closed_form::gkp_overlap(p);
    const double series = closed_form::gkp_overlap_series(p);
    const bool pass = std::abs(num - printed) < 1e-6;
    ok = ok && pass;
    detail(fmt::format("s/wb = {:.2f}: grid {:.6e}  printed form {:.6e}  tooth-pair series {:.6e}  {}", s,
                       num, printed, series, pass ? "ok" : "off"));
  }
  if (!ok) detail("the printed form keeps one of the two nearest odd neighbours of each even tooth");
  verdict(4, ok, "GKP logical overlap against the printed closed form");
}

void criterion5() {
  const auto g = FrequencyGrid::centered(1.0 / 16.0, 4096);
  const GkpParams p{1.0, 0.0, 10.0};
  const auto z = gkp_logical(p, 0, g);
  const auto o = gkp_logical(p, 1, g);
  const auto out = gkp_fqbs(PhotonicState::single("a", make_qubit({kR2, kR2, p}, g)), "a", "b", kPi);
  const auto a = out.single_amplitude("a");
  const auto b = out.single_amplitude("b");
  const double gkp_leak = std::norm(inner_product(z, a)) + std::norm(inner_product(o, b));
  const double gkp_dev = std::sqrt(norm_squared(a - (-kR2) * o) + norm_squared(b - kR2 * z));
  detail(fmt::format("GKP, wb tau = pi: <1|a> = {:+.12f}, <0|b> = {:+.12f}, leakage {:.2e}, deviation {:.2e}",
                     inner_product(o, a).real(), inner_product(z, b).real(), gkp_leak, gkp_dev));

  const CatParams c{-6.0, 6.0, 1.0};
  const auto gc = FrequencyGrid::make(-20.0, 20.0, 1024);
  const auto cz = cat_logical(c, 0, gc);
  const auto co = cat_logical(c, 1, gc);
  const auto cout = cat_fqbs(PhotonicState::single("a", make_qubit({kR2, kR2, c}, gc)), "a", "b", kPi, c);
  const double cat_leak = std::norm(inner_product(co, cout.single_amplitude("a"))) +
                          std::norm(inner_product(cz, cout.single_amplitude("b")));
  detail(fmt::format("cat, D = 12s, phi = pi: leakage {:.2e}", cat_leak));
  verdict(5, gkp_leak < 1e-8 && gkp_dev < 1e-8 && cat_leak < 1e-10, "FQBS separation endpoints");
}

std::vector<double> port_formula(const GkpParams& p, const FrequencyGrid& g, double sign) {
  const auto c0 = comb_function(p, 0);
  const auto c1 = comb_function(p, 1);
  const Quad q = comb_quad(p, p);
  const double n0 = q([&](double w) { return c0(w) * c0(w); });
  const double n1 = q([&](double w) { return c1(w) * c1(w); });
  const double ov = q([&](double w) { return c0(w) * c1(w); }) / std::sqrt(n0 * n1);
  std::vector<double> out(g.n_points);
  for (std::size_t j = 0; j < g.n_points; ++j) {
    const double w = g.omega(j);
    const double v = c0(w) / std::sqrt(n0) + c1(w) / std::sqrt(n1);
    out[j] = 0.25 * std::norm(std::polar(1.0, kPi * w / p.omega_bar) + sign) * v * v / (2.0 * (1.0 + ov));
  }
  return out;
}

void criterion6() {
  bool ok = true;
  const auto g = FrequencyGrid::centered(1.0 / 64.0, 16384);
  for (double s : {0.1, 0.2}) {
    const GkpParams p{1.0, s, 10.0};
    const auto out = gkp_fqbs(PhotonicState::single("a", make_qubit({kR2, kR2, p}, g)), "a", "b", kPi);
    const auto pa = port_spectrum(out, "a");
    const auto pb = port_spectrum(out, "b");
    const auto fa = port_formula(p, g, -1.0);
    const auto fb = port_formula(p, g, 1.0);
    double worst = 0.0;
    double zero = 0.0;
    for (std::size_t j = 0; j < g.n_points; ++j) {
      worst = std::max({worst, std::abs(pa[j] - fa[j]), std::abs(pb[j] - fb[j])});
      const double w = g.omega(j);
      const double n = std::round(w);
      if (std::abs(w - n) < 1e-12) {
        zero = std::max(zero, (static_cast<long>(n) % 2 == 0) ? pa[j] : pb[j]);
      }
    }
    const bool pass = worst < 1e-9 && zero < 1e-20;
    ok = ok && pass;
    detail(fmt::format("s/wb = {:.1f}: max |P_sim - P_formula| {:.2e}, largest density at the nulls {:.2e}", s,
                       worst, zero));
  }
  verdict(6, ok, "imperfect-separation port spectra against the direct formula");
}

void criterion7() {
  // Monochromatic pair of even combs: no coincidences at all.
  const auto gm = FrequencyGrid::centered(1.0 / 16.0, 4096);
  const GkpParams pm{1.0, 0.0, 10.0};
  const GkpParams qm{1.0, 0.0, 6.0};
  DetectorAssignment det;
  det["a"] = Detector{std::nullopt, {DetectorKind::pnr}};
  det["b"] = Detector{std::nullopt, {DetectorKind::pnr}};
  const auto ab = Pattern::of({{"a", 1}, {"b", 1}});
  auto coincidence = [&](const PhotonicState& in, double& total) {
    const auto r = detect_pattern_probabilities(gkp_fqbs(in, "a", "b", kPi), det);
    total = 0.0;
    for (const auto& x : r) total += x.probability;
    const auto* x = find_record(r, ab);
    return x ? x->probability : 0.0;
  };
  double t0 = 0.0;
  const double c00 =
      coincidence(PhotonicState::pair("a", gkp_logical(pm, 0, gm), "a", gkp_logical(qm, 0, gm)).normalized(), t0);
  detail(fmt::format("|0 0~>, monochromatic: coincidence {:.2e}, total {:.12f}", c00, t0));

  // Finite teeth: even photon width s, odd photon width s~.
  const auto g = FrequencyGrid::centered(1.0 / 128.0, 16384);
  const GkpParams p{1.0, 0.2, 10.0};
  const GkpParams q{1.0, 0.1, 10.0};
  double t1 = 0.0;
  const double c01 =
      coincidence(PhotonicState::pair("a", gkp_logical(p, 0, g), "a", gkp_logical(q, 1, g)).normalized(), t1);
  const auto u = comb_function(p, 0);
  const auto v = comb_function(q, 1);
  const Quad qd = comb_quad(p, q);
  const double nu = qd([&](double w) { return u(w) * u(w); });
  const double nv = qd([&](double w) { return v(w) * v(w); });
  auto sn = [](double w) { return std::pow(std::sin(kPi * w / 2), 2); };
  auto cs = [](double w) { return std::pow(std::cos(kPi * w / 2), 2); };
  // Squared norms of the four components: right port (G) and wrong port (E).
  const double g0 = qd([&](double w) { return cs(w) * u(w) * u(w); }) / nu;
  const double e0 = qd([&](double w) { return sn(w) * u(w) * u(w); }) / nu;
  const double g1 = qd([&](double w) { return sn(w) * v(w) * v(w); }) / nv;
  const double e1 = qd([&](double w) { return cs(w) * v(w) * v(w); }) / nv;
  const double xs = qd([&](double w) { return sn(w) * u(w) * v(w); }) / std::sqrt(nu * nv);
  const double xc = qd([&](double w) { return cs(w) * u(w) * v(w); }) / std::sqrt(nu * nv);
  const double norm = 1.0 + std::pow(xs + xc, 2);
  const double expected = (g0 * g1 + e0 * e1 + 2.0 * xs * xc) / norm;
  detail(fmt::format("|0 1~>, s = 0.2, s~ = 0.1: |0_G|^2 {:.9f} |1_G|^2 {:.9f} |0_E|^2 {:.3e} |1_E|^2 {:.3e}",
                     g0, g1, e0, e1));
  detail(fmt::format("  coincidence simulated {:.12f}, from the G/E terms {:.12f}, total probability {:.12f}",
                     c01, expected, t1));
  verdict(7, c00 < 1e-8 && std::abs(t0 - 1.0) < 1e-9 && std::abs(c01 - expected) < 1e-9 &&
                 std::abs(t1 - 1.0) < 1e-9,
          "two-photon comb separation");
}

void criterion8() {
  const auto ideal = teleport_coefficients(0.01, 0.01, 10.0, 10.0, 1.0);
  detail(fmt::format("ideal limit (s = s~ = 0.01 wb): a = {:.9f}, b = {:.2e}", ideal.a.real(), std::abs(ideal.b)));
  bool flags_consistent = true;
  for (auto [s, st] : {std::pair{0.05, 0.05}, {0.1, 0.05}, {0.2, 0.2}, {0.2, 0.1}}) {
    const auto r = teleport_coefficients(s, st, 10.0, 10.0, 1.0);
    flags_consistent = flags_consistent && (r.a_flagged == (r.a_deviation > 1e-3));
    detail(fmt::format("s = {:.2f}, s~ = {:.2f}: a quad {:.9f} printed {:+.6f}{:+.6f}i dev {:.2e}{}", s, st,
                       r.a.real(), r.a_closed.real(), r.a_closed.imag(), r.a_deviation,
                       r.a_flagged ? " FLAGGED" : ""));
    detail(fmt::format("                     b quad {:+.3e} printed {:+.6f}{:+.6f}i{}", r.b.real(),
                       r.b_closed.real(), r.b_closed.imag(), r.b_flagged ? " FLAGGED" : ""));
  }
  verdict(8, std::abs(ideal.a.real() - 2.0) < 1e-3 && std::abs(ideal.b) < 1e-3 && flags_consistent,
          "teleport coefficients: ideal limit, finite widths reported with flags");
}

void criterion9() {
  bool ok = true;
  const auto g = FrequencyGrid::make(-20.0, 20.0, 4096);
  const auto s = PhotonicState::single("a", gaussian_amplitude({0.0, 1.0}, g));
  const double tau0 = gaussian_width(to_time_domain(s.single_amplitude("a")));
  for (double r : {0.5, 1.0, 2.0}) {
    const double tc = r * tau0;
    const auto d = apply_dispersion(s, "a", tc * tc);
    const double tau = gaussian_width(to_time_domain(d.single_amplitude("a")));
    const double law = tau0 * std::sqrt(1.0 + std::pow(tc / tau0, 4));
    const double rel = std::abs(tau / law - 1.0);
    ok = ok && rel < 5e-3;
    detail(fmt::format("tc/t0 = {:.1f}: simulated {:.9f}  law {:.9f}  rel {:.2e}", r, tau, law, rel));
  }
  verdict(9, ok, "dispersion broadening law");
}

void criterion10() {
  bool ok = true;
  auto check = [&](bool pass, const std::string& what) {
    ok = ok && pass;
    detail(fmt::format("{:<58} {}", what, pass ? "ok" : "off"));
  };
  const auto g = FrequencyGrid::make(-20.0, 20.0, 1024);
  const auto u = gaussian_amplitude({-1.0, 1.0}, g);
  const auto v = apply_phase(gaussian_amplitude({2.0, 0.7}, g), [](double w) { return 0.3 * w; });
  PhotonicState s = PhotonicState::pair("a", u, "b", v).scaled(std::sqrt(0.5));
  s.add(PhotonicState::single("a", v), std::sqrt(0.3));
  s.add_vacuum(std::sqrt(0.2));
  s = s.normalized();

  double worst = 0.0;
  for (const ElementSpec& e : std::vector<ElementSpec>{BeamSplitter{"a", "b"},
                                                     PhaseMask{"b", [](double w) { return std::sin(w); }},
                                                     Delay{"a", 3.0}, Dispersion{"b", 1.5}}) {
    worst = std::max(worst, std::abs(apply_element(s, e).norm_squared() - 1.0));
  }
  const CatParams cp{-3.0, 3.0, 1.0};
  worst = std::max(worst, std::abs(cat_fqbs(s, "a", "b", 1.1, cp).norm_squared() - 1.0));
  worst = std::max(worst, std::abs(gkp_fqbs(s, "a", "b", 0.7).norm_squared() - 1.0));
  check(worst < 1e-10, fmt::format("norm under every element: max drift {:.2e}", worst));

  const double inv = state_dist(apply_circuit(s, {BeamSplitter{"a", "b"}, BeamSplitter{"a", "b"}}), s);
  check(inv < 1e-10, fmt::format("beam splitter applied twice: distance {:.2e}", inv));

  double comp = 0.0;
  for (double d : {2.0, 6.0}) {
    comp = std::max(comp, std::abs(run_teleport(cat_config(d, DetectorKind::threshold)).completeness - 1.0));
  }
  comp = std::max(comp, [] {
    TeleportConfig c;
    c.input = {0.6, cplx{0.0, 0.8}, GkpParams{1.0, 0.2, 3.0}};
    c.grid = FrequencyGrid::centered(1.0 / 32.0, 2048);
    return std::abs(run_teleport(c).completeness - 1.0);
  }());
  check(comp < 1e-9, fmt::format("pattern completeness: max deviation {:.2e}", comp));

  double pauli = 0.0;
  const auto gc = FrequencyGrid::make(-20.0, 20.0, 512);
  const CatParams c{-6.0, 6.0, 1.0};
  const auto gg = FrequencyGrid::centered(1.0 / 32.0, 4096);
  const GkpParams k{1.0, 0.1, 6.0};
  for (const auto& [q, e] : {std::pair{make_qubit({0.6, cplx{0.0, 0.8}, c}, gc), EncodingParams{c}},
                             std::pair{make_qubit({0.6, cplx{0.0, 0.8}, k}, gg), EncodingParams{k}}}) {
    for (PauliOp op : {PauliOp::X, PauliOp::Z}) {
      pauli = std::max(pauli, dist(pauli_correct(pauli_correct(q, op, e), op, e), q));
    }
  }
  check(pauli < 1e-9, fmt::format("X^2 = Z^2 = 1 on cat and GKP qubits: max distance {:.2e}", pauli));

  const CatParams c4{-2.0, 2.0, 1.0};
  const auto coarse = FrequencyGrid::make(-20.0, 20.0, 512);
  const double o1 = inner_product(cat_logical(c4, 0, coarse), cat_logical(c4, 1, coarse)).real();
  const double o2 = inner_product(cat_logical(c4, 0, coarse.refined()), cat_logical(c4, 1, coarse.refined())).real();
  const GkpParams k2{1.0, 0.2, 4.0};
  const auto gk = FrequencyGrid::centered(1.0 / 32.0, 2048);
  const double k1 = inner_product(gkp_logical(k2, 0, gk), gkp_logical(k2, 1, gk)).real();
  const double kk = inner_product(gkp_logical(k2, 0, gk.refined()), gkp_logical(k2, 1, gk.refined())).real();
  const double conv = std::max(std::abs(o1 - o2), std::abs(k1 - kk));
  check(conv < 1e-8, fmt::format("overlaps under grid doubling: max change {:.2e}", conv));

  verdict(10, ok, "invariant suite");
}

void figure1() {
  fmt::print("\nFig. 1 layout: logical densities (cat D = 4s, s = 0.4; GKP s = 0.1, kappa = 3)\n");
  const auto gc = FrequencyGrid::make(-16.0, 16.0, 1024);
  const CatParams c{-2.0, 2.0, 0.4};
  const auto c0 = cat_logical(c, 0, gc);
  const auto c1 = cat_logical(c, 1, gc);
  const auto gg = FrequencyGrid::centered(1.0 / 64.0, 2048);
  const GkpParams k{1.0, 0.1, 3.0};
  const auto k0 = gkp_logical(k, 0, gg);
  const auto k1 = gkp_logical(k, 1, gg);
  fmt::print("  {:>8} {:>12} {:>12} | {:>8} {:>12} {:>12}\n", "w/D", "|0|^2", "|1|^2", "w/wb", "|0|^2", "|1|^2");
  for (int i = -8; i <= 8; ++i) {
    const double wc = i * 0.125 * 4.0;
    const double wg = i * 0.5;
    const auto jc = gc.nearest_index(wc);
    const auto jg = gg.nearest_index(wg);
    fmt::print("  {:8.3f} {:12.6f} {:12.6f} | {:8.3f} {:12.6f} {:12.6f}\n", wc / 4.0, std::norm(c0[jc]),
               std::norm(c1[jc]), wg, std::norm(k0[jg]), std::norm(k1[jg]));
  }
}

void figure3() {
  fmt::print("\nFig. 3 layout: Bell-state coincidence routing\n");
  const auto cat = derive_bell_table(CatParams{-6.0, 6.0, 1.0}, FrequencyGrid::make(-20.0, 20.0, 512));
  const auto gkp = derive_bell_table(GkpParams{1.0, 0.0, 1.5, 0}, FrequencyGrid::centered(1.0 / 64.0, 2048));
  for (const auto& [v, pats] : bell_pattern_table()) {
    std::string s;
    for (const auto& p : pats) s += (s.empty() ? "" : "  ") + p.label();
    fmt::print("  {:<10} {:<40} cat {}  gkp {}\n", to_string(v), s, cat.at(v) == pats ? "same" : "differs",
               gkp.at(v) == pats ? "same" : "differs");
  }
}

void figure4() {
  fmt::print("\nFig. 4 layout: port densities behind the delay interferometer (kappa = 10 wb)\n");
  const auto g = FrequencyGrid::centered(1.0 / 64.0, 16384);
  fmt::print("  {:>6} {:>12} {:>12} {:>12} {:>12}\n", "w/wb", "Pa s=0.1", "Pb s=0.1", "Pa s=0.2", "Pb s=0.2");
  std::vector<std::vector<double>> cols;
  for (double s : {0.1, 0.2}) {
    const GkpParams p{1.0, s, 10.0};
    const auto out = gkp_fqbs(PhotonicState::single("a", make_qubit({kR2, kR2, p}, g)), "a", "b", kPi);
    cols.push_back(port_spectrum(out, "a"));
    cols.push_back(port_spectrum(out, "b"));
  }
  for (int i = -8; i <= 8; ++i) {
    const double w = i * 0.25;
    const auto j = g.nearest_index(w);
    fmt::print("  {:6.2f} {:12.6f} {:12.6f} {:12.6f} {:12.6f}\n", w, cols[0][j], cols[1][j], cols[2][j], cols[3][j]);
  }
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  figure1();
  figure3();
  figure4();
  fmt::print("\n{} of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
