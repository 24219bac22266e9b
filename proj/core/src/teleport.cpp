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

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "tfq/protocol.hpp"

namespace tfq {
namespace {

using M2 = std::array<cplx, 4>;  // row-major 2x2

M2 mul(const M2& a, const M2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}
M2 transpose(const M2& a) { return {a[0], a[2], a[1], a[3]}; }
M2 adjoint(const M2& a) {
  return {std::conj(a[0]), std::conj(a[2]), std::conj(a[1]), std::conj(a[3])};
}

// Coefficients of |i>|j> (row i, column j).
M2 bell_matrix(BellVariant v) {
  switch (v) {
    case BellVariant::phi_plus: return {1.0, 0.0, 0.0, 1.0};
    case BellVariant::phi_minus: return {1.0, 0.0, 0.0, -1.0};
    case BellVariant::psi_plus: return {0.0, 1.0, 1.0, 0.0};
    case BellVariant::psi_minus: return {0.0, 1.0, -1.0, 0.0};
  }
  return {};
}

M2 pauli_matrix(PauliOp p) {
  switch (p) {
    case PauliOp::I: return {1.0, 0.0, 0.0, 1.0};
    case PauliOp::X: return {0.0, 1.0, 1.0, 0.0};
    case PauliOp::Z: return {1.0, 0.0, 0.0, -1.0};
    case PauliOp::XZ: return {0.0, -1.0, 1.0, 0.0};
  }
  return {};
}

bool proportional_to_identity(const M2& m) {
  const double s = std::abs(m[0]) + std::abs(m[3]);
  if (s < 1e-12) return false;
  return std::abs(m[1]) < 1e-12 * s && std::abs(m[2]) < 1e-12 * s &&
         std::abs(m[0] - m[3]) < 1e-12 * s;
}

// BS(A, B), a frequency-qubit splitter on each arm, detectors named by the
// logical value they receive.
PhotonicState bell_chain(const PhotonicState& s, const EncodingParams& p) {
  PhotonicState x = apply_element(s, BeamSplitter{"A", "B"});
  if (const auto* c = std::get_if<CatParams>(&p)) {
    x = cat_fqbs(x, "A", "A~", std::numbers::pi, *c);
    x = cat_fqbs(x, "B", "B~", std::numbers::pi, *c);
    return x.renamed("A", kA0).renamed("A~", kA1).renamed("B", kB0).renamed("B~", kB1);
  }
  const double tau = std::numbers::pi / std::get<GkpParams>(p).omega_bar;
  x = gkp_fqbs(x, "A", "A~", tau);
  x = gkp_fqbs(x, "B", "B~", tau);
  return x.renamed("A", kA1).renamed("A~", kA0).renamed("B", kB1).renamed("B~", kB0);
}

FilterSpec matched_filter(const EncodingParams& epr, int logical) {
  if (const auto* c = std::get_if<CatParams>(&epr)) {
    return FilterSpec::band(logical == 0 ? c->omega1 : c->omega2, c->sigma);
  }
  const auto& g = std::get<GkpParams>(epr);
  return FilterSpec::comb(logical, g.omega_bar, g.sigma, g.kappa);
}

void check_frozen_table(const EncodingParams& p) {
  auto check = [](const EncodingParams& ideal, const FrequencyGrid& g) {
    if (derive_bell_table(ideal, g) != bell_pattern_table()) {
      throw NumericalError("Bell pattern table disagrees with the simulated chain");
    }
    return true;
  };
  if (std::holds_alternative<CatParams>(p)) {
    static const bool ok =
        check(CatParams{-6.0, 6.0, 1.0}, FrequencyGrid::make(-20.0, 20.0, 512));
    (void)ok;
  } else {
    static const bool ok = check(GkpParams{1.0, 0.0, 1.5, 0},
                                 FrequencyGrid::centered(1.0 / 64.0, 2048));
    (void)ok;
  }
}

bool in_table(const std::vector<Pattern>& v, const Pattern& p) {
  return std::find(v.begin(), v.end(), p) != v.end();
}

}  // namespace

const BellTable& bell_pattern_table() {
  static const BellTable t = [] {
    auto two = [](const char* a, const char* b) { return Pattern::of({{a, 1}, {b, 1}}); };
    auto bunch = [](const char* a) { return Pattern::of({{a, 2}}); };
    std::vector<Pattern> phi{bunch(kA0), bunch(kA1), bunch(kB0), bunch(kB1)};
    std::vector<Pattern> psi_p{two(kA0, kA1), two(kB0, kB1)};
    std::vector<Pattern> psi_m{two(kA0, kB1), two(kA1, kB0)};
    BellTable out;
    for (auto* v : {&phi, &psi_p, &psi_m}) std::sort(v->begin(), v->end());
    out[BellVariant::phi_plus] = phi;
    out[BellVariant::phi_minus] = phi;
    out[BellVariant::psi_plus] = psi_p;
    out[BellVariant::psi_minus] = psi_m;
    return out;
  }();
  return t;
}

BellTable derive_bell_table(const EncodingParams& params,
                            const FrequencyGrid& grid) {
  validate(params);
  const auto zero = logical_state(params, 0, grid);
  const auto one = logical_state(params, 1, grid);
  DetectorAssignment det;
  for (const char* m : {kA0, kA1, kB0, kB1}) det[m] = Detector{std::nullopt, {DetectorKind::pnr}};
  BellTable out;
  for (BellVariant v : {BellVariant::phi_plus, BellVariant::phi_minus,
                        BellVariant::psi_plus, BellVariant::psi_minus}) {
    const M2 b = bell_matrix(v);
    PhotonicState s(grid);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        const cplx c = b[static_cast<std::size_t>(2 * i + j)];
        if (c == cplx{}) continue;
        s.add_pair("A", (i ? one : zero).samples, "B", (j ? one : zero).samples,
                   c / std::numbers::sqrt2);
      }
    }
    auto recs = detect_pattern_probabilities(bell_chain(s.normalized(), params), det);
    std::vector<Pattern> pats;
    for (const auto& r : recs) {
      if (r.pattern.total() > 0 && r.probability > 1e-6) pats.push_back(r.pattern);
    }
    std::sort(pats.begin(), pats.end());
    out[v] = pats;
  }
  return out;
}

PauliOp recovery_pauli(BellVariant resource, BellVariant outcome) {
  // Heralded state: c = R^T B^+ psi.
  const M2 m = mul(transpose(bell_matrix(resource)), adjoint(bell_matrix(outcome)));
  for (PauliOp p : {PauliOp::I, PauliOp::X, PauliOp::Z, PauliOp::XZ}) {
    if (proportional_to_identity(mul(pauli_matrix(p), m))) return p;
  }
  throw NumericalError("no Pauli recovers the teleported state");
}

EncodingParams resolved_epr(const TeleportConfig& cfg) {
  if (cfg.epr) return *cfg.epr;
  if (const auto* c = std::get_if<CatParams>(&cfg.input.params)) {
    CatParams t = *c;
    t.sigma /= 2;
    return t;
  }
  GkpParams t = std::get<GkpParams>(cfg.input.params);
  t.sigma /= 2;
  t.kappa /= 2;
  return t;
}

void validate(const TeleportConfig& cfg) {
  validate(cfg.grid);
  validate(cfg.input.params);
  const EncodingParams e = resolved_epr(cfg);
  validate(e);
  if (encoding_of(e) != encoding_of(cfg.input.params)) {
    throw ConfigError("EPR and input use different encodings");
  }
  if (const auto* c = std::get_if<CatParams>(&cfg.input.params)) {
    const auto& t = std::get<CatParams>(e);
    if (t.omega1 != c->omega1 || t.omega2 != c->omega2) {
      throw ConfigError("EPR and input cat bands differ");
    }
    if (t.sigma > c->sigma) throw ConfigError("EPR width exceeds the input width");
  } else {
    const auto& g = std::get<GkpParams>(cfg.input.params);
    const auto& t = std::get<GkpParams>(e);
    if (t.omega_bar != g.omega_bar) throw ConfigError("EPR and input comb periods differ");
    if (g.monochromatic() || t.monochromatic()) {
      throw ConfigError("teleportation needs finite peak widths");
    }
    if (t.sigma > g.sigma) throw ConfigError("EPR peak width exceeds the input width");
  }
}

TeleportReport run_teleport(const TeleportConfig& cfg) {
  validate(cfg);
  check_frozen_table(cfg.input.params);
  const EncodingParams epr = resolved_epr(cfg);
  const FrequencyGrid& grid = cfg.grid;
  const bool pnr = cfg.detectors == DetectorKind::pnr;

  const SpectralAmplitude psi = make_qubit(cfg.input, grid);
  const EprDecomposition dec = epr_decomposition(epr, cfg.variant, grid);
  std::vector<Branch> branches;
  for (const auto& t : dec.terms) {
    const auto& b = t.first_logical == 0 ? dec.zero : dec.one;
    const auto& c = t.second_logical == 0 ? dec.zero : dec.one;
    PhotonicState s = PhotonicState::pair("A", psi, "B", b).scaled(t.weight);
    branches.push_back({bell_chain(s, cfg.input.params), c});
  }

  DetectorAssignment det;
  det[kA0] = {matched_filter(epr, 0), {cfg.detectors}};
  det[kB0] = {matched_filter(epr, 0), {cfg.detectors}};
  det[kA1] = {matched_filter(epr, 1), {cfg.detectors}};
  det[kB1] = {matched_filter(epr, 1), {cfg.detectors}};
  const auto records = detect_with_external(branches, det, "C");

  TeleportReport rep;
  for (const auto& r : records) {
    rep.heralding_probability += r.by_photon_number[2];
    rep.completeness += r.probability;
  }
  if (!(rep.heralding_probability > 1e-300)) {
    throw NumericalError("no two-photon detection events");
  }

  const auto& table = bell_pattern_table();
  const SpectralAmplitude target =
      make_qubit(QubitSpec{cfg.input.alpha, cfg.input.beta, epr}, grid);
  double fid_acc = 0.0;
  double ambiguous = 0.0;
  for (const auto& r : records) {
    PatternReport pr;
    pr.pattern = r.pattern;
    pr.raw_probability = r.probability;
    pr.probability = r.by_photon_number[2] / rep.heralding_probability;
    pr.ambiguous = r.ambiguous;
    if (pnr ? in_table(table.at(BellVariant::phi_plus), r.pattern) : r.ambiguous) {
      ambiguous += pnr ? r.probability : r.by_photon_number[2];
    }
    if (!r.ambiguous && r.pattern.counts.size() == 2) {
      for (BellVariant v : {BellVariant::psi_plus, BellVariant::psi_minus}) {
        if (in_table(table.at(v), r.pattern)) pr.bell = v;
      }
    }
    if (pr.bell && r.probability > 1e-12) {
      pr.accepted = true;
      pr.pauli = recovery_pauli(cfg.variant, *pr.bell);
      if (!r.conditional.available) {
        throw NumericalError("conditional state unavailable for an accepted pattern");
      }
      double f = 0.0;
      for (const auto& m : r.conditional.members) {
        auto c = pauli_correct(m.state.single_amplitude("C"), pr.pauli, epr, cfg.z);
        f += m.weight * state_fidelity(target, c);
        if (!pr.corrected) pr.corrected = std::move(c);
      }
      pr.fidelity = f;
      rep.raw_success += r.probability;
      fid_acc += r.probability * f;
    }
    rep.per_pattern.push_back(std::move(pr));
  }
  rep.total_success = rep.raw_success / rep.heralding_probability;
  rep.ambiguous_probability = ambiguous / rep.heralding_probability;
  rep.total_success_optimistic =
      rep.total_success + (pnr ? 0.5 * rep.ambiguous_probability : 0.0);
  rep.mean_fidelity = rep.raw_success > 0.0 ? fid_acc / rep.raw_success : 0.0;

  if (const auto* c = std::get_if<CatParams>(&cfg.input.params)) {
    rep.analytic_success = analytic_success(c->delta(), c->sigma, pnr);
  } else {
    const double ov = std::abs(inner_product(logical_state(cfg.input.params, 0, grid),
                                             logical_state(cfg.input.params, 1, grid)));
    rep.analytic_success = analytic_success_from_overlap(ov * ov, pnr);
  }
  return rep;
}

}  // namespace tfq
