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

#include <gtest/gtest.h>

#include "support.hpp"
#include "tfq/oracle.hpp"

using namespace tfq;
using namespace tfqtest;

namespace {

double single_probability(const PhotonicState& s, const std::string& m) {
  return s.singles().count(m) ? norm_squared(s.single_amplitude(m)) : 0.0;
}

double state_distance(const PhotonicState& a, const PhotonicState& b) {
  return std::sqrt(std::abs(a.norm_squared() + b.norm_squared() -
                            2.0 * inner_product(a, b).real()));
}

FrequencyGrid cat_grid() { return FrequencyGrid::make(-20.0, 20.0, 1024); }

}  // namespace

TEST(BeamSplitter, InvolutionOnOneAndTwoPhotons) {
  const auto g = cat_grid();
  const auto u = gaussian_amplitude({-1.0, 1.0}, g);
  const auto v = apply_phase(gaussian_amplitude({2.0, 1.5}, g), [](double w) { return w; });
  PhotonicState s = PhotonicState::pair("a", u, "b", v).scaled(std::sqrt(0.5));
  s.add(PhotonicState::single("a", v), std::sqrt(0.3));
  s.add_vacuum(std::sqrt(0.2));
  const auto twice = apply_circuit(s, {BeamSplitter{"a", "b"}, BeamSplitter{"a", "b"}});
  EXPECT_LT(state_distance(twice, s), 1e-10);
}

TEST(BeamSplitter, SplitsSinglePhotonEvenly) {
  const auto g = cat_grid();
  PhotonicState s = PhotonicState::single("a", gaussian_amplitude({0.0, 1.0}, g));
  s.add_mode("b");
  const auto out = apply_element(s, BeamSplitter{"a", "b"});
  EXPECT_NEAR(single_probability(out, "a"), 0.5, 1e-12);
  EXPECT_NEAR(single_probability(out, "b"), 0.5, 1e-12);
}

TEST(BeamSplitter, HongOuMandelBunching) {
  const auto g = cat_grid();
  const auto u = gaussian_amplitude({0.0, 1.0}, g);
  const auto out = apply_element(PhotonicState::pair("a", u, "b", u), BeamSplitter{"a", "b"});
  double cross = 0.0;
  double bunched = 0.0;
  for (const auto& [key, j] : out.doubles()) {
    (key.first == key.second ? bunched : cross) += j.norm_squared();
  }
  EXPECT_LT(cross, 1e-10);
  EXPECT_NEAR(bunched, 1.0, 1e-10);
}

TEST(Elements, UnknownModeAndNormPreservation) {
  const auto g = cat_grid();
  const auto u = gaussian_amplitude({-1.0, 1.0}, g);
  const auto v = gaussian_amplitude({1.5, 0.7}, g);
  PhotonicState s = PhotonicState::pair("a", u, "b", v).scaled(std::sqrt(0.6));
  s.add(PhotonicState::pair("a", v, "a", u), std::sqrt(0.4));
  s = s.normalized();
  EXPECT_THROW(apply_element(s, Delay{"z", 1.0}), UnknownMode);
  EXPECT_THROW(apply_dispersion(s, "z", 1.0), UnknownMode);
  const std::vector<ElementSpec> elems{
      BeamSplitter{"a", "b"}, PhaseMask{"a", [](double w) { return std::cos(w) * 3.0; }},
      Delay{"b", 2.5}, Dispersion{"a", 0.8}};
  for (const auto& e : elems) {
    EXPECT_NEAR(apply_element(s, e).norm_squared(), 1.0, 1e-10);
    for (int k : {0, 1, 2}) {
      EXPECT_NEAR(apply_element(s, e).sector_probability(k), s.sector_probability(k), 1e-12);
    }
  }
}

TEST(CatFqbs, SeparatesLogicalsAtPi) {
  const auto g = cat_grid();
  const CatParams p{-6.0, 6.0, 1.0};
  const auto in = PhotonicState::single("a", make_qubit({kInvSqrt2, kInvSqrt2, p}, g));
  const auto out = cat_fqbs(in, "a", "b", kPi, p);
  const auto a = out.single_amplitude("a");
  const auto b = out.single_amplitude("b");
  const auto z = cat_logical(p, 0, g);
  const auto o = cat_logical(p, 1, g);
  EXPECT_NEAR(std::norm(inner_product(z, a)), 0.5, 1e-10);
  EXPECT_NEAR(std::norm(inner_product(o, b)), 0.5, 1e-10);
  EXPECT_LT(std::norm(inner_product(o, a)), 1e-10);
  EXPECT_LT(std::norm(inner_product(z, b)), 1e-10);
}

TEST(CatFqbs, ZeroPhaseAndQuarterWave) {
  const auto g = cat_grid();
  const CatParams p{-6.0, 6.0, 1.0};
  const auto in = PhotonicState::single("a", make_qubit({kInvSqrt2, kInvSqrt2, p}, g));
  EXPECT_LT(single_probability(cat_fqbs(in, "a", "b", 0.0, p), "b"), 1e-14);
  const auto one = PhotonicState::single("a", cat_logical(p, 1, g));
  // |1 - e^{i pi/2}|^2 / 4
  EXPECT_NEAR(single_probability(cat_fqbs(one, "a", "b", kPi / 2, p), "b"), 0.5, 1e-9);
}

TEST(GkpFqbs, MonochromaticEndpoints) {
  const auto g = FrequencyGrid::centered(1.0 / 64.0, 4096);
  const GkpParams p{1.0, 0.0, 3.0};
  const auto in = PhotonicState::single("a", make_qubit({kInvSqrt2, kInvSqrt2, p}, g));
  const auto out = gkp_fqbs(in, "a", "b", kPi);
  const auto z = gkp_logical(p, 0, g);
  const auto o = gkp_logical(p, 1, g);
  // (-|1>_a + |0>_b) / sqrt2
  EXPECT_NEAR(inner_product(o, out.single_amplitude("a")).real(), -kInvSqrt2, 1e-12);
  EXPECT_NEAR(inner_product(z, out.single_amplitude("b")).real(), kInvSqrt2, 1e-12);
  EXPECT_LT(std::norm(inner_product(z, out.single_amplitude("a"))), 1e-8);
  EXPECT_LT(std::norm(inner_product(o, out.single_amplitude("b"))), 1e-8);

  // No delay: everything leaves through b.
  EXPECT_LT(single_probability(gkp_fqbs(in, "a", "b", 0.0), "a"), 1e-14);
}

TEST(GkpFqbs, PortSpectraMatchDirectFormula) {
  const auto g = FrequencyGrid::centered(1.0 / 128.0, 8192);
  for (double sigma : {0.1, 0.2}) {
    const GkpParams p{1.0, sigma, 3.0};
    const auto out = gkp_fqbs(
        PhotonicState::single("a", make_qubit({kInvSqrt2, kInvSqrt2, p}, g)), "a", "b", kPi);
    const auto pa = port_spectrum(out, "a");
    const auto pb = port_spectrum(out, "b");
    // P_{a,b}(w) = |e^{i pi w} -+ 1|^2 / 4 * |psi(w)|^2 with psi built from the
    // continuous combs, each logical normalized by quadrature.
    const auto c0 = comb_function(p, 0);
    const auto c1 = comb_function(p, 1);
    const double half = p.truncation() + 1.0;
    const auto br = oracle::lattice_breaks(-half, half, 0.0, 1.0);
    const double n0 = oracle::integrate([&](double w) { return c0(w) * c0(w); }, -half, half, br);
    const double n1 = oracle::integrate([&](double w) { return c1(w) * c1(w); }, -half, half, br);
    const double ov = oracle::integrate([&](double w) { return c0(w) * c1(w); }, -half, half, br) /
                      std::sqrt(n0 * n1);
    const auto psi2 = [&](double w) {
      const double v = c0(w) / std::sqrt(n0) + c1(w) / std::sqrt(n1);
      return v * v / (2.0 * (1.0 + ov));
    };
    double worst = 0.0;
    for (std::size_t j = 0; j < g.n_points; ++j) {
      const double w = g.omega(j);
      const cplx e = std::polar(1.0, kPi * w);
      const double f2 = psi2(w);
      worst = std::max(worst, std::abs(pa[j] - 0.25 * std::norm(e - 1.0) * f2));
      worst = std::max(worst, std::abs(pb[j] - 0.25 * std::norm(e + 1.0) * f2));
    }
    EXPECT_LT(worst, 1e-9) << sigma;
    // Nulls at the bin centres of the opposite parity.
    EXPECT_LT(pa[g.nearest_index(0.0)], 1e-20);
    EXPECT_LT(pb[g.nearest_index(1.0)], 1e-20);
  }
}

TEST(GkpFqbs, PerFrequencyProbabilityConserved) {
  const auto g = FrequencyGrid::centered(1.0 / 64.0, 4096);
  const GkpParams p{1.0, 0.2, 3.0};
  const auto q = make_qubit({0.6, cplx{0.0, 0.8}, p}, g);
  const auto out = gkp_fqbs(PhotonicState::single("a", q), "a", "b", kPi);
  const auto pa = port_spectrum(out, "a");
  const auto pb = port_spectrum(out, "b");
  double worst = 0.0;
  for (std::size_t j = 0; j < g.n_points; ++j) {
    worst = std::max(worst, std::abs(pa[j] + pb[j] - std::norm(q[j])));
  }
  EXPECT_LT(worst, 1e-9);
}

TEST(PortSpectrum, VacuumAndUnknownMode) {
  auto s = PhotonicState::vacuum(cat_grid());
  s.add_mode("a");
  for (double x : port_spectrum(s, "a")) EXPECT_EQ(x, 0.0);
  EXPECT_THROW(port_spectrum(s, "q"), UnknownMode);
}

TEST(PortSpectrum, IntegratesToOccupation) {
  const auto g = cat_grid();
  const auto u = gaussian_amplitude({-1.0, 1.0}, g);
  const auto out = apply_element(PhotonicState::pair("a", u, "b", gaussian_amplitude({3.0, 1.0}, g)),
                                 BeamSplitter{"a", "b"});
  // Mean photon number of each mode is 1 after the splitter.
  EXPECT_NEAR(sum(port_spectrum(out, "a"), g.d_omega()), 1.0, 1e-10);
  EXPECT_NEAR(sum(port_spectrum(out, "b"), g.d_omega()), 1.0, 1e-10);
}

TEST(Dispersion, ZeroIsIdentityAndMarginalUntouched) {
  const auto g = FrequencyGrid::make(-20.0, 20.0, 4096);
  const auto s = PhotonicState::single("a", gaussian_amplitude({0.0, 1.0}, g));
  EXPECT_LT(state_distance(apply_dispersion(s, "a", 0.0), s), 1e-15);
  const auto d = apply_dispersion(s, "a", 3.0);
  EXPECT_LT(max_abs_diff(port_spectrum(d, "a"), port_spectrum(s, "a")), 1e-15);
  EXPECT_THROW(apply_dispersion(s, "a", std::nan("")), ConfigError);
}

TEST(Dispersion, WidthLawAtCriticalLength) {
  const auto g = FrequencyGrid::make(-20.0, 20.0, 4096);
  const auto s = PhotonicState::single("a", gaussian_amplitude({0.0, 1.0}, g));
  const double tau0 = gaussian_width(to_time_domain(s.single_amplitude("a")));
  EXPECT_NEAR(tau0, 1.0, 1e-6);
  const auto d = apply_dispersion(s, "a", tau0 * tau0);
  const double tau = gaussian_width(to_time_domain(d.single_amplitude("a")));
  EXPECT_NEAR(tau / (tau0 * std::numbers::sqrt2), 1.0, 5e-3);
}

TEST(FrequencyBeamSplitter, IsotropicGaussianInvariant) {
  const auto g = FrequencyGrid::make(-16.0, 16.0, 256);
  const auto u = gaussian_amplitude({0.0, 1.0}, g);
  const auto j = JointAmplitude::product(u, u);
  const auto r = frequency_beam_splitter(j);
  EXPECT_NEAR(r.norm_squared(), 1.0, 1e-6);
  EXPECT_LT(max_abs_diff(r.to_dense(), j.to_dense()), 1e-6);
}

TEST(FrequencyBeamSplitter, InvolutionAndNorm) {
  const auto g = FrequencyGrid::make(-16.0, 16.0, 256);
  const auto u = apply_phase(gaussian_amplitude({1.0, 1.0}, g), [](double w) { return 0.4 * w; });
  const auto v = gaussian_amplitude({-0.5, 1.5}, g);
  const auto j = JointAmplitude::product(u, v);
  const auto r = frequency_beam_splitter(j);
  EXPECT_NEAR(r.norm_squared(), 1.0, 1e-6);
  const auto back = frequency_beam_splitter(r);
  EXPECT_LT(max_abs_diff(back.to_dense(), j.to_dense()), 1e-6);
}

TEST(FrequencyBeamSplitter, RotatedSupportMustFit) {
  const auto g = FrequencyGrid::make(-16.0, 16.0, 256);
  const auto u = gaussian_amplitude({9.0, 1.0}, g);
  EXPECT_THROW(frequency_beam_splitter(JointAmplitude::product(u, u)), OutOfBand);
}

TEST(FrequencyBeamSplitter, BilinearOptionIsCoarser) {
  const auto g = FrequencyGrid::make(-16.0, 16.0, 256);
  const auto u = gaussian_amplitude({0.5, 1.0}, g);
  const auto j = JointAmplitude::product(u, u);
  const auto r = frequency_beam_splitter(j, Interpolation::bilinear);
  EXPECT_NEAR(r.norm_squared(), 1.0, 1e-2);
}

TEST(FrequencyBeamSplitter, CollectiveCombBecomesLocal) {
  // Teeth on the collective variables sit on a lattice of spacing wb/sqrt2 in
  // the local ones; the transform brings them to spacing wb.
  const auto g = FrequencyGrid::centered(1.0 / 16.0, 512);
  const GkpParams comb{1.0, 0.2, 2.0};
  const auto ent = jsa_build({JsaShape::Form::fbs_entangled, 3.0, 3.0, comb}, g);
  const auto rot = frequency_beam_splitter(ent);
  const auto cav = jsa_build({JsaShape::Form::spdc_cavity, 3.0, 3.0, comb}, g);
  std::vector<double> x(g.n_points);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = g.omega(i);
  const double w_rot = lattice_peak_width(x, rot.first_marginal(), 1.0);
  const double w_cav = lattice_peak_width(x, cav.first_marginal(), 1.0);
  const double w_ent = lattice_peak_width(x, ent.first_marginal(), 1.0);
  const double w_ent_r2 = lattice_peak_width(x, ent.first_marginal(), 1.0 / std::numbers::sqrt2);
  EXPECT_NEAR(w_rot, w_cav, 1e-3);
  EXPECT_LT(w_ent_r2, 0.25);
  EXPECT_GT(w_ent, 1.5 * w_rot);
}
