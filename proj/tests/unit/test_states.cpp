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

FrequencyGrid comb_grid() { return FrequencyGrid::centered(1.0 / 128.0, 8192); }

// Probability in bins [n - 1/2, n + 1/2) wb of the given parity.
double parity_probability(const SpectralAmplitude& a, double wb, int parity) {
  double p = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const long n = std::lround(a.grid.omega(j) / wb);
    if (((n % 2) + 2) % 2 == parity) p += std::norm(a[j]);
  }
  return p * a.grid.d_omega();
}

}  // namespace

TEST(CatLogical, PeaksAndOverlaps) {
  const auto g = FrequencyGrid::make(-20.0, 20.0, 4096);
  const CatParams p{-5.0, 5.0, 1.0};
  EXPECT_EQ(cat_logical(p, 0, g).samples, gaussian_amplitude({-5.0, 1.0}, g).samples);
  EXPECT_LT(std::abs(inner_product(cat_logical(p, 0, g), cat_logical(p, 1, g))), 1e-10);
  const CatParams near{-1.0, 1.0, 1.0};
  // Product-integral convention: exp(-D^2 / 4 s^2) = e^{-1} at D = 2 s.
  EXPECT_NEAR(inner_product(cat_logical(near, 0, g), cat_logical(near, 1, g)).real(),
              0.36787944117144232, 1e-10);
  EXPECT_NEAR(closed_form::cat_overlap(2.0, 1.0), 0.36787944117144232, 1e-15);
  EXPECT_NEAR(closed_form::cat_overlap_squared(2.0, 1.0), 0.36787944117144232 * 0.36787944117144232,
              1e-15);
}

TEST(GkpLogical, EvenCombHasNoOddWeight) {
  const auto a = gkp_logical(GkpParams{1.0, 0.1, 4.0}, 0, comb_grid());
  EXPECT_NEAR(norm_squared(a), 1.0, 1e-9);
  EXPECT_LT(parity_probability(a, 1.0, 1), 1e-10);
  const auto b = gkp_logical(GkpParams{1.0, 0.1, 4.0}, 1, comb_grid());
  EXPECT_LT(parity_probability(b, 1.0, 0), 1e-10);
}

TEST(GkpLogical, NormalizationConstantMatchesClosedForm) {
  const GkpParams p{1.0, 0.1, 10.0};
  for (int mu : {0, 1}) {
    // Unnormalized comb sum_n c_n G(w - n wb) with the closed-form constant applied.
    const auto f = comb_function(p, mu);
    const oracle::RealFn f2 = [&](double w) { return f(w) * f(w); };
    const double half = (p.truncation() + 1) * p.omega_bar;
    const double integral = oracle::integrate(f2, -half, half, oracle::lattice_breaks(-half, half, 0.0, 1.0));
    const double n = closed_form::gkp_norm_constant(p, mu);
    EXPECT_NEAR(n * n * integral, 1.0, 1e-4);
  }
}

TEST(GkpLogical, TruncationFollowsEnvelope) {
  const GkpParams p{1.0, 0.1, 10.0};
  const int n = p.truncation();
  EXPECT_LT(p.envelope(n + 1), 1e-8);
  EXPECT_GE(p.envelope(n), 1e-8);
  GkpParams short_comb = p;
  short_comb.n_max = 5;
  EXPECT_THROW(gkp_logical(short_comb, 0, comb_grid()), TruncationError);
}

TEST(GkpLogical, ResolutionAndBand) {
  EXPECT_THROW(gkp_logical(GkpParams{1.0, 0.01, 4.0}, 0, comb_grid()), UnresolvablePeak);
  EXPECT_THROW(gkp_logical(GkpParams{1.0, 0.1, 20.0}, 0, FrequencyGrid::centered(1.0 / 64, 2048)),
               OutOfBand);
}

// Quadrature values of <0|1> at kappa = 10 wb (python/mpmath oracle).
struct OverlapCase {
  double sigma;
  double quadrature;
  double printed;
};

class GkpOverlap : public ::testing::TestWithParam<OverlapCase> {};

TEST_P(GkpOverlap, GridMatchesQuadrature) {
  const auto c = GetParam();
  const GkpParams p{1.0, c.sigma, 10.0};
  const auto g = FrequencyGrid::centered(1.0 / 128.0, 32768);
  const double ov = inner_product(gkp_logical(p, 0, g), gkp_logical(p, 1, g)).real();
  EXPECT_NEAR(ov, c.quadrature, 1e-12 + 1e-9 * c.quadrature);
  EXPECT_NEAR(closed_form::gkp_overlap_series(p), c.quadrature, 1e-12 + 1e-9 * c.quadrature);
  EXPECT_NEAR(closed_form::gkp_overlap(p), c.printed, 1e-12 + 1e-9 * c.printed);
}

INSTANTIATE_TEST_SUITE_P(
    Widths, GkpOverlap,
    ::testing::Values(OverlapCase{0.05, 7.3722225603575723e-44, 3.7107874016366156e-44},
                      OverlapCase{0.1, 2.7706534737964656e-11, 1.385326736898231e-11},
                      OverlapCase{0.2, 0.0038512680569585603, 0.0019256340285322335}));

TEST(MakeQubit, PureLogicalIsExact) {
  const GkpParams p{1.0, 0.1, 4.0};
  const auto g = FrequencyGrid::centered(1.0 / 64.0, 4096);
  EXPECT_LT(max_abs_diff(make_qubit({1.0, 0.0, p}, g).samples, gkp_logical(p, 0, g).samples),
            1e-15);
}

TEST(MakeQubit, PlusIsTimeZeroLogical) {
  // (|0> + |1>)/sqrt2 in frequency is a comb of period wb, so time peaks sit
  // at multiples of 2 pi / wb = even multiples of pi / wb.
  const GkpParams p{1.0, 0.1, 4.0};
  const auto g = FrequencyGrid::centered(1.0 / 64.0, 4096);
  const auto t = to_time_domain(make_qubit({kInvSqrt2, kInvSqrt2, p}, g));
  auto at = [&](double time) {
    return std::norm(t.samples[t.size() / 2 + static_cast<std::size_t>(std::llround(time / t.dt))]);
  };
  EXPECT_GT(at(2.0 * kPi), 0.5 * at(0.0));
  EXPECT_LT(at(kPi), 1e-10 * at(0.0));
  EXPECT_LT(at(3.0 * kPi), 1e-10 * at(0.0));
}

TEST(MakeQubit, NonOrthogonalNormalization) {
  const auto g = FrequencyGrid::make(-14.0, 14.0, 2048);
  const CatParams p{-1.0, 1.0, 1.0};
  const auto q = make_qubit({1.0, 1.0, p}, g);
  EXPECT_NEAR(norm_squared(q), 1.0, 1e-10);
  const cplx ov = inner_product(cat_logical(p, 0, g), cat_logical(p, 1, g));
  EXPECT_NEAR(closed_form::qubit_normalization(1.0, 1.0, ov), 0.60459018294626852, 1e-10);
  // Unnormalized pre-image is additive.
  const auto sum = cat_logical(p, 0, g) + cat_logical(p, 1, g);
  EXPECT_LT(distance(q, 0.60459018294626852 * sum), 1e-10);
}

TEST(MakeQubit, DegenerateCoefficients) {
  const auto g = FrequencyGrid::make(-14.0, 14.0, 2048);
  EXPECT_THROW(make_qubit({0.0, 0.0, CatParams{-1.0, 1.0, 1.0}}, g), ConfigError);
}

TEST(GramSchmidt, OrthogonalInputs) {
  const auto g = FrequencyGrid::make(-20.0, 20.0, 2048);
  const auto a = gaussian_amplitude({-6.0, 1.0}, g);
  const auto b = gaussian_amplitude({6.0, 1.0}, g);
  const auto r = gram_schmidt(a, b);
  EXPECT_LT(distance(r.basis_b, b), 1e-10);
  EXPECT_NEAR(r.n_factor, 1.0, 1e-10);
}

TEST(GramSchmidt, HalfOverlap) {
  const auto g = FrequencyGrid::make(-20.0, 20.0, 2048);
  const auto a = gaussian_amplitude({-6.0, 1.0}, g);
  const auto perp = gaussian_amplitude({6.0, 1.0}, g);
  const auto b = normalized(0.5 * a + std::sqrt(0.75) * perp);
  const auto r = gram_schmidt(a, b);
  EXPECT_NEAR(r.n_factor, 1.1547005383792517, 1e-10);
  EXPECT_LT(std::abs(inner_product(r.basis_a, r.basis_b)), 1e-10);
  EXPECT_NEAR(norm_squared(r.basis_b), 1.0, 1e-10);

  const auto [ca, cb] = r.coefficients(0.0, 1.0);
  EXPECT_LT(std::abs(ca - r.overlap), 1e-15);
  EXPECT_NEAR(std::abs(cb), 1.0 / r.n_factor, 1e-12);
  EXPECT_NEAR(std::norm(ca) + std::norm(cb), 1.0, 1e-10);

  // Recombination reproduces the state.
  const cplx al{0.3, 0.2};
  const cplx be{-0.5, 0.7};
  const auto [xa, xb] = r.coefficients(al, be);
  EXPECT_LT(distance(xa * r.basis_a + xb * r.basis_b, al * a + be * b), 1e-10);
}

TEST(GramSchmidt, ParallelInputs) {
  const auto g = FrequencyGrid::make(-20.0, 20.0, 2048);
  const auto a = gaussian_amplitude({0.0, 1.0}, g);
  EXPECT_THROW(gram_schmidt(a, a), ParallelStates);
}

TEST(EprPair, OrthogonalNormalization) {
  const auto g = FrequencyGrid::make(-20.0, 20.0, 1024);
  const CatParams p{-6.0, 6.0, 1.0};
  EXPECT_NEAR(epr_decomposition(p, BellVariant::phi_plus, g).normalization, kInvSqrt2, 1e-8);
  EXPECT_NEAR(epr_pair(p, BellVariant::psi_minus, "b", "c", g).norm_squared(), 1.0, 1e-9);
}

TEST(EprPair, OverlappingNormalization) {
  // N^2 (2 + 2 |<0|1>|^2) = 1 with the quadrature overlap e^{-1} at D = 2 s.
  const auto g = FrequencyGrid::make(-14.0, 14.0, 1024);
  const CatParams p{-1.0, 1.0, 1.0};
  EXPECT_NEAR(epr_decomposition(p, BellVariant::psi_plus, g).normalization,
              0.66362530014228754, 1e-9);
  EXPECT_NEAR(closed_form::epr_normalization(2.0, 1.0), 0.66362530014228754, 1e-12);
  for (auto v : {BellVariant::phi_plus, BellVariant::phi_minus, BellVariant::psi_plus,
                 BellVariant::psi_minus}) {
    EXPECT_NEAR(epr_pair(p, v, "b", "c", g).norm_squared(), 1.0, 1e-9) << to_string(v);
  }
}

TEST(EprPair, ExchangeSymmetry) {
  const auto g = FrequencyGrid::make(-20.0, 20.0, 512);
  const CatParams p{-6.0, 6.0, 1.0};
  for (auto [v, sign] : std::vector<std::pair<BellVariant, double>>{
           {BellVariant::phi_plus, 1.0}, {BellVariant::phi_minus, 1.0},
           {BellVariant::psi_plus, 1.0}, {BellVariant::psi_minus, -1.0}}) {
    const auto s = epr_pair(p, v, "b", "c", g);
    const auto swapped = s.renamed("b", "x").renamed("c", "b").renamed("x", "c");
    EXPECT_NEAR(inner_product(s, swapped).real(), sign, 1e-12) << to_string(v);
  }
}

TEST(Jsa, NormalizedAndSwapSymmetric) {
  const auto g = FrequencyGrid::centered(1.0 / 16.0, 512);
  for (auto form : {JsaShape::Form::spdc_cavity, JsaShape::Form::fbs_entangled}) {
    const JsaShape s{form, 2.0, 5.0, GkpParams{1.0, 0.2, 2.0}};
    const auto j = jsa_build(s, g);
    EXPECT_NEAR(j.norm_squared(), 1.0, 1e-9);
    const CVec d = j.to_dense();
    double worst = 0.0;
    for (std::size_t a = 0; a < g.n_points; a += 7) {
      for (std::size_t b = 0; b < g.n_points; b += 5) {
        worst = std::max(worst, std::abs(std::norm(d[a * g.n_points + b]) -
                                         std::norm(d[b * g.n_points + a])));
      }
    }
    EXPECT_LT(worst, 1e-12);
  }
}

TEST(Jsa, FormsMatchTheirDefiningProducts) {
  const auto g = FrequencyGrid::centered(1.0 / 16.0, 512);
  const GkpParams comb{1.0, 0.2, 2.0};
  const auto local = comb_function(comb, -1);  // both parities
  auto env = [](double x, double k) { return std::exp(-x * x / (2.0 * k * k)); };
  for (auto form : {JsaShape::Form::spdc_cavity, JsaShape::Form::fbs_entangled}) {
    const auto j = jsa_build({form, 2.0, 5.0, comb}, g).to_dense();
    // Ratio to the direct evaluation is one constant (the normalization).
    cplx ref{};
    double worst = 0.0;
    for (std::size_t a = 200; a < 320; a += 3) {
      for (std::size_t b = 190; b < 330; b += 3) {
        const double ws = g.omega(a);
        const double wi = g.omega(b);
        const double wp = (ws + wi) / std::numbers::sqrt2;
        const double wm = (ws - wi) / std::numbers::sqrt2;
        const double direct = env(wp, 2.0) * env(wm, 5.0) *
            (form == JsaShape::Form::spdc_cavity ? local(ws) * local(wi) : local(wp) * local(wm));
        const cplx v = j[a * g.n_points + b];
        if (direct < 1e-3) continue;
        if (ref == cplx{}) ref = v / direct;
        worst = std::max(worst, std::abs(v / direct - ref) / std::abs(ref));
      }
    }
    EXPECT_LT(worst, 1e-9);
  }
}
