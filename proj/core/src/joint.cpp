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

#include "tfq/joint.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace tfq {
namespace {

cplx dot(const CVec& a, const CVec& b) {
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

}  // namespace

JointAmplitude JointAmplitude::product(const SpectralAmplitude& u,
                                       const SpectralAmplitude& v) {
  if (!(u.grid == v.grid)) throw GridMismatch("product of different grids");
  JointAmplitude j(u.grid);
  j.add_term(u.samples, v.samples);
  return j;
}

JointAmplitude JointAmplitude::from_dense(const FrequencyGrid& grid,
                                          CVec dense) {
  if (dense.size() != grid.n_points * grid.n_points) {
    throw GridMismatch("dense block does not match grid");
  }
  JointAmplitude j(grid);
  j.dense_ = std::move(dense);
  return j;
}

JointAmplitude JointAmplitude::from_function(
    const FrequencyGrid& grid, const std::function<cplx(double, double)>& f) {
  const std::size_t n = grid.n_points;
  CVec d(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    double wi = grid.omega(i);
    for (std::size_t k = 0; k < n; ++k) d[i * n + k] = f(wi, grid.omega(k));
  }
  return from_dense(grid, std::move(d));
}

cplx JointAmplitude::at(std::size_t i, std::size_t j) const {
  cplx v = dense_.empty() ? cplx{} : dense_[i * n() + j];
  for (const auto& [u, w] : terms_) v += u[i] * w[j];
  return v;
}

CVec JointAmplitude::row(std::size_t i) const {
  const std::size_t nn = n();
  CVec out(nn);
  if (!dense_.empty()) {
    for (std::size_t j = 0; j < nn; ++j) out[j] = dense_[i * nn + j];
  }
  for (const auto& [u, w] : terms_) {
    for (std::size_t j = 0; j < nn; ++j) out[j] += u[i] * w[j];
  }
  return out;
}

CVec JointAmplitude::col(std::size_t j) const {
  const std::size_t nn = n();
  CVec out(nn);
  if (!dense_.empty()) {
    for (std::size_t i = 0; i < nn; ++i) out[i] = dense_[i * nn + j];
  }
  for (const auto& [u, w] : terms_) {
    for (std::size_t i = 0; i < nn; ++i) out[i] += u[i] * w[j];
  }
  return out;
}

CVec JointAmplitude::to_dense() const {
  const std::size_t nn = n();
  CVec out = dense_.empty() ? CVec(nn * nn) : dense_;
  for (const auto& [u, w] : terms_) {
    for (std::size_t i = 0; i < nn; ++i) {
      if (u[i] == cplx{}) continue;
      for (std::size_t j = 0; j < nn; ++j) out[i * nn + j] += u[i] * w[j];
    }
  }
  return out;
}

void JointAmplitude::add_term(CVec u, CVec v) {
  if (u.size() != n() || v.size() != n()) {
    throw GridMismatch("term length does not match grid");
  }
  terms_.emplace_back(std::move(u), std::move(v));
  if (terms_.size() > 24) compress();
}

void JointAmplitude::add(const JointAmplitude& other, cplx s) {
  if (other.empty()) return;
  if (empty()) grid_ = other.grid_;
  if (!(grid_ == other.grid_)) throw GridMismatch("adding different grids");
  if (other.has_dense()) add_dense(other.dense_, s);
  for (const auto& [u, w] : other.terms_) {
    CVec us = u;
    for (auto& x : us) x *= s;
    terms_.emplace_back(std::move(us), w);
  }
  if (terms_.size() > 24) compress();
}

void JointAmplitude::add_dense(const CVec& block, cplx s) {
  if (block.size() != n() * n()) throw GridMismatch("dense block size");
  if (dense_.empty()) dense_.assign(block.size(), cplx{});
  for (std::size_t i = 0; i < block.size(); ++i) dense_[i] += s * block[i];
}

void JointAmplitude::scale(cplx c) {
  for (auto& x : dense_) x *= c;
  for (auto& t : terms_) {
    for (auto& x : t.first) x *= c;
  }
}

JointAmplitude JointAmplitude::transposed() const {
  JointAmplitude out(grid_);
  const std::size_t nn = n();
  if (!dense_.empty()) {
    out.dense_.resize(dense_.size());
    for (std::size_t i = 0; i < nn; ++i) {
      for (std::size_t j = 0; j < nn; ++j) {
        out.dense_[j * nn + i] = dense_[i * nn + j];
      }
    }
  }
  for (const auto& [u, w] : terms_) out.terms_.emplace_back(w, u);
  return out;
}

JointAmplitude JointAmplitude::times_left(const CVec& f) const {
  JointAmplitude out = *this;
  const std::size_t nn = n();
  for (std::size_t i = 0; i < out.dense_.size(); ++i) out.dense_[i] *= f[i / nn];
  for (auto& t : out.terms_) {
    for (std::size_t i = 0; i < nn; ++i) t.first[i] *= f[i];
  }
  return out;
}

JointAmplitude JointAmplitude::times_right(const CVec& f) const {
  JointAmplitude out = *this;
  const std::size_t nn = n();
  for (std::size_t i = 0; i < out.dense_.size(); ++i) out.dense_[i] *= f[i % nn];
  for (auto& t : out.terms_) {
    for (std::size_t i = 0; i < nn; ++i) t.second[i] *= f[i];
  }
  return out;
}

JointAmplitude JointAmplitude::map_left(
    const std::function<CVec(const CVec&)>& m) const {
  JointAmplitude out(grid_);
  const std::size_t nn = n();
  if (!dense_.empty()) {
    out.dense_.resize(dense_.size());
    for (std::size_t j = 0; j < nn; ++j) {
      CVec c(nn);
      for (std::size_t i = 0; i < nn; ++i) c[i] = dense_[i * nn + j];
      CVec r = m(c);
      for (std::size_t i = 0; i < nn; ++i) out.dense_[i * nn + j] = r[i];
    }
  }
  for (const auto& [u, w] : terms_) out.terms_.emplace_back(m(u), w);
  return out;
}

JointAmplitude JointAmplitude::map_right(
    const std::function<CVec(const CVec&)>& m) const {
  JointAmplitude out(grid_);
  const std::size_t nn = n();
  if (!dense_.empty()) {
    out.dense_.resize(dense_.size());
    for (std::size_t i = 0; i < nn; ++i) {
      CVec r(dense_.begin() + static_cast<std::ptrdiff_t>(i * nn),
             dense_.begin() + static_cast<std::ptrdiff_t>((i + 1) * nn));
      CVec s = m(r);
      std::copy(s.begin(), s.end(),
                out.dense_.begin() + static_cast<std::ptrdiff_t>(i * nn));
    }
  }
  for (const auto& [u, w] : terms_) out.terms_.emplace_back(u, m(w));
  return out;
}

void JointAmplitude::compress(double rel_tol) {
  const auto r = static_cast<Eigen::Index>(terms_.size());
  if (r < 2) return;
  const auto nn = static_cast<Eigen::Index>(n());
  Eigen::MatrixXcd U(nn, r);
  Eigen::MatrixXcd V(nn, r);
  for (Eigen::Index k = 0; k < r; ++k) {
    const auto& [u, w] = terms_[static_cast<std::size_t>(k)];
    U.col(k) = Eigen::Map<const Eigen::VectorXcd>(u.data(), nn);
    V.col(k) = Eigen::Map<const Eigen::VectorXcd>(w.data(), nn);
  }
  const Eigen::Index kmax = std::min(r, nn);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qu(U);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qv(V);
  Eigen::MatrixXcd Q1 = qu.householderQ() * Eigen::MatrixXcd::Identity(nn, kmax);
  Eigen::MatrixXcd Q2 = qv.householderQ() * Eigen::MatrixXcd::Identity(nn, kmax);
  Eigen::MatrixXcd R1 =
      qu.matrixQR().topRows(kmax).triangularView<Eigen::Upper>();
  Eigen::MatrixXcd R2 =
      qv.matrixQR().topRows(kmax).triangularView<Eigen::Upper>();
  Eigen::MatrixXcd core = R1 * R2.transpose();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(core,
                                         Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  Eigen::MatrixXcd left = Q1 * svd.matrixU();
  Eigen::MatrixXcd right = Q2 * svd.matrixV().conjugate();
  std::vector<std::pair<CVec, CVec>> fresh;
  const double smax = s.size() > 0 ? s(0) : 0.0;
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    if (!(s(k) > rel_tol * smax)) break;
    CVec u(static_cast<std::size_t>(nn));
    CVec w(static_cast<std::size_t>(nn));
    for (Eigen::Index i = 0; i < nn; ++i) {
      u[static_cast<std::size_t>(i)] = left(i, k) * s(k);
      w[static_cast<std::size_t>(i)] = right(i, k);
    }
    fresh.emplace_back(std::move(u), std::move(w));
  }
  terms_ = std::move(fresh);
}

double JointAmplitude::norm_squared() const {
  return inner_product(*this, *this).real();
}

std::vector<double> JointAmplitude::first_marginal() const {
  const std::size_t nn = n();
  const double dw = grid_.d_omega();
  std::vector<double> m(nn, 0.0);
  if (!dense_.empty()) {
    CVec d = to_dense();
    for (std::size_t i = 0; i < nn; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < nn; ++j) acc += std::norm(d[i * nn + j]);
      m[i] = acc * dw;
    }
    return m;
  }
  const std::size_t r = terms_.size();
  std::vector<cplx> g(r * r);
  for (std::size_t a = 0; a < r; ++a) {
    for (std::size_t b = 0; b < r; ++b) {
      g[a * r + b] = dot(terms_[a].second, terms_[b].second) * dw;
    }
  }
  for (std::size_t i = 0; i < nn; ++i) {
    cplx acc{0.0, 0.0};
    for (std::size_t a = 0; a < r; ++a) {
      cplx ua = std::conj(terms_[a].first[i]);
      if (ua == cplx{}) continue;
      for (std::size_t b = 0; b < r; ++b) {
        acc += ua * terms_[b].first[i] * g[a * r + b];
      }
    }
    m[i] = acc.real();
  }
  return m;
}

std::vector<double> JointAmplitude::second_marginal() const {
  return transposed().first_marginal();
}

cplx inner_product(const JointAmplitude& a, const JointAmplitude& b) {
  if (a.empty() || b.empty()) return {0.0, 0.0};
  if (!(a.grid() == b.grid())) throw GridMismatch("joint amplitudes differ");
  const std::size_t n = a.n();
  const double dw = a.grid().d_omega();
  cplx acc{0.0, 0.0};
  if (a.has_dense() && b.has_dense()) acc += dot(a.dense(), b.dense());
  if (a.has_dense()) {
    const CVec& d = a.dense();
    for (const auto& [u, v] : b.terms()) {
      for (std::size_t i = 0; i < n; ++i) {
        if (u[i] == cplx{}) continue;
        cplx rowsum{0.0, 0.0};
        for (std::size_t j = 0; j < n; ++j) rowsum += std::conj(d[i * n + j]) * v[j];
        acc += u[i] * rowsum;
      }
    }
  }
  if (b.has_dense()) {
    const CVec& d = b.dense();
    for (const auto& [u, v] : a.terms()) {
      for (std::size_t i = 0; i < n; ++i) {
        if (u[i] == cplx{}) continue;
        cplx rowsum{0.0, 0.0};
        for (std::size_t j = 0; j < n; ++j) rowsum += std::conj(v[j]) * d[i * n + j];
        acc += std::conj(u[i]) * rowsum;
      }
    }
  }
  for (const auto& [ua, va] : a.terms()) {
    for (const auto& [ub, vb] : b.terms()) acc += dot(ua, ub) * dot(va, vb);
  }
  return acc * dw * dw;
}

}  // namespace tfq
