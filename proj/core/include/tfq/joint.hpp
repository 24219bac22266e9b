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

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "tfq/spectral.hpp"

namespace tfq {

// Two-photon amplitude A(w, w') on a shared grid, stored as an optional dense
// n x n block (row index = first photon) plus a list of separable terms
// u (x) v. Products of single photons stay separable through every linear
// element, so comb-sized grids never need the dense block.
class JointAmplitude {
 public:
  JointAmplitude() = default;
  explicit JointAmplitude(const FrequencyGrid& grid) : grid_(grid) {}

  static JointAmplitude product(const SpectralAmplitude& u,
                                const SpectralAmplitude& v);
  static JointAmplitude from_dense(const FrequencyGrid& grid, CVec dense);
  static JointAmplitude from_function(
      const FrequencyGrid& grid, const std::function<cplx(double, double)>& f);

  const FrequencyGrid& grid() const { return grid_; }
  std::size_t n() const { return grid_.n_points; }
  bool has_dense() const { return !dense_.empty(); }
  const CVec& dense() const { return dense_; }
  const std::vector<std::pair<CVec, CVec>>& terms() const { return terms_; }
  bool empty() const { return dense_.empty() && terms_.empty(); }

  cplx at(std::size_t i, std::size_t j) const;
  CVec row(std::size_t i) const;  // A(w_i, .)
  CVec col(std::size_t j) const;  // A(., w_j)
  CVec to_dense() const;

  void add_term(CVec u, CVec v);
  void add(const JointAmplitude& other, cplx scale = {1.0, 0.0});
  void add_dense(const CVec& block, cplx scale = {1.0, 0.0});
  void scale(cplx c);

  JointAmplitude transposed() const;
  // Pointwise factors on the first / second argument.
  JointAmplitude times_left(const CVec& f) const;
  JointAmplitude times_right(const CVec& f) const;
  // Any linear single-photon map applied to the first / second argument.
  JointAmplitude map_left(const std::function<CVec(const CVec&)>& m) const;
  JointAmplitude map_right(const std::function<CVec(const CVec&)>& m) const;

  // Re-factor the separable terms into an orthogonal sum, dropping
  // directions below rel_tol of the largest singular value.
  void compress(double rel_tol = 1e-15);

  double norm_squared() const;
  // int |A(w, w')|^2 dw' for each w (first argument marginal density).
  std::vector<double> first_marginal() const;
  std::vector<double> second_marginal() const;

 private:
  FrequencyGrid grid_;
  CVec dense_;
  std::vector<std::pair<CVec, CVec>> terms_;
};

// int int conj(a) b dw dw'
cplx inner_product(const JointAmplitude& a, const JointAmplitude& b);

}  // namespace tfq
