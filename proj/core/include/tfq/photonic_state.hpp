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

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tfq/joint.hpp"
#include "tfq/spectral.hpp"

namespace tfq {

// Unordered mode pair, stored with first <= second.
using ModePair = std::pair<std::string, std::string>;
ModePair make_pair_key(const std::string& p, const std::string& q);

// State with at most two photons over named spatial modes.
//
//   |psi> = v |0> + sum_p int s_p(w) a_p^+(w) |0>
//         + sum_{p<q} int int A_pq(w, w') a_p^+(w) a_q^+(w') |0>
//         + sum_p 2^{-1/2} int int A_pp(w, w') a_p^+(w) a_p^+(w') |0>
//
// with A_pp symmetric. Every sector's squared norm is the plain L2 norm of its
// amplitude.
class PhotonicState {
 public:
  PhotonicState() = default;
  explicit PhotonicState(const FrequencyGrid& grid) : grid_(grid) {}

  static PhotonicState vacuum(const FrequencyGrid& grid);
  static PhotonicState single(const std::string& mode,
                              const SpectralAmplitude& a);
  // a_p^+[u] a_q^+[v] |0>, p == q allowed.
  static PhotonicState pair(const std::string& p, const SpectralAmplitude& u,
                            const std::string& q, const SpectralAmplitude& v);

  const FrequencyGrid& grid() const { return grid_; }
  const std::set<std::string>& modes() const { return modes_; }
  bool has_mode(const std::string& m) const { return modes_.count(m) > 0; }
  void add_mode(const std::string& m) { modes_.insert(m); }
  void require_mode(const std::string& m) const;

  cplx vacuum_amp() const { return vacuum_; }
  const std::map<std::string, CVec>& singles() const { return singles_; }
  const std::map<ModePair, JointAmplitude>& doubles() const {
    return doubles_;
  }

  SpectralAmplitude single_amplitude(const std::string& mode) const;
  // A_pq oriented with p as the first argument (transposed if needed).
  JointAmplitude joint(const std::string& p, const std::string& q) const;

  void add_vacuum(cplx c) { vacuum_ += c; }
  void add_single(const std::string& mode, const CVec& s, cplx c = {1.0, 0.0});
  // c * a_p^+[u] a_q^+[v] |0>
  void add_pair(const std::string& p, const CVec& u, const std::string& q,
                const CVec& v, cplx c = {1.0, 0.0});
  // c * int int X(w, w') a_p^+(w) a_q^+(w') |0>, any X.
  void add_pair_operator(const std::string& p, const std::string& q,
                         const JointAmplitude& x, cplx c = {1.0, 0.0});
  // Adds directly to the stored amplitude of the pair (caller keeps A_pp
  // symmetric).
  void add_stored(const ModePair& key, const JointAmplitude& a,
                  cplx c = {1.0, 0.0});
  void add(const PhotonicState& other, cplx c = {1.0, 0.0});

  PhotonicState scaled(cplx c) const;
  PhotonicState renamed(const std::string& from, const std::string& to) const;
  PhotonicState normalized() const;

  double norm_squared() const;
  // Probability of the 0-, 1- and 2-photon sectors.
  double sector_probability(int photons) const;

 private:
  FrequencyGrid grid_;
  std::set<std::string> modes_;
  cplx vacuum_{0.0, 0.0};
  std::map<std::string, CVec> singles_;
  std::map<ModePair, JointAmplitude> doubles_;
};

cplx inner_product(const PhotonicState& a, const PhotonicState& b);

// Frequency-local linear map on a set of modes: a_p^+(w) -> sum_r U_rp(w)
// a_r^+(w). Entries are stored row-major, u[r * k + p]; an empty vector
// means the entry is identically zero.
struct ModeTransform {
  std::vector<std::string> modes;
  std::vector<CVec> u;

  std::size_t k() const { return modes.size(); }
  const CVec& at(std::size_t r, std::size_t p) const { return u[r * k() + p]; }
};

PhotonicState apply_transform(const PhotonicState& state,
                              const ModeTransform& t);

// Arbitrary linear single-photon map on one mode, applied to every sector.
PhotonicState apply_local(const PhotonicState& state, const std::string& mode,
                          const std::function<CVec(const CVec&)>& map);

}  // namespace tfq
