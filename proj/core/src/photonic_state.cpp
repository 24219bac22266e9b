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

#include "tfq/photonic_state.hpp"

#include <cmath>
#include <numbers>

namespace tfq {
namespace {

constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

CVec scaled_vec(const CVec& v, cplx c) {
  CVec out = v;
  for (auto& x : out) x *= c;
  return out;
}

cplx dot(const CVec& a, const CVec& b) {
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

}  // namespace

ModePair make_pair_key(const std::string& p, const std::string& q) {
  return p <= q ? ModePair{p, q} : ModePair{q, p};
}

PhotonicState PhotonicState::vacuum(const FrequencyGrid& grid) {
  PhotonicState s(grid);
  s.vacuum_ = 1.0;
  return s;
}

PhotonicState PhotonicState::single(const std::string& mode,
                                    const SpectralAmplitude& a) {
  PhotonicState s(a.grid);
  s.add_single(mode, a.samples);
  return s;
}

PhotonicState PhotonicState::pair(const std::string& p,
                                  const SpectralAmplitude& u,
                                  const std::string& q,
                                  const SpectralAmplitude& v) {
  if (!(u.grid == v.grid)) throw GridMismatch("pair of different grids");
  PhotonicState s(u.grid);
  s.add_pair(p, u.samples, q, v.samples);
  return s;
}

void PhotonicState::require_mode(const std::string& m) const {
  if (!has_mode(m)) throw UnknownMode("no mode '" + m + "'");
}

SpectralAmplitude PhotonicState::single_amplitude(const std::string& mode) const {
  require_mode(mode);
  auto it = singles_.find(mode);
  if (it == singles_.end()) return SpectralAmplitude(grid_);
  return SpectralAmplitude(grid_, it->second);
}

JointAmplitude PhotonicState::joint(const std::string& p,
                                    const std::string& q) const {
  auto it = doubles_.find(make_pair_key(p, q));
  if (it == doubles_.end()) return JointAmplitude(grid_);
  if (p <= q) return it->second;
  return it->second.transposed();
}

void PhotonicState::add_single(const std::string& mode, const CVec& s, cplx c) {
  if (s.size() != grid_.n_points) throw GridMismatch("single amplitude size");
  modes_.insert(mode);
  auto [it, fresh] = singles_.try_emplace(mode, CVec(grid_.n_points));
  CVec& dst = it->second;
  for (std::size_t j = 0; j < s.size(); ++j) dst[j] += c * s[j];
}

void PhotonicState::add_pair(const std::string& p, const CVec& u,
                             const std::string& q, const CVec& v, cplx c) {
  modes_.insert(p);
  modes_.insert(q);
  auto key = make_pair_key(p, q);
  auto [it, fresh] = doubles_.try_emplace(key, JointAmplitude(grid_));
  JointAmplitude& a = it->second;
  if (p < q) {
    a.add_term(scaled_vec(u, c), v);
  } else if (q < p) {
    a.add_term(scaled_vec(v, c), u);
  } else {
    a.add_term(scaled_vec(u, c * kInvSqrt2), v);
    a.add_term(scaled_vec(v, c * kInvSqrt2), u);
  }
}

void PhotonicState::add_pair_operator(const std::string& p,
                                      const std::string& q,
                                      const JointAmplitude& x, cplx c) {
  if (x.empty()) return;
  modes_.insert(p);
  modes_.insert(q);
  auto key = make_pair_key(p, q);
  auto [it, fresh] = doubles_.try_emplace(key, JointAmplitude(grid_));
  JointAmplitude& a = it->second;
  if (p < q) {
    a.add(x, c);
  } else if (q < p) {
    a.add(x.transposed(), c);
  } else {
    a.add(x, c * kInvSqrt2);
    a.add(x.transposed(), c * kInvSqrt2);
  }
}

void PhotonicState::add_stored(const ModePair& key, const JointAmplitude& a,
                               cplx c) {
  if (a.empty()) return;
  modes_.insert(key.first);
  modes_.insert(key.second);
  auto [it, fresh] = doubles_.try_emplace(key, JointAmplitude(grid_));
  it->second.add(a, c);
}

void PhotonicState::add(const PhotonicState& other, cplx c) {
  if (modes_.empty() && singles_.empty() && doubles_.empty() &&
      vacuum_ == cplx{}) {
    grid_ = other.grid_;
  }
  if (!(grid_ == other.grid_)) throw GridMismatch("adding states on different grids");
  for (const auto& m : other.modes_) modes_.insert(m);
  vacuum_ += c * other.vacuum_;
  for (const auto& [m, s] : other.singles_) add_single(m, s, c);
  for (const auto& [k, a] : other.doubles_) add_stored(k, a, c);
}

PhotonicState PhotonicState::scaled(cplx c) const {
  PhotonicState out(grid_);
  out.add(*this, c);
  return out;
}

PhotonicState PhotonicState::renamed(const std::string& from,
                                     const std::string& to) const {
  require_mode(from);
  if (from == to) return *this;
  if (has_mode(to)) throw UsageError("mode '" + to + "' already exists");
  auto rn = [&](const std::string& m) { return m == from ? to : m; };
  PhotonicState out(grid_);
  for (const auto& m : modes_) out.modes_.insert(rn(m));
  out.vacuum_ = vacuum_;
  for (const auto& [m, s] : singles_) out.singles_[rn(m)] = s;
  for (const auto& [k, a] : doubles_) {
    std::string p = rn(k.first);
    std::string q = rn(k.second);
    if (p <= q) {
      out.doubles_[{p, q}] = a;
    } else {
      out.doubles_[{q, p}] = a.transposed();
    }
  }
  return out;
}

PhotonicState PhotonicState::normalized() const {
  double n2 = norm_squared();
  if (!(n2 > 0.0)) throw DegenerateDistribution("cannot normalize zero state");
  return scaled(1.0 / std::sqrt(n2));
}

double PhotonicState::norm_squared() const {
  return sector_probability(0) + sector_probability(1) + sector_probability(2);
}

double PhotonicState::sector_probability(int photons) const {
  const double dw = grid_.d_omega();
  double acc = 0.0;
  if (photons == 0) return std::norm(vacuum_);
  if (photons == 1) {
    for (const auto& [m, s] : singles_) {
      for (const auto& x : s) acc += std::norm(x);
    }
    return acc * dw;
  }
  if (photons == 2) {
    for (const auto& [k, a] : doubles_) acc += a.norm_squared();
    return acc;
  }
  return 0.0;
}

cplx inner_product(const PhotonicState& a, const PhotonicState& b) {
  if (!(a.grid() == b.grid())) throw GridMismatch("states on different grids");
  cplx acc = std::conj(a.vacuum_amp()) * b.vacuum_amp();
  const double dw = a.grid().d_omega();
  for (const auto& [m, s] : a.singles()) {
    auto it = b.singles().find(m);
    if (it != b.singles().end()) acc += dot(s, it->second) * dw;
  }
  for (const auto& [k, x] : a.doubles()) {
    auto it = b.doubles().find(k);
    if (it != b.doubles().end()) acc += inner_product(x, it->second);
  }
  return acc;
}

PhotonicState apply_transform(const PhotonicState& state,
                              const ModeTransform& t) {
  const std::size_t k = t.k();
  if (t.u.size() != k * k) throw UsageError("mode transform shape mismatch");
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < k; ++i) index[t.modes[i]] = i;

  PhotonicState out(state.grid());
  for (const auto& m : state.modes()) out.add_mode(m);
  for (const auto& m : t.modes) out.add_mode(m);
  out.add_vacuum(state.vacuum_amp());

  struct Target {
    std::string mode;
    const CVec* factor;  // nullptr = identity
  };
  auto targets = [&](const std::string& p) {
    std::vector<Target> out_t;
    auto it = index.find(p);
    if (it == index.end()) {
      out_t.push_back({p, nullptr});
      return out_t;
    }
    for (std::size_t r = 0; r < k; ++r) {
      const CVec& f = t.at(r, it->second);
      if (!f.empty()) out_t.push_back({t.modes[r], &f});
    }
    return out_t;
  };
  auto times = [](const CVec& a, const CVec* f) {
    if (f == nullptr) return a;
    CVec r = a;
    for (std::size_t j = 0; j < r.size(); ++j) r[j] *= (*f)[j];
    return r;
  };
  auto both = [](const JointAmplitude& a, const CVec* f, const CVec* g) {
    JointAmplitude x = f ? a.times_left(*f) : a;
    return g ? x.times_right(*g) : x;
  };

  for (const auto& [m, s] : state.singles()) {
    for (const auto& tg : targets(m)) out.add_single(tg.mode, times(s, tg.factor));
  }
  for (const auto& [key, a] : state.doubles()) {
    const auto& [p, q] = key;
    if (!index.count(p) && !index.count(q)) {
      out.add_stored(key, a);
      continue;
    }
    if (p == q) {
      auto tp = targets(p);
      for (std::size_t i = 0; i < tp.size(); ++i) {
        for (std::size_t j = 0; j < tp.size(); ++j) {
          const auto& r = tp[i];
          const auto& s = tp[j];
          if (r.mode == s.mode) {
            if (i == j) out.add_stored({r.mode, r.mode}, both(a, r.factor, s.factor));
            continue;
          }
          if (r.mode > s.mode) continue;
          out.add_stored({r.mode, s.mode}, both(a, r.factor, s.factor),
                         std::numbers::sqrt2);
        }
      }
      continue;
    }
    for (const auto& r : targets(p)) {
      for (const auto& s : targets(q)) {
        out.add_pair_operator(r.mode, s.mode, both(a, r.factor, s.factor));
      }
    }
  }
  return out;
}

PhotonicState apply_local(const PhotonicState& state, const std::string& mode,
                          const std::function<CVec(const CVec&)>& map) {
  state.require_mode(mode);
  PhotonicState out(state.grid());
  for (const auto& m : state.modes()) out.add_mode(m);
  out.add_vacuum(state.vacuum_amp());
  for (const auto& [m, s] : state.singles()) {
    out.add_single(m, m == mode ? map(s) : s);
  }
  for (const auto& [key, a] : state.doubles()) {
    JointAmplitude x = a;
    if (key.first == mode) x = x.map_left(map);
    if (key.second == mode) x = x.map_right(map);
    out.add_stored(key, x);
  }
  return out;
}

}  // namespace tfq
