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

#include "tfq/measurement.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <set>
#include <variant>

namespace tfq {
namespace {

using Eigen::MatrixXcd;

constexpr double kRankTol = 1e-13;

// Scalar (0-d), spectral (1-d) or joint (2-d) coefficient function.
using Fn = std::variant<std::monostate, CVec, JointAmplitude>;

// Vector in spectator (x) external space: sum_k per_k[k] (x) e_k.
struct BVec {
  std::vector<PhotonicState> per_k;
};

struct Block {
  Pattern pnr;
  std::vector<Fn> f;
  std::vector<BVec> b;
};

cplx fn_inner(const Fn& a, const Fn& b, double dw) {
  if (std::holds_alternative<std::monostate>(a)) return {1.0, 0.0};
  if (const auto* x = std::get_if<CVec>(&a)) {
    const auto& y = std::get<CVec>(b);
    cplx acc{};
    for (std::size_t j = 0; j < x->size(); ++j) acc += std::conj((*x)[j]) * y[j];
    return acc * dw;
  }
  return inner_product(std::get<JointAmplitude>(a), std::get<JointAmplitude>(b));
}

cplx bvec_inner(const BVec& a, const BVec& b) {
  cplx acc{};
  for (std::size_t k = 0; k < a.per_k.size(); ++k) {
    acc += inner_product(a.per_k[k], b.per_k[k]);
  }
  return acc;
}

// A = sum_r u_r (x) v_r with few terms.
std::vector<std::pair<CVec, CVec>> factorize(const JointAmplitude& a) {
  if (!a.has_dense()) {
    JointAmplitude c = a;
    c.compress();
    return c.terms();
  }
  const std::size_t n = a.n();
  CVec d = a.to_dense();
  MatrixXcd m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = d[i * n + j];
  }
  Eigen::BDCSVD<MatrixXcd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  std::vector<std::pair<CVec, CVec>> out;
  if (s.size() == 0 || s(0) <= 0.0) return out;
  for (Eigen::Index r = 0; r < s.size(); ++r) {
    if (s(r) < 1e-14 * s(0)) break;
    CVec u(n);
    CVec v(n);
    for (std::size_t i = 0; i < n; ++i) {
      u[i] = s(r) * svd.matrixU()(static_cast<Eigen::Index>(i), r);
      v[i] = std::conj(svd.matrixV()(static_cast<Eigen::Index>(i), r));
    }
    out.emplace_back(std::move(u), std::move(v));
  }
  return out;
}

Pattern threshold_view(const Pattern& p, const DetectorAssignment& det,
                       bool& bunched) {
  Pattern out;
  bunched = false;
  for (const auto& [m, c] : p.counts) {
    if (det.at(m).model.kind == DetectorKind::threshold) {
      if (c > 1) bunched = true;
      out.counts.emplace_back(m, 1);
    } else {
      out.counts.emplace_back(m, c);
    }
  }
  return out;
}

PhotonicState dilate(const PhotonicState& s, const std::string& mode,
                     const FilterSpec& f) {
  auto t = transmission(f, s.grid());
  const std::size_t n = t.size();
  CVec tt(n);
  CVec ll(n);
  CVec ml(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double l = std::sqrt(std::max(0.0, 1.0 - t[j] * t[j]));
    tt[j] = t[j];
    ll[j] = l;
    ml[j] = -l;
  }
  PhotonicState in = s;
  in.add_mode(loss_mode(mode));
  ModeTransform u{{mode, loss_mode(mode)}, {tt, ml, ll, tt}};
  return apply_transform(in, u);
}

struct Classified {
  std::set<std::string> detected;
  std::set<std::string> traced;
  std::set<std::string> spectators;
  int role(const std::string& m) const {
    if (detected.count(m)) return 0;
    if (traced.count(m)) return 1;
    return 2;
  }
};

class Enumerator {
 public:
  Enumerator(const FrequencyGrid& g, std::size_t k, const Classified& c)
      : grid_(g), k_(k), cls_(c) {}

  void add_branch(std::size_t k, const PhotonicState& y) {
    PhotonicState& pure = pure_at(k);
    pure.add_vacuum(y.vacuum_amp());
    for (const auto& [m, s] : y.singles()) {
      switch (cls_.role(m)) {
        case 0:
          add({Pattern::of({{m, 1}}), ""}, s, vac(k));
          break;
        case 1:
          add({Pattern::none(), m}, s, vac(k));
          break;
        default:
          pure.add_single(m, s);
      }
    }
    for (const auto& [key, a] : y.doubles()) {
      const auto& [p, q] = key;
      const int rp = cls_.role(p);
      const int rq = cls_.role(q);
      if (rp == 2 && rq == 2) {
        pure.add_stored(key, a);
      } else if (rp == 2 || rq == 2) {
        const std::string& x = rp == 2 ? q : p;
        const std::string& s = rp == 2 ? p : q;
        Key kk = cls_.role(x) == 0 ? Key{Pattern::of({{x, 1}}), ""}
                                   : Key{Pattern::none(), x};
        for (auto& [u, v] : factorize(y.joint(x, s))) {
          add(kk, u, single(k, s, v));
        }
      } else if (rp == 0 && rq == 0) {
        Pattern pat = p == q ? Pattern::of({{p, 2}})
                             : Pattern::of({{p, 1}, {q, 1}});
        add({pat, ""}, a, vac(k));
      } else if (rp == 1 && rq == 1) {
        add({Pattern::none(), p + "," + q}, a, vac(k));
      } else {
        const std::string& d = rp == 0 ? p : q;
        const std::string& l = rp == 0 ? q : p;
        add({Pattern::of({{d, 1}}), l}, y.joint(d, l), vac(k));
      }
    }
  }

  std::vector<Block> finish() {
    BVec pure;
    bool any = false;
    for (auto& s : pure_) {
      if (s.norm_squared() > 0.0) any = true;
    }
    std::vector<Block> out;
    if (any) {
      pure.per_k = pure_;
      out.push_back({Pattern::none(), {Fn{}}, {pure}});
    }
    for (auto& [key, blk] : blocks_) out.push_back(std::move(blk));
    return out;
  }

 private:
  using Key = std::pair<Pattern, std::string>;

  PhotonicState& pure_at(std::size_t k) {
    if (pure_.empty()) {
      pure_.assign(k_, PhotonicState(grid_));
      for (auto& s : pure_) {
        for (const auto& m : cls_.spectators) s.add_mode(m);
      }
    }
    return pure_[k];
  }
  BVec empty_bvec() const {
    BVec b;
    b.per_k.assign(k_, PhotonicState(grid_));
    for (auto& s : b.per_k) {
      for (const auto& m : cls_.spectators) s.add_mode(m);
    }
    return b;
  }
  BVec vac(std::size_t k) const {
    BVec b = empty_bvec();
    b.per_k[k].add_vacuum(1.0);
    return b;
  }
  BVec single(std::size_t k, const std::string& m, const CVec& v) const {
    BVec b = empty_bvec();
    b.per_k[k].add_single(m, v);
    return b;
  }
  void add(const Key& key, Fn f, BVec b) {
    auto [it, fresh] = blocks_.try_emplace(key);
    if (fresh) it->second.pnr = key.first;
    it->second.f.push_back(std::move(f));
    it->second.b.push_back(std::move(b));
  }

  FrequencyGrid grid_;
  std::size_t k_;
  const Classified& cls_;
  std::vector<PhotonicState> pure_;
  std::map<Key, Block> blocks_;
};

MatrixXcd block_m(const Block& b, double dw) {
  const auto j = static_cast<Eigen::Index>(b.f.size());
  MatrixXcd m(j, j);
  for (Eigen::Index r = 0; r < j; ++r) {
    for (Eigen::Index c = r; c < j; ++c) {
      m(r, c) = fn_inner(b.f[static_cast<std::size_t>(c)],
                         b.f[static_cast<std::size_t>(r)], dw);
      m(c, r) = std::conj(m(r, c));
    }
  }
  return m;
}

MatrixXcd gram(const std::vector<const BVec*>& b) {
  const auto j = static_cast<Eigen::Index>(b.size());
  MatrixXcd g(j, j);
  for (Eigen::Index r = 0; r < j; ++r) {
    for (Eigen::Index c = r; c < j; ++c) {
      g(r, c) = bvec_inner(*b[static_cast<std::size_t>(r)],
                           *b[static_cast<std::size_t>(c)]);
      g(c, r) = std::conj(g(r, c));
    }
  }
  return g;
}

struct Assembler {
  const FrequencyGrid& grid;
  const std::vector<SpectralAmplitude>* ext_basis;  // null: no external photon
  std::string ext_mode;
  std::set<std::string> spectators;

  PhotonicState to_state(const BVec& v, bool& ok) const {
    if (ext_basis == nullptr) return v.per_k[0];
    PhotonicState out(grid);
    for (const auto& m : spectators) out.add_mode(m);
    out.add_mode(ext_mode);
    for (std::size_t k = 0; k < v.per_k.size(); ++k) {
      const auto& s = v.per_k[k];
      const CVec& e = (*ext_basis)[k].samples;
      if (!s.doubles().empty()) {
        for (const auto& [key, a] : s.doubles()) {
          if (a.norm_squared() > 0.0) ok = false;
        }
      }
      out.add_single(ext_mode, e, s.vacuum_amp());
      for (const auto& [m, x] : s.singles()) out.add_pair(m, x, ext_mode, e);
    }
    return out;
  }
};

ConditionalState conditional(const std::vector<const BVec*>& b,
                             const MatrixXcd& m, const MatrixXcd& g,
                             double prob, const Assembler& as) {
  ConditionalState out;
  Eigen::SelfAdjointEigenSolver<MatrixXcd> eg(g);
  const auto& lam = eg.eigenvalues();
  const double lmax = lam.size() ? lam.maxCoeff() : 0.0;
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    if (lam(i) > kRankTol * lmax && lam(i) > 0.0) keep.push_back(i);
  }
  const auto r = static_cast<Eigen::Index>(keep.size());
  MatrixXcd qs(g.rows(), r);  // Q Lambda^{1/2}
  MatrixXcd qi(g.rows(), r);  // Q Lambda^{-1/2}
  for (Eigen::Index c = 0; c < r; ++c) {
    const double l = lam(keep[static_cast<std::size_t>(c)]);
    qs.col(c) = eg.eigenvectors().col(keep[static_cast<std::size_t>(c)]) * std::sqrt(l);
    qi.col(c) = eg.eigenvectors().col(keep[static_cast<std::size_t>(c)]) / std::sqrt(l);
  }
  MatrixXcd kmat = qs.adjoint() * m * qs;
  kmat = 0.5 * (kmat + kmat.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<MatrixXcd> ek(kmat);
  MatrixXcd coef = qi * ek.eigenvectors();
  for (Eigen::Index i = ek.eigenvalues().size() - 1; i >= 0; --i) {
    const double w = ek.eigenvalues()(i) / prob;
    if (w < 1e-14) continue;
    BVec v;
    v.per_k.assign(b[0]->per_k.size(), PhotonicState(as.grid));
    for (std::size_t k = 0; k < v.per_k.size(); ++k) {
      for (const auto& s : as.spectators) v.per_k[k].add_mode(s);
    }
    for (std::size_t j = 0; j < b.size(); ++j) {
      const cplx c = coef(static_cast<Eigen::Index>(j), i);
      if (c == cplx{}) continue;
      for (std::size_t k = 0; k < v.per_k.size(); ++k) {
        v.per_k[k].add(b[j]->per_k[k], c);
      }
    }
    bool ok = true;
    PhotonicState s = as.to_state(v, ok);
    if (!ok) {
      out.available = false;
      out.members.clear();
      return out;
    }
    const double n2 = s.norm_squared();
    if (n2 > 0.0) s = s.scaled(1.0 / std::sqrt(n2));
    out.members.push_back({w, std::move(s)});
  }
  return out;
}

std::vector<OutcomeRecord> run(const std::vector<Branch>& branches,
                               const DetectorAssignment& det,
                               const std::string* ext_mode) {
  if (branches.empty()) throw UsageError("no input branches");
  const FrequencyGrid& grid = branches.front().state.grid();
  if (det.empty()) throw MissingAssignment("no detectors assigned");

  // Filters as unitary dilations into traced loss modes.
  std::vector<PhotonicState> xs;
  Classified cls;
  for (const auto& br : branches) {
    PhotonicState s = br.state;
    if (!(s.grid() == grid)) throw GridMismatch("branches on different grids");
    for (const auto& [m, d] : det) {
      if (!s.has_mode(m)) {
        throw MissingAssignment("detector assigned to absent mode '" + m + "'");
      }
      if (d.filter) s = dilate(s, m, *d.filter);
    }
    xs.push_back(std::move(s));
  }
  for (const auto& [m, d] : det) {
    cls.detected.insert(m);
    if (d.filter) cls.traced.insert(loss_mode(m));
  }
  for (const auto& x : xs) {
    for (const auto& m : x.modes()) {
      if (!cls.detected.count(m) && !cls.traced.count(m)) cls.spectators.insert(m);
    }
  }

  // Orthonormal external basis e_k = sum_m chi_m W_mk, y_k = sum_m V_km x_m.
  std::vector<PhotonicState> ys;
  std::vector<SpectralAmplitude> ext_basis;
  if (ext_mode == nullptr) {
    if (branches.size() != 1) throw UsageError("several branches need an external mode");
    ys = xs;
  } else {
    const auto nb = static_cast<Eigen::Index>(branches.size());
    MatrixXcd s(nb, nb);
    for (Eigen::Index i = 0; i < nb; ++i) {
      for (Eigen::Index j = 0; j < nb; ++j) {
        s(i, j) = inner_product(branches[static_cast<std::size_t>(i)].external,
                                branches[static_cast<std::size_t>(j)].external);
      }
    }
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(s);
    const double lmax = es.eigenvalues().maxCoeff();
    for (Eigen::Index k = 0; k < nb; ++k) {
      const double l = es.eigenvalues()(k);
      if (!(l > kRankTol * lmax)) continue;
      auto q = es.eigenvectors().col(k);
      SpectralAmplitude e(grid);
      PhotonicState y(grid);
      for (Eigen::Index m = 0; m < nb; ++m) {
        const auto mi = static_cast<std::size_t>(m);
        const CVec& chi = branches[mi].external.samples;
        const cplx wk = q(m) / std::sqrt(l);
        for (std::size_t j = 0; j < chi.size(); ++j) e.samples[j] += wk * chi[j];
        y.add(xs[mi], std::conj(q(m)) * std::sqrt(l));
      }
      for (const auto& x : xs) {
        for (const auto& md : x.modes()) y.add_mode(md);
      }
      ext_basis.push_back(std::move(e));
      ys.push_back(std::move(y));
    }
  }

  Enumerator en(grid, ys.size(), cls);
  for (std::size_t k = 0; k < ys.size(); ++k) en.add_branch(k, ys[k]);
  std::vector<Block> blocks = en.finish();

  const double dw = grid.d_omega();
  Assembler as{grid, ext_mode ? &ext_basis : nullptr, ext_mode ? *ext_mode : "",
               cls.spectators};

  struct Group {
    std::vector<const Block*> blocks;
    bool ambiguous = false;
  };
  std::map<Pattern, Group> groups;
  std::vector<double> block_prob(blocks.size());
  std::vector<MatrixXcd> ms(blocks.size());
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    ms[i] = block_m(blocks[i], dw);
    std::vector<const BVec*> bp;
    for (const auto& v : blocks[i].b) bp.push_back(&v);
    block_prob[i] = std::max(0.0, (ms[i] * gram(bp)).trace().real());
    bool bunched = false;
    Pattern key = threshold_view(blocks[i].pnr, det, bunched);
    auto& g = groups[key];
    g.blocks.push_back(&blocks[i]);
    if (bunched && block_prob[i] > 0.0) g.ambiguous = true;
  }

  std::vector<OutcomeRecord> out;
  for (const auto& [pat, g] : groups) {
    OutcomeRecord rec;
    rec.pattern = pat;
    rec.ambiguous = g.ambiguous;
    std::vector<const BVec*> bp;
    std::vector<std::size_t> offsets;
    for (const Block* blk : g.blocks) {
      const auto idx = static_cast<std::size_t>(blk - blocks.data());
      rec.by_photon_number[static_cast<std::size_t>(blk->pnr.total())] += block_prob[idx];
      rec.probability += block_prob[idx];
      offsets.push_back(bp.size());
      for (const auto& v : blk->b) bp.push_back(&v);
    }
    if (!(rec.probability > 0.0)) continue;
    const auto nj = static_cast<Eigen::Index>(bp.size());
    MatrixXcd m = MatrixXcd::Zero(nj, nj);
    for (std::size_t i = 0; i < g.blocks.size(); ++i) {
      const auto idx = static_cast<std::size_t>(g.blocks[i] - blocks.data());
      const auto o = static_cast<Eigen::Index>(offsets[i]);
      m.block(o, o, ms[idx].rows(), ms[idx].cols()) = ms[idx];
    }
    if (rec.probability > 1e-300) {
      rec.conditional = conditional(bp, m, gram(bp), rec.probability, as);
    }
    out.push_back(std::move(rec));
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.pattern < b.pattern; });
  return out;
}

}  // namespace

FilterSpec FilterSpec::band(double center, double width) {
  FilterSpec f;
  f.kind = Kind::band;
  f.center = center;
  f.width = width;
  return f;
}

FilterSpec FilterSpec::comb(int parity, double omega_bar, double sigma_tilde,
                            double kappa_tilde) {
  FilterSpec f;
  f.kind = parity == 0 ? Kind::even : Kind::odd;
  f.omega_bar = omega_bar;
  f.sigma_tilde = sigma_tilde;
  f.kappa_tilde = kappa_tilde;
  return f;
}

void validate(const FilterSpec& f) {
  if (f.kind == FilterSpec::Kind::band) {
    if (!(f.width > 0.0) || !std::isfinite(f.center)) {
      throw ConfigError("band filter needs a positive width");
    }
    return;
  }
  if (!(f.sigma_tilde > 0.0) || !(f.kappa_tilde > 0.0) || !(f.omega_bar > 0.0)) {
    throw ConfigError("comb filter widths and period must be positive");
  }
}

std::vector<double> transmission(const FilterSpec& f, const FrequencyGrid& g) {
  validate(f);
  std::vector<double> t(g.n_points);
  if (f.kind == FilterSpec::Kind::band) {
    for (std::size_t j = 0; j < g.n_points; ++j) {
      const double d = (g.omega(j) - f.center) / f.width;
      t[j] = std::exp(-0.5 * d * d);
    }
    return t;
  }
  GkpParams p{f.omega_bar, f.sigma_tilde, f.kappa_tilde, 0};
  auto comb = comb_function(p, f.kind == FilterSpec::Kind::even ? 0 : 1);
  double peak = 0.0;
  for (std::size_t j = 0; j < g.n_points; ++j) {
    t[j] = comb(g.omega(j));
    peak = std::max(peak, t[j]);
  }
  if (!(peak > 0.0)) throw OutOfBand("filter has no teeth inside the band");
  for (auto& x : t) x /= peak;
  return t;
}

FilterResult apply_filter(const PhotonicState& state, const std::string& mode,
                          const FilterSpec& filter) {
  state.require_mode(mode);
  auto t = transmission(filter, state.grid());
  CVec tt(t.begin(), t.end());
  ModeTransform u{{mode}, {tt}};
  PhotonicState out = apply_transform(state, u);
  return {out, out.norm_squared()};
}

std::string to_string(DetectorKind k) {
  return k == DetectorKind::pnr ? "pnr" : "threshold";
}

Pattern Pattern::of(std::vector<std::pair<std::string, int>> c) {
  std::sort(c.begin(), c.end());
  return Pattern{std::move(c)};
}

int Pattern::total() const {
  int t = 0;
  for (const auto& [m, c] : counts) t += c;
  return t;
}

int Pattern::count(const std::string& mode) const {
  for (const auto& [m, c] : counts) {
    if (m == mode) return c;
  }
  return 0;
}

std::string Pattern::label() const {
  if (counts.empty()) return "none";
  std::string s;
  for (const auto& [m, c] : counts) {
    if (!s.empty()) s += ",";
    s += m;
    if (c > 1) s += "^" + std::to_string(c);
  }
  return s;
}

std::vector<OutcomeRecord> detect_pattern_probabilities(
    const PhotonicState& state, const DetectorAssignment& detectors) {
  return run({Branch{state, SpectralAmplitude(state.grid())}}, detectors, nullptr);
}

std::vector<OutcomeRecord> detect_with_external(
    const std::vector<Branch>& branches, const DetectorAssignment& detectors,
    const std::string& external_mode) {
  for (const auto& b : branches) {
    if (b.state.has_mode(external_mode)) {
      throw UsageError("external mode name clashes with a state mode");
    }
  }
  return run(branches, detectors, &external_mode);
}

const OutcomeRecord* find_record(const std::vector<OutcomeRecord>& records,
                                 const Pattern& pattern) {
  for (const auto& r : records) {
    if (r.pattern == pattern) return &r;
  }
  return nullptr;
}

PhotonicState postselect(const std::vector<OutcomeRecord>& records,
                         const Pattern& pattern) {
  const OutcomeRecord* r = find_record(records, pattern);
  if (r == nullptr || r->probability <= 1e-12) {
    throw ZeroProbabilityPattern("pattern '" + pattern.label() + "' has no support");
  }
  if (!r->conditional.available || r->conditional.members.empty()) {
    throw UsageError("conditional state not representable for '" + pattern.label() + "'");
  }
  return r->conditional.members.front().state;
}

std::string loss_mode(const std::string& mode) { return "~loss:" + mode; }

}  // namespace tfq
