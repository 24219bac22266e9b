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
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <mutex>
#include <numbers>
#include <thread>

#include <fmt/format.h>

#include "config.hpp"
#include "tfqcli/cli.hpp"

namespace tfqcli {
namespace {

using namespace tfq;

// CSV with the provenance comment line every table starts with.
class Table {
 public:
  Table(std::uint64_t hash, const std::vector<std::string>& columns) {
    out_ = fmt::format("# tfqsim schema={} config_hash={:016x}\n", kSchemaVersion, hash);
    for (std::size_t i = 0; i < columns.size(); ++i) {
      out_ += (i ? "," : "") + columns[i];
    }
    out_ += '\n';
  }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      out_ += (i ? "," : "") + cells[i];
    }
    out_ += '\n';
  }
  void row(std::initializer_list<double> xs) {
    std::vector<std::string> cells;
    for (double x : xs) cells.push_back(num(x));
    row(cells);
  }
  static std::string num(double x) {
    if (x == 0.0) x = 0.0;  // no "-0"
    return fmt::format("{:.12g}", x);
  }
  std::string str() const { return out_; }

 private:
  std::string out_;
};

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

std::string report(std::uint64_t hash, json body) {
  body["schema"] = kSchemaVersion;
  body["config_hash"] = fmt::format("{:016x}", hash);
  return body.dump(2) + "\n";
}

double unit_of(const EncodingParams& p) {
  if (const auto* c = std::get_if<CatParams>(&p)) return std::abs(c->delta());
  return std::get<GkpParams>(p).omega_bar;
}

std::size_t read_stride(const Node& root) {
  const auto s = root.integer("stride", 1);
  if (s < 1) root.fail("stride", "must be >= 1");
  return static_cast<std::size_t>(s);
}

void parallel_for(std::size_t n, unsigned threads,
                  const std::function<void(std::size_t)>& body) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex m;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(m);
          if (!first_error) first_error = std::current_exception();
          next = n;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

// ---- state ---------------------------------------------------------------

std::vector<OutputFile> cmd_state(const Document& doc, const RunOptions&) {
  Node root(doc.root, "");
  root.allow({"schema", "grid", "qubit", "stride"});
  check_schema(root);
  const FrequencyGrid g = read_grid(root.child("grid"));
  const QubitSpec q = read_qubit(root.child("qubit"));
  const std::size_t stride = read_stride(root);
  const double unit = unit_of(q.params);

  const SpectralAmplitude z = logical_state(q.params, 0, g);
  const SpectralAmplitude o = logical_state(q.params, 1, g);
  const SpectralAmplitude psi = make_qubit(q, g);

  Table freq(doc.hash, {"omega_over_unit", "p_logical0", "p_logical1", "p_qubit"});
  for (std::size_t j = 0; j < g.n_points; j += stride) {
    freq.row({g.omega(j) / unit, std::norm(z[j]) * unit, std::norm(o[j]) * unit,
              std::norm(psi[j]) * unit});
  }
  const TimeAmplitude tz = to_time_domain(z);
  const TimeAmplitude to = to_time_domain(o);
  const TimeAmplitude tp = to_time_domain(psi);
  Table time(doc.hash, {"t_times_unit", "p_logical0", "p_logical1", "p_qubit"});
  for (std::size_t k = 0; k < tp.size(); k += stride) {
    time.row({tp.time(k) * unit, std::norm(tz.samples[k]) / unit,
              std::norm(to.samples[k]) / unit, std::norm(tp.samples[k]) / unit});
  }

  json r;
  const cplx ov = inner_product(z, o);
  r["encoding"] = encoding_of(q.params) == Encoding::cat ? "cat" : "gkp";
  r["unit"] = unit;
  r["norm"] = norm_squared(psi);
  r["logical_overlap"] = complex_json(ov);
  r["frequency_rms_width"] = rms_width(psi);
  r["time_rms_width"] = rms_width(tp);
  if (const auto* c = std::get_if<CatParams>(&q.params)) {
    r["overlap_closed_form"] = closed_form::cat_overlap(c->delta(), c->sigma);
    r["overlap_closed_form_squared_exponent"] =
        closed_form::cat_overlap_squared(c->delta(), c->sigma);
    r["qubit_normalization"] = closed_form::qubit_normalization(q.alpha, q.beta, ov);
  } else {
    const auto& p = std::get<GkpParams>(q.params);
    r["n_max"] = p.truncation();
    if (!p.monochromatic()) {
      r["overlap_closed_form"] = closed_form::gkp_overlap(p);
      r["overlap_series_both_neighbours"] = closed_form::gkp_overlap_series(p);
    }
  }
  return {{"state_frequency.csv", freq.str()},
          {"state_time.csv", time.str()},
          {"state.json", report(doc.hash, r)}};
}

// ---- mzi -----------------------------------------------------------------

std::vector<OutputFile> cmd_mzi(const Document& doc, const RunOptions&) {
  Node root(doc.root, "");
  root.allow({"schema", "grid", "qubit", "phi", "tau", "stride"});
  check_schema(root);
  const FrequencyGrid g = read_grid(root.child("grid"));
  const QubitSpec q = read_qubit(root.child("qubit"));
  const std::size_t stride = read_stride(root);
  const double unit = unit_of(q.params);
  const bool cat = encoding_of(q.params) == Encoding::cat;
  if (cat && root.has("tau")) root.fail("tau", "cat interferometers take phi");
  if (!cat && root.has("phi")) root.fail("phi", "GKP interferometers take tau");

  const double phi = root.number("phi", std::numbers::pi);
  const double tau = root.number("tau", cat ? 0.0 : std::numbers::pi / unit);
  auto run = [&](const SpectralAmplitude& a) {
    const PhotonicState in = PhotonicState::single("a", a);
    return cat ? cat_fqbs(in, "a", "b", phi, std::get<CatParams>(q.params))
               : gkp_fqbs(in, "a", "b", tau);
  };
  auto port_probability = [](const PhotonicState& s, const std::string& m) {
    return s.has_mode(m) && s.singles().count(m)
               ? norm_squared(s.single_amplitude(m))
               : 0.0;
  };

  const PhotonicState out = run(make_qubit(q, g));
  const auto pa = port_spectrum(out, "a");
  const auto pb = port_spectrum(out, "b");
  Table t(doc.hash, {"omega_over_unit", "p_port_a", "p_port_b"});
  for (std::size_t j = 0; j < g.n_points; j += stride) {
    t.row({g.omega(j) / unit, pa[j] * unit, pb[j] * unit});
  }

  // Logical 0 belongs in a for the cat interferometer and in b for the GKP one.
  const std::string home0 = cat ? "a" : "b";
  const std::string home1 = cat ? "b" : "a";
  const PhotonicState o0 = run(logical_state(q.params, 0, g));
  const PhotonicState o1 = run(logical_state(q.params, 1, g));
  json r;
  r["encoding"] = cat ? "cat" : "gkp";
  r["unit"] = unit;
  if (cat) {
    r["phi"] = phi;
  } else {
    r["tau"] = tau;
  }
  r["p_port_a"] = port_probability(out, "a");
  r["p_port_b"] = port_probability(out, "b");
  r["logical0_port"] = home0;
  r["logical1_port"] = home1;
  r["leakage_logical0"] = port_probability(o0, home1);
  r["leakage_logical1"] = port_probability(o1, home0);
  return {{"ports.csv", t.str()}, {"mzi.json", report(doc.hash, r)}};
}

// ---- teleport ------------------------------------------------------------

DetectorKind read_detector(const Node& n, const std::string& key,
                           const std::string& value) {
  if (value == "threshold") return DetectorKind::threshold;
  if (value == "pnr") return DetectorKind::pnr;
  n.fail(key, "expected \"threshold\" or \"pnr\"");
}

std::vector<OutputFile> cmd_teleport(const Document& doc, const RunOptions&) {
  Node root(doc.root, "");
  root.allow({"schema", "grid", "qubit", "epr", "detectors", "z_variant"});
  check_schema(root);
  TeleportConfig cfg;
  cfg.grid = read_grid(root.child("grid"));
  cfg.input = read_qubit(root.child("qubit"));
  cfg.detectors = read_detector(root, "detectors", root.string("detectors", "threshold"));
  const std::string z = root.string("z_variant", "binned");
  if (z == "delay_line") {
    cfg.z = ZVariant::delay_line;
  } else if (z != "binned") {
    root.fail("z_variant", "expected \"binned\" or \"delay_line\"");
  }
  if (auto e = root.optional_child("epr")) {
    const bool cat = encoding_of(cfg.input.params) == Encoding::cat;
    if (cat) {
      e->allow({"sigma", "variant"});
    } else {
      e->allow({"sigma", "kappa", "variant"});
    }
    EncodingParams t = resolved_epr(cfg);
    if (auto* c = std::get_if<CatParams>(&t)) {
      c->sigma = e->positive("sigma", c->sigma);
    } else {
      auto& k = std::get<GkpParams>(t);
      k.sigma = e->positive("sigma", k.sigma);
      k.kappa = e->positive("kappa", k.kappa);
    }
    cfg.epr = t;
    if (e->has("variant")) {
      try {
        cfg.variant = bell_variant_from_string(e->string("variant"));
      } catch (const Error&) {
        e->fail("variant", "expected one of phi+, phi-, psi+, psi-");
      }
    }
  }
  const TeleportReport rep = run_teleport(cfg);
  const EncodingParams epr = resolved_epr(cfg);
  const double unit = unit_of(cfg.input.params);

  json r;
  r["detectors"] = to_string(cfg.detectors);
  r["variant"] = to_string(cfg.variant);
  if (const auto* c = std::get_if<CatParams>(&epr)) {
    r["epr"] = {{"sigma", c->sigma}};
  } else {
    const auto& k = std::get<GkpParams>(epr);
    r["epr"] = {{"sigma", k.sigma}, {"kappa", k.kappa}};
  }
  r["total_success"] = rep.total_success;
  r["total_success_optimistic"] = rep.total_success_optimistic;
  r["raw_success"] = rep.raw_success;
  r["heralding_probability"] = rep.heralding_probability;
  r["ambiguous_probability"] = rep.ambiguous_probability;
  r["analytic_success"] = rep.analytic_success;
  r["mean_fidelity"] = rep.mean_fidelity;
  r["completeness"] = rep.completeness;

  std::vector<const PatternReport*> kept;
  json pats = json::array();
  for (const auto& p : rep.per_pattern) {
    json e;
    e["pattern"] = p.pattern.label();
    e["probability"] = p.probability;
    e["raw_probability"] = p.raw_probability;
    e["accepted"] = p.accepted;
    e["ambiguous"] = p.ambiguous;
    e["bell"] = p.bell ? json(to_string(*p.bell)) : json(nullptr);
    e["pauli"] = to_string(p.pauli);
    if (p.accepted) e["fidelity"] = p.fidelity;
    if (p.corrected) {
      e["conditional_state_ref"] = "teleported.csv#" + p.pattern.label();
      kept.push_back(&p);
    } else {
      e["conditional_state_ref"] = nullptr;
    }
    pats.push_back(std::move(e));
  }
  r["per_pattern"] = std::move(pats);

  std::vector<std::string> cols{"omega_over_unit"};
  for (const auto* p : kept) cols.push_back(p->pattern.label());
  Table t(doc.hash, cols);
  for (std::size_t j = 0; j < cfg.grid.n_points; ++j) {
    std::vector<std::string> cells{Table::num(cfg.grid.omega(j) / unit)};
    for (const auto* p : kept) cells.push_back(Table::num(std::norm((*p->corrected)[j]) * unit));
    t.row(cells);
  }
  return {{"teleport.json", report(doc.hash, r)}, {"teleported.csv", t.str()}};
}

// ---- jsa -----------------------------------------------------------------

std::vector<OutputFile> cmd_jsa(const Document& doc, const RunOptions&) {
  Node root(doc.root, "");
  root.allow({"schema", "grid", "jsa", "frequency_beam_splitter", "stride"});
  check_schema(root);
  const FrequencyGrid g = read_grid(root.child("grid"));
  const JsaShape shape = read_jsa(root.child("jsa"));
  const bool fbs = root.boolean("frequency_beam_splitter", false);
  const std::size_t stride = read_stride(root);
  const double unit = shape.comb.omega_bar;

  JointAmplitude j = jsa_build(shape, g);
  json r;
  r["form"] = shape.form == JsaShape::Form::spdc_cavity ? "spdc-cavity" : "fbs-entangled";
  r["norm"] = j.norm_squared();
  r["frequency_beam_splitter"] = fbs;
  if (fbs) {
    j = frequency_beam_splitter(j);
    r["norm_after_frequency_beam_splitter"] = j.norm_squared();
  }
  std::vector<double> x(g.n_points);
  for (std::size_t i = 0; i < g.n_points; ++i) x[i] = g.omega(i);
  r["signal_peak_width"] = lattice_peak_width(x, j.first_marginal(), unit);
  r["idler_peak_width"] = lattice_peak_width(x, j.second_marginal(), unit);

  Table t(doc.hash, {"omega_s_over_unit", "omega_i_over_unit", "jsi"});
  const CVec d = j.to_dense();
  for (std::size_t a = 0; a < g.n_points; a += stride) {
    for (std::size_t b = 0; b < g.n_points; b += stride) {
      t.row({x[a] / unit, x[b] / unit, std::norm(d[a * g.n_points + b]) * unit * unit});
    }
  }
  return {{"jsi.csv", t.str()}, {"jsa.json", report(doc.hash, r)}};
}

// ---- correct -------------------------------------------------------------

std::vector<OutputFile> cmd_correct(const Document& doc, const RunOptions& opt) {
  Node root(doc.root, "");
  root.allow({"schema", "grid", "jsa", "measure", "resolution", "rounds", "seed",
              "lattice_period"});
  check_schema(root);
  if (!root.has("seed")) root.fail("seed", "required (config field or --seed)");
  const std::uint64_t seed = root.unsigned_integer("seed");
  const FrequencyGrid g = read_grid(root.child("grid"));
  const JsaShape shape = read_jsa(root.child("jsa"));
  const std::string m = root.string("measure", "time");
  MeasuredVariable measure = MeasuredVariable::time;
  if (m == "frequency") {
    measure = MeasuredVariable::frequency;
  } else if (m != "time") {
    root.fail("measure", "expected \"time\" or \"frequency\"");
  }
  const double resolution = root.non_negative("resolution", 0.0);
  const auto rounds = root.integer("rounds", 100);
  if (rounds < 1 || rounds > 100000) root.fail("rounds", "must be in [1, 100000]");
  const double wb = shape.comb.omega_bar;
  const double period = root.positive(
      "lattice_period",
      measure == MeasuredVariable::time ? 2.0 * std::numbers::pi / wb : wb);

  const JointAmplitude j = jsa_build(shape, g);

  // Uncorrected signal marginal in the measured variable.
  std::vector<double> x(g.n_points);
  std::vector<double> marginal;
  if (measure == MeasuredVariable::time) {
    const JointAmplitude jt = j.map_left(
        [&](const CVec& c) { return to_time_domain(SpectralAmplitude(g, c)).samples; });
    marginal = jt.first_marginal();
    const TimeAmplitude probe = to_time_domain(SpectralAmplitude(g));
    for (std::size_t k = 0; k < g.n_points; ++k) x[k] = probe.time(k);
  } else {
    marginal = j.first_marginal();
    for (std::size_t k = 0; k < g.n_points; ++k) x[k] = g.omega(k);
  }
  const double marginal_width = lattice_peak_width(x, marginal, period);

  struct Row {
    double outcome, syndrome, before, after;
  };
  const auto n = static_cast<std::size_t>(rounds);
  std::vector<Row> rows(n);
  parallel_for(n, opt.threads, [&](std::size_t i) {
    const CorrectionResult c =
        entanglement_correct_round(j, measure, resolution, period, seed + i);
    auto width = [&](const SpectralAmplitude& a) {
      return measure == MeasuredVariable::time
                 ? lattice_peak_width(to_time_domain(a), period)
                 : lattice_peak_width(a, period);
    };
    rows[i] = {c.outcome, c.syndrome, width(c.conditional), width(c.corrected)};
  });

  Table t(doc.hash, {"round", "outcome", "syndrome", "peak_width_conditional",
                     "peak_width_corrected"});
  double before = 0.0;
  double after = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    t.row({static_cast<double>(i), rows[i].outcome, rows[i].syndrome, rows[i].before,
           rows[i].after});
    before += rows[i].before;
    after += rows[i].after;
  }
  json r;
  r["measure"] = m;
  r["lattice_period"] = period;
  r["rounds"] = rounds;
  r["seed"] = seed;
  r["marginal_peak_width"] = marginal_width;
  r["mean_peak_width_conditional"] = before / static_cast<double>(n);
  r["mean_peak_width_corrected"] = after / static_cast<double>(n);
  return {{"correct.csv", t.str()}, {"correct.json", report(doc.hash, r)}};
}

// ---- sweep ---------------------------------------------------------------

std::vector<OutputFile> cmd_sweep(const Document& doc, const RunOptions& opt) {
  Node root(doc.root, "");
  root.allow({"schema", "encoding", "sigma", "delta_over_sigma", "sigma_tilde_over_sigma",
              "detectors", "n_points", "margin_sigmas", "alpha", "beta"});
  check_schema(root);
  if (root.string("encoding", "cat") != "cat") {
    root.fail("encoding", "sweeps are defined over cat qubits");
  }
  const double sigma = root.positive("sigma", 1.0);
  auto deltas = root.number_list("delta_over_sigma", {});
  if (deltas.empty()) root.fail("delta_over_sigma", "missing");
  auto tildes = root.number_list("sigma_tilde_over_sigma", {0.5});
  auto kinds = root.string_list("detectors", {"threshold"});
  const auto np = root.integer("n_points", 512);
  if (np < 2 || (np & (np - 1)) != 0) root.fail("n_points", "must be a power of two");
  const double margin = root.positive("margin_sigmas", 12.0);
  const cplx alpha = root.complex("alpha", {1.0 / std::numbers::sqrt2, 0.0});
  const cplx beta = root.complex("beta", {1.0 / std::numbers::sqrt2, 0.0});
  for (double d : deltas) {
    if (!(d > 0.0)) root.fail("delta_over_sigma", "values must be positive");
  }
  for (double t : tildes) {
    if (!(t > 0.0) || t > 1.0) root.fail("sigma_tilde_over_sigma", "values must be in (0, 1]");
  }
  for (const auto& k : kinds) read_detector(root, "detectors", k);

  auto sort_unique = [](auto& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  sort_unique(deltas);
  sort_unique(tildes);
  sort_unique(kinds);

  struct Point {
    double d, t;
    std::string kind;
    TeleportReport rep;
  };
  std::vector<Point> pts;
  for (double d : deltas) {
    for (double t : tildes) {
      for (const auto& k : kinds) pts.push_back({d, t, k, {}});
    }
  }
  parallel_for(pts.size(), opt.threads, [&](std::size_t i) {
    Point& p = pts[i];
    const double delta = p.d * sigma;
    TeleportConfig cfg;
    cfg.input = {alpha, beta, CatParams{-delta / 2, delta / 2, sigma}};
    cfg.epr = CatParams{-delta / 2, delta / 2, p.t * sigma};
    cfg.detectors = read_detector(root, "detectors", p.kind);
    cfg.grid = FrequencyGrid::make(-delta / 2 - margin * sigma, delta / 2 + margin * sigma,
                                   static_cast<std::size_t>(np));
    p.rep = run_teleport(cfg);
  });

  Table t(doc.hash, {"delta_over_sigma", "sigma_tilde_over_sigma", "detector_kind",
                     "p_success_sim", "p_success_analytic", "mean_fidelity"});
  for (const auto& p : pts) {
    t.row({Table::num(p.d), Table::num(p.t), p.kind, Table::num(p.rep.total_success),
           Table::num(p.rep.analytic_success), Table::num(p.rep.mean_fidelity)});
  }
  return {{"sweep.csv", t.str()}};
}

using Command = std::vector<OutputFile> (*)(const Document&, const RunOptions&);

const std::map<std::string, Command>& registry() {
  static const std::map<std::string, Command> r{
      {"state", cmd_state},       {"mzi", cmd_mzi},     {"teleport", cmd_teleport},
      {"jsa", cmd_jsa},           {"correct", cmd_correct}, {"sweep", cmd_sweep}};
  return r;
}

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names{"state", "mzi", "teleport", "jsa", "correct",
                                              "sweep"};
  return names;
}

std::vector<OutputFile> run_command(const std::string& command,
                                    const std::string& config_text,
                                    const RunOptions& options) {
  const auto it = registry().find(command);
  if (it == registry().end()) throw UsageError("unknown subcommand '" + command + "'");
  Document doc = parse_document(config_text);
  // Only the syndrome sampler is random; other commands ignore --seed.
  if (options.seed && command == "correct") {
    doc.root["seed"] = *options.seed;
    rehash(doc);
  }
  return it->second(doc, options);
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

unsigned threads_from_env() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* s = std::getenv("TFQSIM_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(s, &end, 10);
    if (end != s && *end == '\0' && v >= 1) return std::min<unsigned>(hw, static_cast<unsigned>(v));
  }
  return hw;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const UsageError*>(&e)) return 2;
  if (dynamic_cast<const nlohmann::json::exception*>(&e)) return 2;
  return 3;
}

}  // namespace tfqcli
