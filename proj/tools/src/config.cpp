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

#include "config.hpp"

#include <cmath>
#include <set>

#include <fmt/format.h>

#include "tfqcli/cli.hpp"

namespace tfqcli {

using tfq::ConfigError;

Document parse_document(const std::string& text) {
  Document d;
  try {
    d.root = json::parse(text);
  } catch (const json::parse_error& e) {
    // e.byte is 1-based and points just past the offending character.
    std::size_t line = 1;
    std::size_t col = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string msg = e.what();
    if (auto p = msg.find("syntax error"); p != std::string::npos) msg = msg.substr(p);
    throw ConfigError(fmt::format("line {}, column {}: {}", line, col, msg));
  }
  if (!d.root.is_object()) throw ConfigError("top level must be a JSON object");
  rehash(d);
  return d;
}

void rehash(Document& doc) { doc.hash = fnv1a64(doc.root.dump()); }

Node::Node(const json& j, std::string path) : j_(j), path_(std::move(path)) {}

std::string Node::field(const std::string& key) const {
  return path_.empty() ? key : path_ + "." + key;
}

void Node::fail(const std::string& key, const std::string& what) const {
  throw ConfigError(fmt::format("field '{}': {}", key.empty() ? path_ : field(key), what));
}

bool Node::has(const std::string& key) const {
  return j_.is_object() && j_.contains(key);
}

const json& Node::at(const std::string& key) const {
  if (!j_.is_object()) fail("", "expected an object");
  auto it = j_.find(key);
  if (it == j_.end()) fail(key, "missing");
  return *it;
}

void Node::allow(std::initializer_list<const char*> keys) const {
  allow(std::vector<std::string>(keys.begin(), keys.end()));
}

void Node::allow(const std::vector<std::string>& keys) const {
  if (!j_.is_object()) fail("", "expected an object");
  const std::set<std::string> ok(keys.begin(), keys.end());
  for (const auto& [k, v] : j_.items()) {
    if (!ok.count(k)) fail(k, "unknown key");
  }
}

Node Node::child(const std::string& key) const {
  const json& c = at(key);
  if (!c.is_object()) fail(key, "expected an object");
  return Node(c, field(key));
}

std::optional<Node> Node::optional_child(const std::string& key) const {
  if (!has(key)) return std::nullopt;
  return child(key);
}

double Node::number(const std::string& key) const {
  const json& v = at(key);
  if (!v.is_number()) fail(key, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(key, "must be finite");
  return x;
}

double Node::number(const std::string& key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

double Node::positive(const std::string& key) const {
  const double x = number(key);
  if (!(x > 0.0)) fail(key, fmt::format("must be positive (got {})", x));
  return x;
}

double Node::positive(const std::string& key, double fallback) const {
  return has(key) ? positive(key) : fallback;
}

double Node::non_negative(const std::string& key, double fallback) const {
  if (!has(key)) return fallback;
  const double x = number(key);
  if (x < 0.0) fail(key, fmt::format("must be >= 0 (got {})", x));
  return x;
}

std::int64_t Node::integer(const std::string& key) const {
  const json& v = at(key);
  if (!v.is_number_integer()) fail(key, "expected an integer");
  return v.get<std::int64_t>();
}

std::int64_t Node::integer(const std::string& key, std::int64_t fallback) const {
  return has(key) ? integer(key) : fallback;
}

std::uint64_t Node::unsigned_integer(const std::string& key) const {
  const json& v = at(key);
  if (!v.is_number_unsigned()) fail(key, "expected a non-negative integer");
  return v.get<std::uint64_t>();
}

bool Node::boolean(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const json& v = at(key);
  if (!v.is_boolean()) fail(key, "expected true or false");
  return v.get<bool>();
}

std::string Node::string(const std::string& key) const {
  const json& v = at(key);
  if (!v.is_string()) fail(key, "expected a string");
  return v.get<std::string>();
}

std::string Node::string(const std::string& key, const std::string& fallback) const {
  return has(key) ? string(key) : fallback;
}

std::complex<double> Node::complex(const std::string& key,
                                   std::complex<double> fallback) const {
  if (!has(key)) return fallback;
  const json& v = at(key);
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  fail(key, "expected a number or [re, im]");
}

std::vector<double> Node::number_list(const std::string& key,
                                      std::vector<double> fallback) const {
  if (!has(key)) return fallback;
  const json& v = at(key);
  std::vector<double> out;
  if (v.is_array()) {
    for (const auto& x : v) {
      if (!x.is_number()) fail(key, "expected numbers");
      out.push_back(x.get<double>());
    }
  } else if (v.is_object()) {
    Node r(v, field(key));
    r.allow({"start", "stop", "step"});
    const double start = r.number("start");
    const double stop = r.number("stop");
    const double step = r.positive("step");
    // Inclusive of stop up to rounding in the step.
    const double span = (stop - start) / step;
    if (span > 1e4) r.fail("step", "more than 10^4 points");
    for (long i = 0; start + static_cast<double>(i) * step <= stop + 1e-9 * step; ++i) {
      out.push_back(start + static_cast<double>(i) * step);
    }
  } else {
    fail(key, "expected a list or {start, stop, step}");
  }
  if (out.empty()) fail(key, "empty range");
  if (out.size() > 10000) fail(key, "more than 10^4 points");
  return out;
}

std::vector<std::string> Node::string_list(const std::string& key,
                                           std::vector<std::string> fallback) const {
  if (!has(key)) return fallback;
  const json& v = at(key);
  if (!v.is_array()) fail(key, "expected a list of strings");
  std::vector<std::string> out;
  for (const auto& x : v) {
    if (!x.is_string()) fail(key, "expected a list of strings");
    out.push_back(x.get<std::string>());
  }
  if (out.empty()) fail(key, "empty list");
  return out;
}

void check_schema(const Node& root) {
  if (!root.has("schema")) root.fail("schema", "missing schema version");
  const auto v = root.integer("schema");
  if (v != kSchemaVersion) {
    root.fail("schema", fmt::format("unsupported version {} (expected {})", v, kSchemaVersion));
  }
}

tfq::FrequencyGrid read_grid(const Node& n) {
  n.allow({"omega_min", "omega_max", "d_omega", "n_points"});
  const auto np = n.integer("n_points");
  if (np < 2 || (np & (np - 1)) != 0) n.fail("n_points", "must be a power of two >= 2");
  if (np > (1 << 16)) n.fail("n_points", "larger than 65536");
  const auto size = static_cast<std::size_t>(np);
  tfq::FrequencyGrid g;
  if (n.has("d_omega")) {
    if (n.has("omega_min") || n.has("omega_max")) {
      n.fail("d_omega", "give either d_omega or omega_min/omega_max");
    }
    g = tfq::FrequencyGrid::centered(n.positive("d_omega"), size);
  } else {
    const double lo = n.number("omega_min");
    const double hi = n.number("omega_max");
    if (!(hi > lo)) n.fail("omega_max", "must exceed omega_min");
    g = tfq::FrequencyGrid::make(lo, hi, size);
  }
  tfq::validate(g);
  return g;
}

tfq::GkpParams read_gkp(const Node& n) {
  tfq::GkpParams p;
  p.omega_bar = n.positive("omega_bar");
  // 0 selects the monochromatic (single-sample teeth) limit.
  p.sigma = n.non_negative("sigma", p.sigma);
  p.kappa = n.positive("kappa");
  const auto nmax = n.integer("n_max", 0);
  if (nmax < 0) n.fail("n_max", "must be >= 0");
  p.n_max = static_cast<int>(nmax);
  return p;
}

tfq::EncodingParams read_encoding(const Node& n, const std::string& encoding) {
  if (encoding == "cat") {
    tfq::CatParams p;
    p.omega1 = n.number("omega1");
    p.omega2 = n.number("omega2");
    p.sigma = n.positive("sigma");
    if (p.omega1 == p.omega2) n.fail("omega2", "must differ from omega1");
    return p;
  }
  if (encoding == "gkp") return read_gkp(n);
  n.fail("encoding", "expected \"cat\" or \"gkp\"");
}

tfq::QubitSpec read_qubit(const Node& n) {
  const std::string enc = n.string("encoding");
  if (enc == "cat") {
    n.allow({"encoding", "alpha", "beta", "omega1", "omega2", "sigma"});
  } else {
    n.allow({"encoding", "alpha", "beta", "omega_bar", "sigma", "kappa", "n_max"});
  }
  tfq::QubitSpec q;
  q.alpha = n.complex("alpha", {1.0, 0.0});
  q.beta = n.complex("beta", {0.0, 0.0});
  q.params = read_encoding(n, enc);
  if (std::norm(q.alpha) + std::norm(q.beta) <= 0.0) {
    n.fail("beta", "alpha and beta both vanish");
  }
  tfq::validate(q.params);
  return q;
}

tfq::JsaShape read_jsa(const Node& n) {
  n.allow({"form", "kappa_plus", "kappa_minus", "comb"});
  tfq::JsaShape s;
  const std::string form = n.string("form");
  if (form == "spdc-cavity") {
    s.form = tfq::JsaShape::Form::spdc_cavity;
  } else if (form == "fbs-entangled") {
    s.form = tfq::JsaShape::Form::fbs_entangled;
  } else {
    n.fail("form", "expected \"spdc-cavity\" or \"fbs-entangled\"");
  }
  s.kappa_plus = n.positive("kappa_plus");
  s.kappa_minus = n.positive("kappa_minus");
  Node c = n.child("comb");
  c.allow({"omega_bar", "sigma", "kappa", "n_max"});
  s.comb = read_gkp(c);
  if (s.comb.monochromatic()) c.fail("sigma", "must be positive");
  return s;
}

}  // namespace tfqcli
