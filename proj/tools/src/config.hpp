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

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tfq/tfq.hpp"

namespace tfqcli {

using json = nlohmann::json;

constexpr int kSchemaVersion = 1;

// Parsed config plus the hash of its canonical dump.
struct Document {
  json root;
  std::uint64_t hash = 0;
};

// Throws tfq::ConfigError with line:column on malformed JSON.
Document parse_document(const std::string& text);
// Re-hash after the command line adds fields (the seed).
void rehash(Document& doc);

// Field access with "path.to.field" diagnostics. Every object is checked
// against the keys its reader knows, so typos fail loudly.
class Node {
 public:
  Node(const json& j, std::string path);

  const std::string& path() const { return path_; }
  const json& raw() const { return j_; }
  bool has(const std::string& key) const;

  void allow(std::initializer_list<const char*> keys) const;
  void allow(const std::vector<std::string>& keys) const;

  Node child(const std::string& key) const;
  std::optional<Node> optional_child(const std::string& key) const;

  double number(const std::string& key) const;
  double number(const std::string& key, double fallback) const;
  double positive(const std::string& key) const;
  double positive(const std::string& key, double fallback) const;
  double non_negative(const std::string& key, double fallback) const;
  std::int64_t integer(const std::string& key) const;
  std::int64_t integer(const std::string& key, std::int64_t fallback) const;
  std::uint64_t unsigned_integer(const std::string& key) const;
  bool boolean(const std::string& key, bool fallback) const;
  std::string string(const std::string& key) const;
  std::string string(const std::string& key, const std::string& fallback) const;
  // A real number or [re, im].
  std::complex<double> complex(const std::string& key,
                               std::complex<double> fallback) const;
  // A list of numbers, or {"start", "stop", "step"} expanded inclusively.
  std::vector<double> number_list(const std::string& key,
                                  std::vector<double> fallback) const;
  std::vector<std::string> string_list(const std::string& key,
                                       std::vector<std::string> fallback) const;

  [[noreturn]] void fail(const std::string& key, const std::string& what) const;

 private:
  const json& at(const std::string& key) const;
  std::string field(const std::string& key) const;

  const json& j_;
  std::string path_;
};

void check_schema(const Node& root);

tfq::FrequencyGrid read_grid(const Node& n);
tfq::QubitSpec read_qubit(const Node& n);
tfq::EncodingParams read_encoding(const Node& n, const std::string& encoding);
tfq::GkpParams read_gkp(const Node& n);
tfq::JsaShape read_jsa(const Node& n);

}  // namespace tfqcli
