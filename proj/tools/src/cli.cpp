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

#include <filesystem>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "tfqcli/cli.hpp"

namespace tfqcli {

namespace {

const char* describe(const std::string& name) {
  if (name == "state") return "qubit spectra in frequency and time";
  if (name == "mzi") return "FQBS port spectra and leakage";
  if (name == "teleport") return "teleportation-based correction report";
  if (name == "jsa") return "two-photon joint spectral intensity";
  if (name == "correct") return "sampled entanglement correction rounds";
  return "success probability sweep over cat separations";
}

}  // namespace

int main_entry(int argc, char** argv) {
  CLI::App app{"Time-frequency photonic qubit simulator"};
  app.require_subcommand(1, 1);
  std::string config;
  std::string out;
  std::uint64_t seed = 0;
  for (const auto& name : subcommands()) {
    auto* sc = app.add_subcommand(name, describe(name));
    sc->add_option("--config", config, "JSON scenario config")->required();
    sc->add_option("--out", out, "output directory")->required();
    sc->add_option("--seed", seed, "sampler seed (correct)");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  const bool has_seed = app.get_subcommands().front()->count("--seed") > 0;

  std::ifstream in(config, std::ios::binary);
  if (!in) {
    fmt::print(stderr, "tfqsim: cannot read config '{}'\n", config);
    return 2;
  }
  std::stringstream text;
  text << in.rdbuf();

  std::vector<OutputFile> files;
  try {
    RunOptions opt;
    if (has_seed) opt.seed = seed;
    opt.threads = threads_from_env();
    files = run_command(command, text.str(), opt);
  } catch (const std::exception& e) {
    fmt::print(stderr, "tfqsim {}: {}: {}\n", command, config, e.what());
    return exit_code_for(e);
  }

  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec || !fs::is_directory(out)) {
    fmt::print(stderr, "tfqsim: cannot create output directory '{}'\n", out);
    return 2;
  }
  for (const auto& f : files) {
    const fs::path p = fs::path(out) / f.name;
    std::ofstream o(p, std::ios::binary | std::ios::trunc);
    o << f.content;
    if (!o) {
      fmt::print(stderr, "tfqsim: cannot write '{}'\n", p.string());
      return 2;
    }
  }
  return 0;
}

}  // namespace tfqcli
