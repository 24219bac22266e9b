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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tfqcli {

struct OutputFile {
  std::string name;
  std::string content;
};

struct RunOptions {
  std::optional<std::uint64_t> seed;  // overrides the config's seed
  unsigned threads = 1;
};

// Runs one subcommand on a config text and returns the files it would write.
// Nothing touches the disk, so a failure leaves no partial output behind.
std::vector<OutputFile> run_command(const std::string& command,
                                    const std::string& config_text,
                                    const RunOptions& options);

const std::vector<std::string>& subcommands();

// 0 ok, 2 config/usage error, 3 numerical regime error.
int exit_code_for(const std::exception& e);

// Parallelism cap from TFQSIM_THREADS (default: hardware concurrency).
unsigned threads_from_env();

std::uint64_t fnv1a64(std::string_view bytes);

int main_entry(int argc, char** argv);

}  // namespace tfqcli
