// Copyright 2026 The Tofu Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Runs one of the built-in fixture programs as a real process, reporting
// coverage through TOFU_COVERAGE_FILE like any instrumented target.
//
//   tofu-fixture <name> [args...]

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "tofu/fixtures.h"
#include "tofu/harness.h"

int main(int argc, char **argv) {
  if (argc < 2) {
    std::cerr << "usage: tofu-fixture <name> [args...]\n";
    return 2;
  }
  const std::vector<std::string> args(argv + 2, argv + argc);
  absl::StatusOr<std::vector<std::string>> trace =
      tofu::FixtureTrace(argv[1], args, [](absl::string_view path) {
        std::ifstream in{std::string(path), std::ios::binary};
        std::ostringstream contents;
        if (in) contents << in.rdbuf();
        return contents.str();
      });
  if (!trace.ok()) {
    std::cerr << trace.status() << "\n";
    return 2;
  }
  const char *coverage_path =
      std::getenv(std::string(tofu::kCoverageEnvVar).c_str());
  if (coverage_path != nullptr) {
    std::ofstream out(coverage_path, std::ios::app);
    for (const std::string &block : *trace) out << block << '\n';
  }
  return 0;
}
