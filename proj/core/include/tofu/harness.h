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

#ifndef TOFU_HARNESS_H_
#define TOFU_HARNESS_H_

// Runs target programs on candidate inputs and collects basic-block coverage.
//
// Coverage protocol: the target appends one block id per line to the file
// named by the TOFU_COVERAGE_FILE environment variable. An argv token equal to
// "@@" is replaced by the path of a fresh file holding the request's input.

#include <chrono>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"

namespace tofu {

inline constexpr absl::string_view kCoverageEnvVar = "TOFU_COVERAGE_FILE";
inline constexpr absl::string_view kInputPlaceholder = "@@";

using CoverageSet = std::set<std::string>;

struct ExecutionRequest {
  std::string program;
  std::vector<std::string> argv;
  std::string input;
  std::chrono::milliseconds timeout{1000};
  std::vector<std::pair<std::string, std::string>> env;
};

struct ExecutionResult {
  enum class Exit { kNormal, kSignaled, kTimedOut };

  // Timed-out runs keep whatever coverage was flushed before the kill.
  CoverageSet coverage;
  Exit exit = Exit::kNormal;
  int exit_code = 0;
  int signal = 0;
  double duration_seconds = 0;
};

absl::string_view ExitName(ExecutionResult::Exit exit);

// Spawns `req.program`. A crash is a result (kSignaled); failing to start the
// program at all is an error.
absl::StatusOr<ExecutionResult> Execute(const ExecutionRequest &req);

// Results come back in request order; at most `parallelism` programs run at
// once.
std::vector<absl::StatusOr<ExecutionResult>> ExecuteBatch(
    const std::vector<ExecutionRequest> &reqs, int parallelism);

class Executor {
 public:
  virtual ~Executor() = default;
  virtual std::vector<absl::StatusOr<ExecutionResult>> Run(
      const std::vector<ExecutionRequest> &batch) = 0;
};

class ProcessExecutor : public Executor {
 public:
  explicit ProcessExecutor(int parallelism) : parallelism_(parallelism) {}
  std::vector<absl::StatusOr<ExecutionResult>> Run(
      const std::vector<ExecutionRequest> &batch) override;

 private:
  int parallelism_;
};

// Interprets one of the built-in fixture programs in-process.
class FixtureExecutor : public Executor {
 public:
  explicit FixtureExecutor(std::string name) : name_(std::move(name)) {}
  std::vector<absl::StatusOr<ExecutionResult>> Run(
      const std::vector<ExecutionRequest> &batch) override;

 private:
  std::string name_;
};

}  // namespace tofu

#endif  // TOFU_HARNESS_H_
