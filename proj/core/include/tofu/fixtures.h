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

#ifndef TOFU_FIXTURES_H_
#define TOFU_FIXTURES_H_

// Small specimen programs with hand-built graph files (see fixtures/ in the
// source tree). Each is written as an interpreter that reports the blocks of
// its graph file as it executes them.
//
//   validate  Accepts even-length palindromes over {a,b}
//             (S -> aSa | bSb | ""); the target block needs a valid input
//             with exactly ten 'a's. Reads the file named by its first
//             argument.
//   flagdemo  A trimmed diff: flags -B -i -w --brief --context N, then two
//             files. The target needs -B (ignore blank lines), no --brief,
//             and a blank line in the second file.
//   ladder    Nested byte comparisons: the target needs the input to start
//             with "fuzz"; every matched byte is one block closer.

#include <string>
#include <vector>

#include "absl/functional/function_ref.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "tofu/harness.h"

namespace tofu {

std::vector<std::string> FixtureNames();

// Block ids in execution order. `read_file` maps an argv token naming a file
// to its contents (empty when unreadable).
absl::StatusOr<std::vector<std::string>> FixtureTrace(
    absl::string_view name, const std::vector<std::string> &argv,
    absl::FunctionRef<std::string(absl::string_view)> read_file);

// Runs a fixture on `argv`; the "@@" token stands for `input`, other file
// arguments are read from disk.
absl::StatusOr<ExecutionResult> RunFixture(absl::string_view name,
                                           const std::vector<std::string> &argv,
                                           absl::string_view input);

}  // namespace tofu

#endif  // TOFU_FIXTURES_H_
