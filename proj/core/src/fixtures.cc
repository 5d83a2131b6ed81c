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

#include "tofu/fixtures.h"

#include <fstream>
#include <sstream>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace tofu {
namespace {

class Tracer {
 public:
  void operator()(absl::string_view function, int block) {
    trace_.push_back(absl::StrCat(function, ":", block));
  }
  std::vector<std::string> Take() { return std::move(trace_); }

 private:
  std::vector<std::string> trace_;
};

bool IsEvenPalindromeOverAB(absl::string_view s, Tracer &trace) {
  trace("validate", 0);
  if (s.size() % 2 != 0) {
    trace("validate", 6);
    trace("validate", 7);
    return false;
  }
  for (size_t i = 0;; ++i) {
    trace("validate", 1);
    if (i >= s.size() / 2) {
      trace("validate", 5);
      trace("validate", 7);
      return true;
    }
    trace("validate", 2);
    if (s[i] != s[s.size() - 1 - i]) break;
    trace("validate", 3);
    if (s[i] != 'a' && s[i] != 'b') break;
    trace("validate", 4);
  }
  trace("validate", 6);
  trace("validate", 7);
  return false;
}

std::vector<std::string> RunValidate(
    const std::vector<std::string> &argv,
    absl::FunctionRef<std::string(absl::string_view)> read_file) {
  Tracer trace;
  trace("main", 0);
  const std::string input = argv.empty() ? "" : read_file(argv.back());
  const bool valid = IsEvenPalindromeOverAB(input, trace);
  trace("main", 1);
  if (!valid) {
    // puts("Invalid input")
    trace("main", 2);
    trace("print_error", 0);
    trace("main", 11);
    trace("main", 9);
    return trace.Take();
  }
  trace("main", 3);
  int count = 0;
  for (char c : input) {
    trace("main", 4);
    trace("main", 5);
    if (c == 'a') {
      trace("main", 6);
      ++count;
    }
    trace("main", 8);
  }
  trace("main", 4);
  trace("main", 7);
  if (count == 10) trace("main", 10);
  trace("main", 9);
  return trace.Take();
}

std::vector<std::string> SplitLines(absl::string_view text) {
  std::vector<std::string> lines;
  size_t begin = 0;
  while (begin < text.size()) {
    size_t end = text.find('\n', begin);
    if (end == absl::string_view::npos) end = text.size();
    lines.emplace_back(text.substr(begin, end - begin));
    begin = end + 1;
  }
  return lines;
}

std::vector<std::string> RunFlagdemo(
    const std::vector<std::string> &argv,
    absl::FunctionRef<std::string(absl::string_view)> read_file) {
  Tracer trace;
  bool ignore_blank_lines = false;
  bool ignore_case = false;
  bool ignore_white_space = false;
  bool brief = false;
  std::vector<std::string> files;
  trace("main", 0);
  for (size_t i = 0;; ++i) {
    trace("main", 1);
    if (i >= argv.size()) break;
    trace("main", 2);
    const std::string &arg = argv[i];
    if (arg == "-B") {
      trace("main", 3);
      ignore_blank_lines = true;
    } else if (arg == "-i") {
      trace("main", 4);
      ignore_case = true;
    } else if (arg == "-w") {
      trace("main", 5);
      ignore_white_space = true;
    } else if (arg == "--brief") {
      trace("main", 6);
      brief = true;
    } else if (arg == "--context") {
      trace("main", 7);
      if (i + 1 < argv.size()) ++i;
    } else {
      trace("main", 8);
      files.push_back(arg);
    }
    trace("main", 9);
  }
  trace("main", 10);

  // diff_2_files: missing operands compare as empty files.
  const std::string first = files.size() > 0 ? read_file(files[0]) : "";
  const std::string second = files.size() > 1 ? read_file(files[1]) : "";
  trace("diff_2_files", 0);
  if (brief) {
    trace("diff_2_files", 1);
  } else {
    trace("diff_2_files", 2);
    if (ignore_blank_lines) {
      for (const std::string &line : SplitLines(second)) {
        trace("diff_2_files", 3);
        trace("diff_2_files", 4);
        if (line.empty()) trace("diff_2_files", 5);
        trace("diff_2_files", 7);
      }
      trace("diff_2_files", 3);
    }
    trace("diff_2_files", 6);
    if (ignore_case) trace("diff_2_files", 8);
    trace("diff_2_files", 9);
    if (ignore_white_space) trace("diff_2_files", 10);
  }
  (void)first;
  trace("diff_2_files", 11);
  trace("main", 11);
  trace("main", 12);
  return trace.Take();
}

std::vector<std::string> RunLadder(
    const std::vector<std::string> &argv,
    absl::FunctionRef<std::string(absl::string_view)> read_file) {
  static constexpr absl::string_view kKey = "fuzz";
  Tracer trace;
  trace("main", 0);
  const std::string input = argv.empty() ? "" : read_file(argv.back());
  size_t matched = 0;
  while (matched < kKey.size()) {
    trace("main", static_cast<int>(matched) + 1);
    if (matched >= input.size() || input[matched] != kKey[matched]) break;
    ++matched;
  }
  if (matched == kKey.size()) {
    trace("main", 5);
    trace("main", 6);
  }
  trace("main", 7);
  return trace.Take();
}

std::string ReadFromDisk(absl::string_view path) {
  std::ifstream in{std::string(path), std::ios::binary};
  if (!in) return "";
  std::ostringstream contents;
  contents << in.rdbuf();
  return contents.str();
}

}  // namespace

std::vector<std::string> FixtureNames() {
  return {"flagdemo", "ladder", "validate"};
}

absl::StatusOr<std::vector<std::string>> FixtureTrace(
    absl::string_view name, const std::vector<std::string> &argv,
    absl::FunctionRef<std::string(absl::string_view)> read_file) {
  if (name == "validate") return RunValidate(argv, read_file);
  if (name == "flagdemo") return RunFlagdemo(argv, read_file);
  if (name == "ladder") return RunLadder(argv, read_file);
  return absl::NotFoundError(absl::StrCat("unknown fixture ", name));
}

absl::StatusOr<ExecutionResult> RunFixture(absl::string_view name,
                                           const std::vector<std::string> &argv,
                                           absl::string_view input) {
  const auto start = std::chrono::steady_clock::now();
  absl::StatusOr<std::vector<std::string>> trace =
      FixtureTrace(name, argv, [&](absl::string_view token) {
        return token == kInputPlaceholder ? std::string(input)
                                          : ReadFromDisk(token);
      });
  if (!trace.ok()) return trace.status();
  ExecutionResult result;
  result.coverage = CoverageSet(trace->begin(), trace->end());
  result.duration_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return result;
}

}  // namespace tofu
