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

#include "tofu/harness.h"

#include <fcntl.h>
#include <signal.h>
#include <spawn.h>
#include <sys/stat.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <optional>
#include <thread>

#include "absl/strings/match.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/strip.h"
#include "tofu/fixtures.h"

extern char **environ;

namespace tofu {
namespace {

// A mkstemp-created file removed on destruction.
class TempFile {
 public:
  static absl::StatusOr<TempFile> Create(absl::string_view tag) {
    std::string pattern =
        (std::filesystem::temp_directory_path() / absl::StrCat("tofu-", tag, "-XXXXXX"))
            .string();
    int fd = mkstemp(pattern.data());
    if (fd < 0) {
      return absl::InternalError(
          absl::StrCat("mkstemp failed: ", std::strerror(errno)));
    }
    close(fd);
    return TempFile(std::move(pattern));
  }
  TempFile(TempFile &&other) noexcept : path_(std::move(other.path_)) {
    other.path_.clear();
  }
  TempFile(const TempFile &) = delete;
  TempFile &operator=(const TempFile &) = delete;
  ~TempFile() {
    if (!path_.empty()) unlink(path_.c_str());
  }
  const std::string &path() const { return path_; }

 private:
  explicit TempFile(std::string path) : path_(std::move(path)) {}
  std::string path_;
};

CoverageSet ReadCoverage(const std::string &path) {
  CoverageSet coverage;
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) {
    absl::string_view id = absl::StripAsciiWhitespace(line);
    if (!id.empty()) coverage.emplace(id);
  }
  return coverage;
}

absl::Status ValidateRequest(const ExecutionRequest &req) {
  if (req.timeout.count() <= 0) {
    return absl::InvalidArgumentError("per-execution timeout must be positive");
  }
  if (std::count(req.argv.begin(), req.argv.end(), kInputPlaceholder) > 1) {
    return absl::InvalidArgumentError("at most one @@ token is allowed");
  }
  return absl::OkStatus();
}

}  // namespace

absl::string_view ExitName(ExecutionResult::Exit exit) {
  switch (exit) {
    case ExecutionResult::Exit::kNormal:
      return "normal";
    case ExecutionResult::Exit::kSignaled:
      return "signaled";
    case ExecutionResult::Exit::kTimedOut:
      return "timed_out";
  }
  return "unknown";
}

absl::StatusOr<ExecutionResult> Execute(const ExecutionRequest &req) {
  if (absl::Status status = ValidateRequest(req); !status.ok()) return status;
  if (access(req.program.c_str(), F_OK) != 0) {
    return absl::NotFoundError(absl::StrCat("no such program: ", req.program));
  }
  if (access(req.program.c_str(), X_OK) != 0) {
    return absl::PermissionDeniedError(
        absl::StrCat("program is not executable: ", req.program));
  }

  absl::StatusOr<TempFile> coverage_file = TempFile::Create("cov");
  if (!coverage_file.ok()) return coverage_file.status();
  std::optional<TempFile> input_file;
  std::vector<std::string> args{req.program};
  for (const std::string &arg : req.argv) {
    if (arg != kInputPlaceholder) {
      args.push_back(arg);
      continue;
    }
    absl::StatusOr<TempFile> file = TempFile::Create("input");
    if (!file.ok()) return file.status();
    std::ofstream(file->path(), std::ios::binary) << req.input;
    args.push_back(file->path());
    input_file.emplace(*std::move(file));
  }

  std::vector<std::string> env_strings;
  const std::string coverage_prefix = absl::StrCat(kCoverageEnvVar, "=");
  for (char **e = environ; *e != nullptr; ++e) {
    if (absl::StartsWith(*e, coverage_prefix)) continue;
    env_strings.emplace_back(*e);
  }
  for (const auto &[key, value] : req.env) {
    env_strings.push_back(absl::StrCat(key, "=", value));
  }
  env_strings.push_back(absl::StrCat(coverage_prefix, coverage_file->path()));

  std::vector<char *> argv_ptrs, env_ptrs;
  for (std::string &s : args) argv_ptrs.push_back(s.data());
  argv_ptrs.push_back(nullptr);
  for (std::string &s : env_strings) env_ptrs.push_back(s.data());
  env_ptrs.push_back(nullptr);

  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_addopen(&actions, STDIN_FILENO, "/dev/null", O_RDONLY, 0);
  posix_spawn_file_actions_addopen(&actions, STDOUT_FILENO, "/dev/null", O_WRONLY, 0);
  posix_spawn_file_actions_addopen(&actions, STDERR_FILENO, "/dev/null", O_WRONLY, 0);
  posix_spawnattr_t attr;
  posix_spawnattr_init(&attr);
  // Own process group, so a timeout kills the target's children too.
  posix_spawnattr_setflags(&attr, POSIX_SPAWN_SETPGROUP);
  posix_spawnattr_setpgroup(&attr, 0);

  const auto start = std::chrono::steady_clock::now();
  pid_t pid = 0;
  const int spawn_error = posix_spawn(&pid, req.program.c_str(), &actions,
                                      &attr, argv_ptrs.data(), env_ptrs.data());
  posix_spawn_file_actions_destroy(&actions);
  posix_spawnattr_destroy(&attr);
  if (spawn_error != 0) {
    return absl::InternalError(absl::StrCat("cannot spawn ", req.program, ": ",
                                            std::strerror(spawn_error)));
  }

  ExecutionResult result;
  int wstatus = 0;
  auto pause = std::chrono::microseconds(50);
  while (true) {
    pid_t done = waitpid(pid, &wstatus, WNOHANG);
    if (done == pid) break;
    if (done < 0 && errno != EINTR) {
      return absl::InternalError(
          absl::StrCat("waitpid failed: ", std::strerror(errno)));
    }
    if (std::chrono::steady_clock::now() - start >= req.timeout) {
      kill(-pid, SIGKILL);
      kill(pid, SIGKILL);
      while (waitpid(pid, &wstatus, 0) < 0 && errno == EINTR) {
      }
      result.exit = ExecutionResult::Exit::kTimedOut;
      break;
    }
    std::this_thread::sleep_for(pause);
    pause = std::min(pause * 2, std::chrono::microseconds(2000));
  }
  result.duration_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  if (result.exit != ExecutionResult::Exit::kTimedOut) {
    if (WIFSIGNALED(wstatus)) {
      result.exit = ExecutionResult::Exit::kSignaled;
      result.signal = WTERMSIG(wstatus);
    } else {
      result.exit_code = WEXITSTATUS(wstatus);
    }
  }
  result.coverage = ReadCoverage(coverage_file->path());
  return result;
}

std::vector<absl::StatusOr<ExecutionResult>> ExecuteBatch(
    const std::vector<ExecutionRequest> &reqs, int parallelism) {
  std::vector<absl::StatusOr<ExecutionResult>> results(
      reqs.size(), absl::UnknownError("not executed"));
  const size_t workers =
      std::min(reqs.size(), static_cast<size_t>(std::max(parallelism, 1)));
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (size_t i = next++; i < reqs.size(); i = next++) {
      results[i] = Execute(reqs[i]);
    }
  };
  if (workers <= 1) {
    work();
    return results;
  }
  std::vector<std::jthread> pool;
  for (size_t i = 0; i < workers; ++i) pool.emplace_back(work);
  pool.clear();
  return results;
}

std::vector<absl::StatusOr<ExecutionResult>> ProcessExecutor::Run(
    const std::vector<ExecutionRequest> &batch) {
  return ExecuteBatch(batch, parallelism_);
}

std::vector<absl::StatusOr<ExecutionResult>> FixtureExecutor::Run(
    const std::vector<ExecutionRequest> &batch) {
  std::vector<absl::StatusOr<ExecutionResult>> results;
  results.reserve(batch.size());
  for (const ExecutionRequest &req : batch) {
    results.push_back(RunFixture(name_, req.argv, req.input));
  }
  return results;
}

}  // namespace tofu
