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

#ifndef TOFU_CMDLINE_H_
#define TOFU_CMDLINE_H_

// Structured mutator for command-line languages, generated from a
// pipe-delimited flag file, one entry per line:
//
//   --silent|optional|no option
//   --depth|optional|int|0,9
//   --format|optional|oneof|xml,html
//   file1|required|directory|PATH_TO_DIRECT
//
// Names starting with '-' are flags; others are positionals. Relative
// directory paths are resolved against the directory holding that file.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "tofu/rng.h"

namespace tofu {

struct CmdlineEntry {
  enum class Kind { kNone, kDirectory, kOneOf, kInt };

  std::string name;
  bool required = false;
  Kind kind = Kind::kNone;
  std::filesystem::path directory;
  // Regular files in `directory`, sorted by name.
  std::vector<std::string> files;
  std::vector<std::string> choices;
  int64_t lo = 0;
  int64_t hi = 0;

  bool is_flag() const { return !name.empty() && name.front() == '-'; }
  bool has_value() const { return kind != Kind::kNone; }
  // Number of values the entry can take (0 for kNone).
  uint64_t ValueCount() const;
  std::string ValueAt(uint64_t index) const;
};

struct CmdlineSpec {
  std::vector<CmdlineEntry> entries;
};

struct EntryChoice {
  bool present = false;
  // Directory entries store the file name, not the full path.
  std::optional<std::string> value;

  friend bool operator==(const EntryChoice &, const EntryChoice &) = default;
};

// One choice per spec entry, in spec order.
struct CmdlineState {
  std::vector<EntryChoice> chosen;

  friend bool operator==(const CmdlineState &, const CmdlineState &) = default;
};

absl::StatusOr<CmdlineSpec> ParseCmdlineSpec(
    absl::string_view text, const std::filesystem::path &base_dir);
absl::StatusOr<CmdlineSpec> LoadCmdlineSpec(const std::string &path);

// Optional entries absent; required entries take their first value (first
// file in name order, lowest int, first choice).
absl::StatusOr<CmdlineState> InitialState(const CmdlineSpec &spec);

// Applies one or two operators: toggle an optional entry, or redraw the value
// of a present entry. Returns the input unchanged when neither applies.
CmdlineState MutateCmdline(const CmdlineState &state, const CmdlineSpec &spec,
                           Rng &rng);

// Flags in spec order (name, then value token if any), then positionals in
// spec order.
std::vector<std::string> RenderArgv(const CmdlineState &state,
                                    const CmdlineSpec &spec);

absl::Status ValidateState(const CmdlineState &state, const CmdlineSpec &spec);

// Inverse of RenderArgv for argument vectors it produced.
absl::StatusOr<CmdlineState> ParseArgv(const std::vector<std::string> &argv,
                                       const CmdlineSpec &spec);

}  // namespace tofu

#endif  // TOFU_CMDLINE_H_
