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

#include "tofu/cmdline.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "tofu/status_macros.h"

namespace tofu {
namespace {

absl::Status LineError(size_t line, absl::string_view message) {
  return absl::InvalidArgumentError(absl::StrCat("line ", line, ": ", message));
}

std::string RenderValue(const CmdlineEntry &entry, const std::string &value) {
  if (entry.kind == CmdlineEntry::Kind::kDirectory) {
    return (entry.directory / value).string();
  }
  return value;
}

bool ValueAllowed(const CmdlineEntry &entry, const std::string &value) {
  switch (entry.kind) {
    case CmdlineEntry::Kind::kNone:
      return false;
    case CmdlineEntry::Kind::kDirectory:
      return std::binary_search(entry.files.begin(), entry.files.end(), value);
    case CmdlineEntry::Kind::kOneOf:
      return std::find(entry.choices.begin(), entry.choices.end(), value) !=
             entry.choices.end();
    case CmdlineEntry::Kind::kInt: {
      int64_t v = 0;
      return absl::SimpleAtoi(value, &v) && std::to_string(v) == value &&
             v >= entry.lo && v <= entry.hi;
    }
  }
  return false;
}

std::string DrawValue(const CmdlineEntry &entry, Rng &rng) {
  return entry.ValueAt(static_cast<uint64_t>(
      UniformInt(rng, 0, static_cast<int64_t>(entry.ValueCount()) - 1)));
}

}  // namespace

uint64_t CmdlineEntry::ValueCount() const {
  switch (kind) {
    case Kind::kNone:
      return 0;
    case Kind::kDirectory:
      return files.size();
    case Kind::kOneOf:
      return choices.size();
    case Kind::kInt:
      return static_cast<uint64_t>(hi - lo) + 1;
  }
  return 0;
}

std::string CmdlineEntry::ValueAt(uint64_t index) const {
  switch (kind) {
    case Kind::kNone:
      return "";
    case Kind::kDirectory:
      return files[index];
    case Kind::kOneOf:
      return choices[index];
    case Kind::kInt:
      return std::to_string(lo + static_cast<int64_t>(index));
  }
  return "";
}

absl::StatusOr<CmdlineSpec> ParseCmdlineSpec(
    absl::string_view text, const std::filesystem::path &base_dir) {
  CmdlineSpec spec;
  std::set<std::string> names;
  size_t line_no = 0;
  for (absl::string_view raw : absl::StrSplit(text, '\n')) {
    ++line_no;
    absl::string_view line = absl::StripAsciiWhitespace(raw);
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> fields = absl::StrSplit(line, '|');
    for (std::string &field : fields) {
      field = std::string(absl::StripAsciiWhitespace(field));
    }
    if (fields.size() < 3) {
      return LineError(line_no, "expected name|requirement|kind[|arg]");
    }
    CmdlineEntry entry;
    entry.name = fields[0];
    if (entry.name.empty()) return LineError(line_no, "empty entry name");
    if (!names.insert(entry.name).second) {
      return LineError(line_no, absl::StrCat("duplicate entry ", entry.name));
    }
    if (fields[1] == "required") {
      entry.required = true;
    } else if (fields[1] != "optional") {
      return LineError(line_no,
                       absl::StrCat("unknown requirement '", fields[1], "'"));
    }
    const std::string &kind = fields[2];
    const std::string arg = fields.size() > 3 ? fields[3] : "";
    if (fields.size() > 4) return LineError(line_no, "too many fields");
    if (kind == "no option") {
      if (fields.size() > 3) return LineError(line_no, "'no option' takes no argument");
      entry.kind = CmdlineEntry::Kind::kNone;
    } else if (kind == "directory") {
      entry.kind = CmdlineEntry::Kind::kDirectory;
      if (arg.empty()) return LineError(line_no, "directory kind needs a path");
      std::filesystem::path dir(arg);
      if (dir.is_relative()) dir = base_dir / dir;
      std::error_code ec;
      if (!std::filesystem::is_directory(dir, ec)) {
        return LineError(line_no,
                         absl::StrCat("missing directory ", dir.string()));
      }
      entry.directory = std::filesystem::absolute(dir, ec).lexically_normal();
      for (const auto &file : std::filesystem::directory_iterator(dir, ec)) {
        if (file.is_regular_file()) {
          entry.files.push_back(file.path().filename().string());
        }
      }
      std::sort(entry.files.begin(), entry.files.end());
    } else if (kind == "oneof") {
      entry.kind = CmdlineEntry::Kind::kOneOf;
      for (absl::string_view choice : absl::StrSplit(arg, ',', absl::SkipEmpty())) {
        entry.choices.emplace_back(absl::StripAsciiWhitespace(choice));
      }
      if (entry.choices.empty()) return LineError(line_no, "oneof needs values");
    } else if (kind == "int") {
      entry.kind = CmdlineEntry::Kind::kInt;
      std::vector<absl::string_view> bounds = absl::StrSplit(arg, ',');
      if (bounds.size() != 2 ||
          !absl::SimpleAtoi(absl::StripAsciiWhitespace(bounds[0]), &entry.lo) ||
          !absl::SimpleAtoi(absl::StripAsciiWhitespace(bounds[1]), &entry.hi) ||
          entry.hi < entry.lo) {
        return LineError(line_no, "int kind needs lo,hi with lo <= hi");
      }
    } else {
      return LineError(line_no, absl::StrCat("unknown option kind '", kind, "'"));
    }
    spec.entries.push_back(std::move(entry));
  }
  return spec;
}

absl::StatusOr<CmdlineSpec> LoadCmdlineSpec(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::ostringstream contents;
  contents << in.rdbuf();
  absl::StatusOr<CmdlineSpec> spec = ParseCmdlineSpec(
      contents.str(), std::filesystem::path(path).parent_path());
  if (!spec.ok()) {
    return absl::Status(spec.status().code(),
                        absl::StrCat(path, ": ", spec.status().message()));
  }
  return spec;
}

absl::StatusOr<CmdlineState> InitialState(const CmdlineSpec &spec) {
  CmdlineState state;
  for (const CmdlineEntry &entry : spec.entries) {
    EntryChoice &choice = state.chosen.emplace_back();
    if (!entry.required) continue;
    choice.present = true;
    if (!entry.has_value()) continue;
    if (entry.ValueCount() == 0) {
      return absl::FailedPreconditionError(
          absl::StrCat("required entry ", entry.name, " has no values (empty ",
                       entry.directory.string(), ")"));
    }
    choice.value = entry.ValueAt(0);
  }
  return state;
}

CmdlineState MutateCmdline(const CmdlineState &state, const CmdlineSpec &spec,
                           Rng &rng) {
  CmdlineState mutant = state;
  const int rounds = static_cast<int>(UniformInt(rng, 1, 2));
  for (int round = 0; round < rounds; ++round) {
    // (entry index, true = toggle / false = redraw)
    std::vector<std::pair<size_t, bool>> moves;
    for (size_t i = 0; i < spec.entries.size(); ++i) {
      const CmdlineEntry &entry = spec.entries[i];
      const bool can_enable = !entry.has_value() || entry.ValueCount() > 0;
      if (!entry.required && (mutant.chosen[i].present || can_enable)) {
        moves.emplace_back(i, true);
      }
      if (mutant.chosen[i].present && entry.ValueCount() > 1) {
        moves.emplace_back(i, false);
      }
    }
    if (moves.empty()) break;
    auto [index, toggle] =
        moves[UniformInt(rng, 0, static_cast<int64_t>(moves.size()) - 1)];
    const CmdlineEntry &entry = spec.entries[index];
    EntryChoice &choice = mutant.chosen[index];
    if (toggle) {
      choice.present = !choice.present;
      choice.value.reset();
      if (choice.present && entry.has_value()) choice.value = DrawValue(entry, rng);
    } else {
      std::string value = DrawValue(entry, rng);
      while (value == choice.value) value = DrawValue(entry, rng);
      choice.value = std::move(value);
    }
  }
  return mutant;
}

std::vector<std::string> RenderArgv(const CmdlineState &state,
                                    const CmdlineSpec &spec) {
  std::vector<std::string> argv;
  for (bool flags : {true, false}) {
    for (size_t i = 0; i < spec.entries.size(); ++i) {
      const CmdlineEntry &entry = spec.entries[i];
      if (entry.is_flag() != flags || !state.chosen[i].present) continue;
      if (entry.is_flag() || !entry.has_value()) argv.push_back(entry.name);
      if (state.chosen[i].value.has_value()) {
        argv.push_back(RenderValue(entry, *state.chosen[i].value));
      }
    }
  }
  return argv;
}

absl::Status ValidateState(const CmdlineState &state, const CmdlineSpec &spec) {
  if (state.chosen.size() != spec.entries.size()) {
    return absl::InvalidArgumentError("state does not match spec size");
  }
  for (size_t i = 0; i < spec.entries.size(); ++i) {
    const CmdlineEntry &entry = spec.entries[i];
    const EntryChoice &choice = state.chosen[i];
    if (entry.required && !choice.present) {
      return absl::InvalidArgumentError(
          absl::StrCat("required entry ", entry.name, " is absent"));
    }
    if (!choice.present) {
      if (choice.value.has_value()) {
        return absl::InvalidArgumentError(
            absl::StrCat("absent entry ", entry.name, " carries a value"));
      }
      continue;
    }
    if (entry.has_value() != choice.value.has_value() ||
        (choice.value.has_value() && !ValueAllowed(entry, *choice.value))) {
      return absl::InvalidArgumentError(
          absl::StrCat("invalid value for ", entry.name));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<CmdlineState> ParseArgv(const std::vector<std::string> &argv,
                                       const CmdlineSpec &spec) {
  CmdlineState state;
  state.chosen.resize(spec.entries.size());
  size_t pos = 0;
  size_t next_flag = 0;
  for (; pos < argv.size(); ++pos) {
    // Flags appear in spec order, so search forward from the last match.
    size_t i = next_flag;
    while (i < spec.entries.size() &&
           !(spec.entries[i].is_flag() && spec.entries[i].name == argv[pos])) {
      ++i;
    }
    if (i == spec.entries.size()) break;
    const CmdlineEntry &entry = spec.entries[i];
    state.chosen[i].present = true;
    if (entry.has_value()) {
      if (++pos == argv.size()) {
        return absl::InvalidArgumentError(
            absl::StrCat(entry.name, " is missing its value"));
      }
      std::string value = argv[pos];
      if (entry.kind == CmdlineEntry::Kind::kDirectory) {
        value = std::filesystem::path(value).filename().string();
      }
      state.chosen[i].value = std::move(value);
    }
    next_flag = i + 1;
  }
  for (size_t i = 0; i < spec.entries.size() && pos < argv.size(); ++i) {
    const CmdlineEntry &entry = spec.entries[i];
    if (entry.is_flag()) continue;
    if (entry.has_value()) {
      std::filesystem::path token(argv[pos]);
      std::string value = argv[pos];
      if (entry.kind == CmdlineEntry::Kind::kDirectory) {
        if (token.parent_path() != entry.directory) continue;
        value = token.filename().string();
      }
      if (!ValueAllowed(entry, value)) continue;
      state.chosen[i] = {true, value};
      ++pos;
    } else if (argv[pos] == entry.name) {
      state.chosen[i].present = true;
      ++pos;
    }
  }
  if (pos != argv.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("unexpected argument '", argv[pos], "'"));
  }
  TOFU_RETURN_IF_ERROR(ValidateState(state, spec));
  return state;
}

}  // namespace tofu
