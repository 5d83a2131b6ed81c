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

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "absl/container/flat_hash_set.h"
#include "absl/status/status.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "tofu/icfg.h"
#include "tofu/status_macros.h"

namespace tofu {
namespace {

absl::Status LineError(size_t line, absl::string_view message) {
  return absl::InvalidArgumentError(absl::StrCat("line ", line, ": ", message));
}

absl::string_view StripComment(absl::string_view line) {
  size_t hash = line.find('#');
  if (hash != absl::string_view::npos) line = line.substr(0, hash);
  return absl::StripAsciiWhitespace(line);
}

std::vector<std::string> SplitList(absl::string_view value) {
  std::vector<std::string> items;
  for (absl::string_view item : absl::StrSplit(value, ',', absl::SkipEmpty())) {
    items.emplace_back(item);
  }
  return items;
}

// Splits "key=value" tokens; returns false on a token without '='.
bool ParseKeyValues(const std::vector<absl::string_view> &tokens, size_t first,
                    std::vector<std::pair<absl::string_view, absl::string_view>>
                        &out) {
  for (size_t i = first; i < tokens.size(); ++i) {
    size_t eq = tokens[i].find('=');
    if (eq == absl::string_view::npos) return false;
    out.emplace_back(tokens[i].substr(0, eq), tokens[i].substr(eq + 1));
  }
  return true;
}

absl::StatusOr<std::string> ReadFile(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::ostringstream contents;
  contents << in.rdbuf();
  return contents.str();
}

}  // namespace

absl::StatusOr<Icfg> ParseIcfg(absl::string_view text) {
  IcfgParts parts;
  FunctionDef *current = nullptr;
  size_t line_no = 0;
  for (absl::string_view raw : absl::StrSplit(text, '\n')) {
    ++line_no;
    absl::string_view line = StripComment(raw);
    if (line.empty()) continue;
    std::vector<absl::string_view> tokens =
        absl::StrSplit(line, absl::ByAnyChar(" \t"), absl::SkipEmpty());
    absl::string_view keyword = tokens[0];
    std::vector<std::pair<absl::string_view, absl::string_view>> kv;

    if (keyword == "main") {
      if (tokens.size() != 2) return LineError(line_no, "expected: main <name>");
      if (!parts.main.empty()) return LineError(line_no, "duplicate main line");
      parts.main = std::string(tokens[1]);
    } else if (keyword == "function") {
      if (tokens.size() < 2 || !ParseKeyValues(tokens, 2, kv)) {
        return LineError(line_no,
                         "expected: function <name> key=value ...");
      }
      FunctionDef &f = parts.functions.emplace_back();
      f.name = std::string(tokens[1]);
      bool has_entry = false;
      for (auto [key, value] : kv) {
        if (key == "signature") {
          f.signature = std::string(value);
        } else if (key == "address_taken") {
          if (value != "0" && value != "1") {
            return LineError(line_no, "address_taken must be 0 or 1");
          }
          f.address_taken = value == "1";
        } else if (key == "entry") {
          f.entry = std::string(value);
          has_entry = true;
        } else if (key == "exits") {
          f.exits = SplitList(value);
        } else {
          return LineError(line_no,
                           absl::StrCat("unknown function attribute ", key));
        }
      }
      if (!has_entry) return LineError(line_no, "function without entry=");
      current = &f;
    } else if (keyword == "block") {
      if (tokens.size() != 2) return LineError(line_no, "expected: block <id>");
      if (current == nullptr) {
        return LineError(line_no, "block outside of a function section");
      }
      current->blocks.emplace_back(tokens[1]);
    } else if (keyword == "edge") {
      if (tokens.size() != 3) {
        return LineError(line_no, "expected: edge <src> <dst>");
      }
      parts.intra_edges.emplace_back(std::string(tokens[1]),
                                     std::string(tokens[2]));
    } else if (keyword == "call") {
      if (tokens.size() != 4 || !ParseKeyValues(tokens, 2, kv)) {
        return LineError(line_no,
                         "expected: call <block> direct=..|indirect=.. "
                         "return=<block>");
      }
      CallSite &site = parts.call_sites.emplace_back();
      site.block = std::string(tokens[1]);
      bool has_target = false;
      for (auto [key, value] : kv) {
        if (key == "direct") {
          site.callees = SplitList(value);
          has_target = true;
        } else if (key == "indirect") {
          site.indirect_signature = std::string(value);
          has_target = true;
        } else if (key == "return") {
          site.return_site = std::string(value);
        } else {
          return LineError(line_no, absl::StrCat("unknown call attribute ", key));
        }
      }
      if (!has_target || site.return_site.empty()) {
        return LineError(line_no, "call needs direct= or indirect= and return=");
      }
    } else {
      return LineError(line_no, absl::StrCat("unknown keyword ", keyword));
    }
  }
  return Icfg::Create(std::move(parts));
}

absl::StatusOr<Icfg> LoadIcfg(const std::string &path) {
  TOFU_ASSIGN_OR_RETURN(std::string text, ReadFile(path));
  absl::StatusOr<Icfg> icfg = ParseIcfg(text);
  if (!icfg.ok()) {
    return absl::Status(icfg.status().code(),
                        absl::StrCat(path, ": ", icfg.status().message()));
  }
  return icfg;
}

std::string FormatIcfg(const Icfg &icfg) {
  IcfgParts parts = icfg.ToParts();
  std::string out = absl::StrCat("main ", parts.main, "\n");
  for (const FunctionDef &f : parts.functions) {
    absl::StrAppend(&out, "function ", f.name, " signature=", f.signature,
                    " address_taken=", f.address_taken ? 1 : 0,
                    " entry=", f.entry, " exits=", absl::StrJoin(f.exits, ","),
                    "\n");
    for (const std::string &block : f.blocks) {
      absl::StrAppend(&out, "block ", block, "\n");
    }
  }
  for (const auto &[src, dst] : parts.intra_edges) {
    absl::StrAppend(&out, "edge ", src, " ", dst, "\n");
  }
  for (const CallSite &site : parts.call_sites) {
    absl::StrAppend(&out, "call ", site.block, " ");
    if (site.is_indirect()) {
      absl::StrAppend(&out, "indirect=", *site.indirect_signature);
    } else {
      absl::StrAppend(&out, "direct=", absl::StrJoin(site.callees, ","));
    }
    absl::StrAppend(&out, " return=", site.return_site, "\n");
  }
  return out;
}

absl::StatusOr<TargetSpec> ParseTargets(absl::string_view text,
                                        const Icfg &icfg) {
  TargetSpec spec;
  absl::flat_hash_set<std::string> seen;
  size_t line_no = 0;
  for (absl::string_view raw : absl::StrSplit(text, '\n')) {
    ++line_no;
    absl::string_view line = StripComment(raw);
    if (line.empty()) continue;
    if (!icfg.HasBlock(line)) {
      return LineError(line_no, absl::StrCat("unknown target block ", line));
    }
    if (seen.insert(std::string(line)).second) {
      spec.targets.emplace_back(line);
    }
  }
  if (spec.targets.empty()) {
    return absl::InvalidArgumentError("target list is empty");
  }
  return spec;
}

absl::StatusOr<TargetSpec> LoadTargets(const std::string &path,
                                       const Icfg &icfg) {
  TOFU_ASSIGN_OR_RETURN(std::string text, ReadFile(path));
  absl::StatusOr<TargetSpec> spec = ParseTargets(text, icfg);
  if (!spec.ok()) {
    return absl::Status(spec.status().code(),
                        absl::StrCat(path, ": ", spec.status().message()));
  }
  return spec;
}

}  // namespace tofu
