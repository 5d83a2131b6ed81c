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

#ifndef TOFU_ICFG_H_
#define TOFU_ICFG_H_

// Interprocedural control-flow graph: functions, basic blocks, intra edges,
// call sites, and the call/return edges derived from them.
//
// Block ids are opaque strings, unique across the whole program. The
// convention used by the shipped graph files is "function:index".

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"

namespace tofu {

enum class EdgeKind { kIntra, kCall, kReturn, kPostDom };

absl::string_view EdgeKindName(EdgeKind kind);

struct FunctionDef {
  std::string name;
  std::vector<std::string> blocks;
  std::string entry;
  std::vector<std::string> exits;
  // Canonical type pattern, e.g. "i32(ptr,i32)". Compared by string
  // equality when resolving indirect calls; casts are not modeled.
  std::string signature;
  bool address_taken = false;

  friend bool operator==(const FunctionDef &, const FunctionDef &) = default;
};

struct IcfgEdge {
  std::string src;
  std::string dst;
  EdgeKind kind = EdgeKind::kIntra;

  friend bool operator==(const IcfgEdge &, const IcfgEdge &) = default;
};

struct CallSite {
  std::string block;
  // Direct sites list their callees here. Indirect sites carry a signature
  // and get `callees` filled by ResolveIndirectCalls().
  std::vector<std::string> callees;
  std::optional<std::string> indirect_signature;
  std::string return_site;

  bool is_indirect() const { return indirect_signature.has_value(); }

  friend bool operator==(const CallSite &, const CallSite &) = default;
};

// Everything a graph file states. Icfg::Create() validates it and derives
// the interprocedural edges.
struct IcfgParts {
  std::vector<FunctionDef> functions;
  std::vector<std::pair<std::string, std::string>> intra_edges;
  std::vector<CallSite> call_sites;
  std::string main;
};

class Icfg {
 public:
  // Validates `parts`: unique function names and block ids, entry/exits
  // inside their function, known edge endpoints, intra edges within one
  // function, return sites in the caller's function, known direct callees,
  // and an existing `main`. Duplicate intra edges are collapsed.
  static absl::StatusOr<Icfg> Create(IcfgParts parts);

  const std::vector<FunctionDef> &functions() const { return functions_; }
  const std::vector<CallSite> &call_sites() const { return call_sites_; }
  // Intra edges in file order, followed by call and return edges.
  const std::vector<IcfgEdge> &edges() const { return edges_; }
  const std::vector<std::pair<std::string, std::string>> &intra_edges() const {
    return intra_edges_;
  }
  const std::string &main() const { return main_; }
  // All blocks, grouped by function in declaration order.
  const std::vector<std::string> &blocks() const { return blocks_; }
  bool indirect_calls_resolved() const { return indirect_resolved_; }

  bool HasBlock(absl::string_view block) const;
  const FunctionDef *FindFunction(absl::string_view name) const;
  // nullptr if `block` is unknown.
  const FunctionDef *FunctionOfBlock(absl::string_view block) const;
  const std::vector<std::string> &IntraSuccessors(absl::string_view block) const;

  // Reconstructs the file-level description (indirect sites keep their
  // signature; resolved callees are not part of it).
  IcfgParts ToParts() const;

 private:
  friend Icfg ResolveIndirectCalls(const Icfg &icfg);

  Icfg() = default;
  void RebuildInterproceduralEdges();

  std::vector<FunctionDef> functions_;
  std::vector<std::pair<std::string, std::string>> intra_edges_;
  std::vector<CallSite> call_sites_;
  std::string main_;
  bool indirect_resolved_ = false;

  std::vector<std::string> blocks_;
  std::vector<IcfgEdge> edges_;
  absl::flat_hash_map<std::string, size_t> function_index_;
  absl::flat_hash_map<std::string, size_t> block_function_;
  absl::flat_hash_map<std::string, std::vector<std::string>> intra_succ_;
};

// Replaces the callee list of every indirect call site with the functions
// whose address is taken and whose signature equals the site's signature,
// then rebuilds call/return edges. Direct sites are unchanged. Idempotent.
Icfg ResolveIndirectCalls(const Icfg &icfg);

struct TargetSpec {
  std::vector<std::string> targets;
};

// Graph-file text format:
//   # comment
//   main <function>
//   function <name> signature=<sig> address_taken=<0|1> entry=<b> exits=<b,..>
//   block <id>                 (belongs to the preceding `function`)
//   edge <src> <dst>           (intra-procedural)
//   call <block> direct=<f1,f2>|indirect=<sig> return=<block>
absl::StatusOr<Icfg> ParseIcfg(absl::string_view text);
absl::StatusOr<Icfg> LoadIcfg(const std::string &path);
std::string FormatIcfg(const Icfg &icfg);

// Targets file: one block id per line; blank lines and '#' comments ignored.
absl::StatusOr<TargetSpec> ParseTargets(absl::string_view text, const Icfg &icfg);
absl::StatusOr<TargetSpec> LoadTargets(const std::string &path,
                                       const Icfg &icfg);

}  // namespace tofu

#endif  // TOFU_ICFG_H_
