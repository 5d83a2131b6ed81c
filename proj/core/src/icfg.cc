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

#include "tofu/icfg.h"

#include <set>
#include <utility>

#include "absl/container/flat_hash_set.h"
#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace tofu {

absl::string_view EdgeKindName(EdgeKind kind) {
  switch (kind) {
    case EdgeKind::kIntra:
      return "intra";
    case EdgeKind::kCall:
      return "call";
    case EdgeKind::kReturn:
      return "return";
    case EdgeKind::kPostDom:
      return "postdom";
  }
  return "unknown";
}

absl::StatusOr<Icfg> Icfg::Create(IcfgParts parts) {
  Icfg icfg;
  for (size_t i = 0; i < parts.functions.size(); ++i) {
    const FunctionDef &f = parts.functions[i];
    if (f.name.empty()) {
      return absl::InvalidArgumentError("function with empty name");
    }
    if (!icfg.function_index_.emplace(f.name, i).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("duplicate function ", f.name));
    }
    for (const std::string &block : f.blocks) {
      if (block.empty() || block.front() == '<') {
        return absl::InvalidArgumentError(
            absl::StrCat("invalid block id '", block, "' in ", f.name));
      }
      if (!icfg.block_function_.emplace(block, i).second) {
        return absl::InvalidArgumentError(
            absl::StrCat("duplicate block id ", block));
      }
      icfg.blocks_.push_back(block);
    }
  }
  for (const FunctionDef &f : parts.functions) {
    auto in_function = [&](const std::string &block) {
      auto it = icfg.block_function_.find(block);
      return it != icfg.block_function_.end() &&
             parts.functions[it->second].name == f.name;
    };
    if (!in_function(f.entry)) {
      return absl::InvalidArgumentError(absl::StrCat(
          "entry ", f.entry, " of ", f.name, " is not one of its blocks"));
    }
    for (const std::string &exit : f.exits) {
      if (!in_function(exit)) {
        return absl::InvalidArgumentError(absl::StrCat(
            "exit ", exit, " of ", f.name, " is not one of its blocks"));
      }
    }
  }
  if (parts.main.empty()) {
    return absl::InvalidArgumentError("missing main");
  }
  if (!icfg.function_index_.contains(parts.main)) {
    return absl::InvalidArgumentError(
        absl::StrCat("main function ", parts.main, " is not defined"));
  }

  absl::flat_hash_set<std::pair<std::string, std::string>> seen_edges;
  for (auto &[src, dst] : parts.intra_edges) {
    for (const std::string *end : {&src, &dst}) {
      if (!icfg.block_function_.contains(*end)) {
        return absl::InvalidArgumentError(
            absl::StrCat("unknown block ", *end));
      }
    }
    if (icfg.block_function_[src] != icfg.block_function_[dst]) {
      return absl::InvalidArgumentError(absl::StrCat(
          "intra edge ", src, " -> ", dst, " crosses functions"));
    }
    if (!seen_edges.insert({src, dst}).second) continue;
    icfg.intra_edges_.emplace_back(src, dst);
    icfg.intra_succ_[src].push_back(dst);
  }

  absl::flat_hash_set<std::string> call_blocks;
  for (CallSite &site : parts.call_sites) {
    for (const std::string *end : {&site.block, &site.return_site}) {
      if (!icfg.block_function_.contains(*end)) {
        return absl::InvalidArgumentError(
            absl::StrCat("unknown block ", *end));
      }
    }
    if (!call_blocks.insert(site.block).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("duplicate call site at ", site.block));
    }
    if (icfg.block_function_[site.block] !=
        icfg.block_function_[site.return_site]) {
      return absl::InvalidArgumentError(
          absl::StrCat("return site ", site.return_site,
                       " is not in the function of call block ", site.block));
    }
    if (site.is_indirect()) {
      if (site.indirect_signature->empty()) {
        return absl::InvalidArgumentError(absl::StrCat(
            "indirect call at ", site.block, " has an empty signature"));
      }
      // Resolution is derived; a file never fixes the callee set.
      site.callees.clear();
    } else {
      if (site.callees.empty()) {
        return absl::InvalidArgumentError(
            absl::StrCat("direct call at ", site.block, " has no callee"));
      }
      for (const std::string &callee : site.callees) {
        if (!icfg.function_index_.contains(callee)) {
          return absl::InvalidArgumentError(absl::StrCat(
              "call at ", site.block, " names unknown function ", callee));
        }
      }
    }
  }

  icfg.functions_ = std::move(parts.functions);
  icfg.call_sites_ = std::move(parts.call_sites);
  icfg.main_ = std::move(parts.main);
  icfg.indirect_resolved_ = true;
  for (const CallSite &site : icfg.call_sites_) {
    if (site.is_indirect()) icfg.indirect_resolved_ = false;
  }
  icfg.RebuildInterproceduralEdges();
  return icfg;
}

void Icfg::RebuildInterproceduralEdges() {
  edges_.clear();
  for (const auto &[src, dst] : intra_edges_) {
    edges_.push_back({src, dst, EdgeKind::kIntra});
  }
  for (const CallSite &site : call_sites_) {
    // std::set keeps the derived edges in a stable order regardless of how
    // the callee list was assembled.
    std::set<std::string> callees(site.callees.begin(), site.callees.end());
    for (const std::string &callee : callees) {
      const FunctionDef &f = functions_[function_index_.at(callee)];
      edges_.push_back({site.block, f.entry, EdgeKind::kCall});
      for (const std::string &exit : f.exits) {
        edges_.push_back({exit, site.return_site, EdgeKind::kReturn});
      }
    }
  }
}

bool Icfg::HasBlock(absl::string_view block) const {
  return block_function_.contains(block);
}

const FunctionDef *Icfg::FindFunction(absl::string_view name) const {
  auto it = function_index_.find(name);
  return it == function_index_.end() ? nullptr : &functions_[it->second];
}

const FunctionDef *Icfg::FunctionOfBlock(absl::string_view block) const {
  auto it = block_function_.find(block);
  return it == block_function_.end() ? nullptr : &functions_[it->second];
}

const std::vector<std::string> &Icfg::IntraSuccessors(
    absl::string_view block) const {
  static const std::vector<std::string> kNone;
  auto it = intra_succ_.find(block);
  return it == intra_succ_.end() ? kNone : it->second;
}

IcfgParts Icfg::ToParts() const {
  IcfgParts parts;
  parts.functions = functions_;
  parts.intra_edges = intra_edges_;
  parts.call_sites = call_sites_;
  for (CallSite &site : parts.call_sites) {
    if (site.is_indirect()) site.callees.clear();
  }
  parts.main = main_;
  return parts;
}

Icfg ResolveIndirectCalls(const Icfg &icfg) {
  Icfg resolved = icfg;
  for (CallSite &site : resolved.call_sites_) {
    if (!site.is_indirect()) continue;
    site.callees.clear();
    for (const FunctionDef &f : resolved.functions_) {
      if (f.address_taken && f.signature == *site.indirect_signature) {
        site.callees.push_back(f.name);
      }
    }
  }
  resolved.indirect_resolved_ = true;
  resolved.RebuildInterproceduralEdges();
  return resolved;
}

}  // namespace tofu
