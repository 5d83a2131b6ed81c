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

#include "tofu/weighted_graph.h"

#include <deque>
#include <map>
#include <set>
#include <utility>

#include "absl/container/flat_hash_set.h"
#include "glog/logging.h"
#include "tofu/post_dominators.h"

namespace tofu {

WeightedGraph::WeightedGraph(std::vector<std::string> nodes) {
  for (std::string &node : nodes) AddNode(std::move(node));
}

size_t WeightedGraph::AddNode(std::string name) {
  auto [it, inserted] = index_.emplace(name, nodes_.size());
  if (inserted) nodes_.push_back(std::move(name));
  return it->second;
}

void WeightedGraph::AddArc(size_t src, size_t dst, Distance weight,
                           EdgeKind kind) {
  CHECK_LT(src, nodes_.size());
  CHECK_LT(dst, nodes_.size());
  arcs_.push_back({src, dst, weight, kind});
}

std::optional<size_t> WeightedGraph::IndexOf(absl::string_view node) const {
  auto it = index_.find(node);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

namespace {

using CallGraph = std::map<std::string, absl::flat_hash_set<std::string>>;

absl::flat_hash_set<std::string> ReachableFrom(const CallGraph &graph,
                                               const std::string &root) {
  absl::flat_hash_set<std::string> seen{root};
  std::deque<std::string> work{root};
  while (!work.empty()) {
    std::string f = std::move(work.front());
    work.pop_front();
    auto it = graph.find(f);
    if (it == graph.end()) continue;
    for (const std::string &g : it->second) {
      if (seen.insert(g).second) work.push_back(g);
    }
  }
  return seen;
}

}  // namespace

WeightedGraph BuildWeightedGraph(const Icfg &input, const TargetSpec &targets) {
  const Icfg icfg =
      input.indirect_calls_resolved() ? input : ResolveIndirectCalls(input);
  WeightedGraph graph(icfg.blocks());
  auto id = [&](const std::string &block) { return *graph.IndexOf(block); };

  for (const auto &[src, dst] : icfg.intra_edges()) {
    const size_t fanout = icfg.IntraSuccessors(src).size();
    graph.AddArc(id(src), id(dst), Distance(fanout > 1 ? 1 : 0),
                 EdgeKind::kIntra);
  }

  for (const FunctionDef &f : icfg.functions()) {
    auto ipdom = ComputeImmediatePostDominators(icfg, f.name);
    CHECK(ipdom.ok()) << ipdom.status();
    for (const auto &[block, dominator] : *ipdom) {
      if (dominator == kVirtualExit) continue;
      graph.AddArc(id(block), id(dominator), Distance(0), EdgeKind::kPostDom);
    }
  }

  // Call-graph pruning. A call edge f -> g is useful only if f is reachable
  // from main and g reaches some function that contains a target.
  CallGraph calls, reverse_calls;
  for (const FunctionDef &f : icfg.functions()) {
    calls[f.name];
    reverse_calls[f.name];
  }
  for (const CallSite &site : icfg.call_sites()) {
    const std::string &caller = icfg.FunctionOfBlock(site.block)->name;
    for (const std::string &callee : site.callees) {
      calls[caller].insert(callee);
      reverse_calls[callee].insert(caller);
    }
  }
  absl::flat_hash_set<std::string> from_main = ReachableFrom(calls, icfg.main());
  absl::flat_hash_set<std::string> reaches_target;
  for (const std::string &target : targets.targets) {
    const FunctionDef *f = icfg.FunctionOfBlock(target);
    if (f == nullptr) continue;
    for (const std::string &g : ReachableFrom(reverse_calls, f->name)) {
      reaches_target.insert(g);
    }
  }

  for (const CallSite &site : icfg.call_sites()) {
    const std::string &caller = icfg.FunctionOfBlock(site.block)->name;
    const std::set<std::string> callees(site.callees.begin(),
                                        site.callees.end());
    const Distance branch_weight(callees.size() > 1 ? 1 : 0);
    for (const std::string &callee : callees) {
      const FunctionDef &g = *icfg.FindFunction(callee);
      const bool pruned =
          !from_main.contains(caller) || !reaches_target.contains(callee);
      graph.AddArc(id(site.block), id(g.entry),
                   pruned ? Distance::Infinite() : branch_weight,
                   EdgeKind::kCall);
      for (const std::string &exit : g.exits) {
        graph.AddArc(id(exit), id(site.return_site), Distance(0),
                     EdgeKind::kReturn);
      }
    }
  }
  return graph;
}

}  // namespace tofu
