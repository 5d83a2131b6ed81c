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

#include "tofu/post_dominators.h"

#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace tofu {

// Cooper, Harvey & Kennedy's iterative dominator algorithm run on the
// reversed CFG, rooted at the synthetic exit.
absl::StatusOr<std::map<std::string, std::string>>
ComputeImmediatePostDominators(const Icfg &icfg, absl::string_view function) {
  const FunctionDef *f = icfg.FindFunction(function);
  if (f == nullptr) {
    return absl::NotFoundError(absl::StrCat("unknown function ", function));
  }
  const size_t n = f->blocks.size();
  const size_t sink = n;
  absl::flat_hash_map<absl::string_view, size_t> index;
  for (size_t i = 0; i < n; ++i) index[f->blocks[i]] = i;

  // Reverse-graph successors are CFG predecessors; the sink's reverse
  // successors are the exits.
  std::vector<std::vector<size_t>> rsucc(n + 1), rpred(n + 1);
  for (size_t i = 0; i < n; ++i) {
    for (const std::string &succ : icfg.IntraSuccessors(f->blocks[i])) {
      size_t j = index.at(succ);
      rsucc[j].push_back(i);
      rpred[i].push_back(j);
    }
  }
  for (const std::string &exit : f->exits) {
    size_t e = index.at(exit);
    rsucc[sink].push_back(e);
    rpred[e].push_back(sink);
  }

  // Reverse postorder of the reversed graph from the sink.
  std::vector<size_t> order;
  std::vector<char> visited(n + 1, 0);
  std::vector<std::pair<size_t, size_t>> stack{{sink, 0}};
  visited[sink] = 1;
  while (!stack.empty()) {
    auto &[node, next] = stack.back();
    if (next < rsucc[node].size()) {
      size_t succ = rsucc[node][next++];
      if (!visited[succ]) {
        visited[succ] = 1;
        stack.push_back({succ, 0});
      }
    } else {
      order.push_back(node);
      stack.pop_back();
    }
  }
  std::vector<size_t> rpo_number(n + 1, 0);
  std::vector<size_t> rpo(order.rbegin(), order.rend());
  for (size_t i = 0; i < rpo.size(); ++i) rpo_number[rpo[i]] = i;

  constexpr size_t kUndefined = static_cast<size_t>(-1);
  std::vector<size_t> idom(n + 1, kUndefined);
  idom[sink] = sink;
  auto intersect = [&](size_t a, size_t b) {
    while (a != b) {
      while (rpo_number[a] > rpo_number[b]) a = idom[a];
      while (rpo_number[b] > rpo_number[a]) b = idom[b];
    }
    return a;
  };
  for (bool changed = true; changed;) {
    changed = false;
    for (size_t i = 1; i < rpo.size(); ++i) {
      size_t node = rpo[i];
      size_t new_idom = kUndefined;
      for (size_t pred : rpred[node]) {
        if (idom[pred] == kUndefined) continue;
        new_idom = new_idom == kUndefined ? pred : intersect(pred, new_idom);
      }
      if (new_idom != idom[node]) {
        idom[node] = new_idom;
        changed = true;
      }
    }
  }

  std::map<std::string, std::string> result;
  for (size_t i = 0; i < n; ++i) {
    if (!visited[i]) continue;
    result[f->blocks[i]] =
        idom[i] == sink ? std::string(kVirtualExit) : f->blocks[idom[i]];
  }
  return result;
}

}  // namespace tofu
