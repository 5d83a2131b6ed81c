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

#ifndef TOFU_WEIGHTED_GRAPH_H_
#define TOFU_WEIGHTED_GRAPH_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/strings/string_view.h"
#include "tofu/distance_value.h"
#include "tofu/icfg.h"

namespace tofu {

struct WeightedArc {
  size_t src = 0;
  size_t dst = 0;
  Distance weight;
  EdgeKind kind = EdgeKind::kIntra;

  friend bool operator==(const WeightedArc &, const WeightedArc &) = default;
};

// The ICFG with branch-choice lengths on its edges plus zero-length shortcut
// arcs to immediate post-dominators.
class WeightedGraph {
 public:
  WeightedGraph() = default;
  explicit WeightedGraph(std::vector<std::string> nodes);

  size_t AddNode(std::string name);
  void AddArc(size_t src, size_t dst, Distance weight, EdgeKind kind);

  const std::vector<std::string> &nodes() const { return nodes_; }
  const std::vector<WeightedArc> &arcs() const { return arcs_; }
  std::optional<size_t> IndexOf(absl::string_view node) const;

 private:
  std::vector<std::string> nodes_;
  std::vector<WeightedArc> arcs_;
  absl::flat_hash_map<std::string, size_t> index_;
};

// Edge lengths:
//   intra edge out of a block with one intra successor      0
//   intra edge out of a block with two or more               1
//   block -> immediate post-dominator (not the virtual exit) 0
//   call edge, site with one resolved callee                 0
//   call edge, site with two or more resolved callees        1
//   call edge into a function that cannot reach a function
//   holding a target in the call graph, or whose caller is
//   not reachable from main                                  INF
//   return edge                                              0
// Indirect calls are resolved first if `icfg` has not been resolved yet.
WeightedGraph BuildWeightedGraph(const Icfg &icfg, const TargetSpec &targets);

}  // namespace tofu

#endif  // TOFU_WEIGHTED_GRAPH_H_
