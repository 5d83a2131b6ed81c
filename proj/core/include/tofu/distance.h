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

#ifndef TOFU_DISTANCE_H_
#define TOFU_DISTANCE_H_

#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "tofu/distance_value.h"
#include "tofu/icfg.h"
#include "tofu/weighted_graph.h"

namespace tofu {

// Distances from every block to one target: the minimum number of branch
// choices that still have to go the right way for an execution at that block
// to continue on to the target.
class DistanceMap {
 public:
  using Entry = std::pair<std::string, Distance>;

  // The target always gets distance 0; it is prepended if `entries` lacks it.
  DistanceMap(std::string target, std::vector<Entry> entries);

  const std::string &target() const { return target_; }
  // Infinite for blocks without an entry.
  Distance At(absl::string_view block) const;
  const std::vector<Entry> &entries() const { return entries_; }

  friend bool operator==(const DistanceMap &a, const DistanceMap &b) {
    return a.target_ == b.target_ && a.entries_ == b.entries_;
  }

 private:
  std::string target_;
  std::vector<Entry> entries_;
  absl::flat_hash_map<std::string, size_t> index_;
};

// Keyed by target block id.
using DistanceMaps = std::map<std::string, DistanceMap>;

// Shortest distance from every node of `graph` to each target, ignoring
// infinite arcs. Dijkstra on the reversed graph, one pass per target. Entries
// follow graph node order.
DistanceMaps ComputeDistances(const WeightedGraph &graph,
                              const TargetSpec &targets);

// "<dir>/<target with ':' replaced by '__'>.dist"
std::string DistanceFileName(absl::string_view target);

// One file per target; each line is "<block_id> <int|INF>".
absl::Status WriteDistanceFiles(const DistanceMaps &maps,
                                const std::filesystem::path &dir);
absl::StatusOr<DistanceMaps> ReadDistanceFiles(const std::filesystem::path &dir);

}  // namespace tofu

#endif  // TOFU_DISTANCE_H_
