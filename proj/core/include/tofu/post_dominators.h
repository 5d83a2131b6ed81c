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

#ifndef TOFU_POST_DOMINATORS_H_
#define TOFU_POST_DOMINATORS_H_

#include <map>
#include <string>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "tofu/icfg.h"

namespace tofu {

// Synthetic node every exit block of a function flows into. It never appears
// in a WeightedGraph.
inline constexpr absl::string_view kVirtualExit = "<exit>";

// Immediate post-dominator of every block of `function` over its
// intra-procedural CFG. Exit blocks (and blocks whose only common
// post-dominator is the synthetic exit) map to kVirtualExit. Blocks from which
// no exit is reachable are absent from the result.
absl::StatusOr<std::map<std::string, std::string>>
ComputeImmediatePostDominators(const Icfg &icfg, absl::string_view function);

}  // namespace tofu

#endif  // TOFU_POST_DOMINATORS_H_
