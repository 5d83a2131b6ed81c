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


#include <string>
#include <vector>

#include "absl/strings/str_cat.h"
#include "benchmark/benchmark.h"
#include "tofu/distance.h"
#include "tofu/icfg.h"
#include "tofu/rng.h"
#include "tofu/weighted_graph.h"

namespace tofu {
namespace {

// `functions` functions of `blocks` blocks each: a branchy forward CFG per
// function, and a call chain f0 -> f1 -> ... from a random block of each.
Icfg MakeProgram(int functions, int blocks, uint64_t seed) {
  Rng rng(seed);
  IcfgParts parts;
  parts.main = "f0";
  for (int f = 0; f < functions; ++f) {
    FunctionDef def;
    def.name = absl::StrCat("f", f);
    for (int b = 0; b < blocks; ++b) def.blocks.push_back(absl::StrCat(def.name, ":", b));
    def.entry = def.blocks.front();
    def.exits = {def.blocks.back()};
    for (int b = 0; b + 1 < blocks; ++b) {
      parts.intra_edges.push_back({def.blocks[b], def.blocks[b + 1]});
      const int skip = b + 2 + static_cast<int>(UniformInt(rng, 0, 3));
      if (skip < blocks) parts.intra_edges.push_back({def.blocks[b], def.blocks[skip]});
    }
    parts.functions.push_back(std::move(def));
  }
  for (int f = 0; f + 1 < functions; ++f) {
    const int site = static_cast<int>(UniformInt(rng, 0, blocks - 2));
    CallSite call;
    call.block = absl::StrCat("f", f, ":", site);
    call.callees = {absl::StrCat("f", f + 1)};
    call.return_site = absl::StrCat("f", f, ":", site + 1);
    parts.call_sites.push_back(std::move(call));
  }
  return *Icfg::Create(std::move(parts));
}

void BM_BuildWeightedGraph(benchmark::State &state) {
  const Icfg icfg = MakeProgram(static_cast<int>(state.range(0)), 50, 1);
  const TargetSpec targets{{absl::StrCat("f", state.range(0) - 1, ":40")}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(BuildWeightedGraph(icfg, targets));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 50);
}
BENCHMARK(BM_BuildWeightedGraph)->Arg(4)->Arg(16)->Arg(64);

void BM_ComputeDistances(benchmark::State &state) {
  const int functions = static_cast<int>(state.range(0));
  const Icfg icfg = MakeProgram(functions, 50, 2);
  TargetSpec targets;
  for (int f = 1; f < functions; f += std::max(1, functions / 8)) {
    targets.targets.push_back(absl::StrCat("f", f, ":45"));
  }
  const WeightedGraph graph = BuildWeightedGraph(icfg, targets);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ComputeDistances(graph, targets));
  }
  state.SetItemsProcessed(state.iterations() * graph.nodes().size() *
                          targets.targets.size());
}
BENCHMARK(BM_ComputeDistances)->Arg(4)->Arg(16)->Arg(64);

}  // namespace
}  // namespace tofu
