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


#include <memory>
#include <string>

#include "absl/strings/str_cat.h"
#include "benchmark/benchmark.h"
#include "tofu/rng.h"
#include "tofu/distance.h"
#include "tofu/scheduler.h"

namespace tofu {
namespace {

void BM_ScoreTrace(benchmark::State &state) {
  const int blocks = static_cast<int>(state.range(0));
  DistanceMaps maps;
  std::vector<std::pair<std::string, Distance>> entries;
  CoverageSet coverage;
  for (int i = 0; i < blocks; ++i) {
    const std::string id = absl::StrCat("main:", i);
    entries.push_back({id, Distance(blocks - i)});
    if (i % 2 == 0) coverage.insert(id);
  }
  TargetLedger ledger;
  for (int t = 0; t < 4; ++t) {
    const std::string target = absl::StrCat("t", t);
    maps.emplace(target, DistanceMap(target, entries));
    ledger.all.insert(target);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(ScoreTrace(coverage, maps, ledger));
  }
}
BENCHMARK(BM_ScoreTrace)->Arg(64)->Arg(1024);

void BM_TryInsertAndSelect(benchmark::State &state) {
  Rng rng(1);
  CoverageDictionary dict;
  SeedQueue queue;
  std::vector<std::shared_ptr<const CoverageSet>> sets;
  for (int i = 0; i < 32; ++i) {
    sets.push_back(std::make_shared<const CoverageSet>(
        CoverageSet{absl::StrCat("b", i), absl::StrCat("b", i * 7 % 32)}));
  }
  uint64_t id = 0;
  for (auto _ : state) {
    Seed seed;
    seed.id = id++;
    seed.base_score = static_cast<double>(UniformInt(rng, 0, 20));
    seed.coverage = sets[id % sets.size()];
    TryInsert(std::move(seed), dict, queue, rng);
    benchmark::DoNotOptimize(queue.SelectNext());
  }
}
BENCHMARK(BM_TryInsertAndSelect);

}  // namespace
}  // namespace tofu
