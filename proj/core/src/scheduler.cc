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

#include "tofu/scheduler.h"

#include <cmath>

#include "absl/status/status.h"

namespace tofu {

double Seed::score() const {
  return base_score * std::pow(kReinsertionFactor, reinsertions);
}

uint64_t CoverageKey(const CoverageSet &coverage) {
  uint64_t hash = 0xcbf29ce484222325ULL;
  auto mix = [&hash](unsigned char byte) {
    hash ^= byte;
    hash *= 0x100000001b3ULL;
  };
  for (const std::string &block : coverage) {
    for (char c : block) mix(static_cast<unsigned char>(c));
    mix(0);
  }
  return hash;
}

uint64_t CoverageDictionary::Count(const CoverageSet &coverage) const {
  return Count(CoverageKey(coverage));
}

uint64_t CoverageDictionary::Count(uint64_t key) const {
  auto it = counts_.find(key);
  return it == counts_.end() ? 0 : it->second;
}

std::set<std::string> UpdateTargets(const CoverageSet &coverage,
                                    TargetLedger &ledger) {
  std::set<std::string> fresh;
  for (const std::string &target : ledger.all) {
    if (!ledger.covered.contains(target) && coverage.contains(target)) {
      fresh.insert(target);
    }
  }
  ledger.covered.insert(fresh.begin(), fresh.end());
  return fresh;
}

double ScoreTrace(const CoverageSet &coverage, const DistanceMaps &maps,
                  const TargetLedger &ledger) {
  Distance best = Distance::Infinite();
  for (const std::string &target : ledger.all) {
    if (ledger.covered.contains(target)) continue;
    auto it = maps.find(target);
    if (it == maps.end()) continue;
    for (const std::string &block : coverage) {
      best = std::min(best, it->second.At(block));
    }
  }
  return best.is_finite() ? static_cast<double>(best.value()) : kInfiniteScore;
}

bool SeedQueue::Later::operator()(const Seed &a, const Seed &b) const {
  const double sa = a.score();
  const double sb = b.score();
  if (sa != sb) return sa > sb;
  return a.insert_seq > b.insert_seq;
}

void SeedQueue::Push(Seed seed) {
  seed.insert_seq = next_seq_++;
  heap_.push(std::move(seed));
}

absl::StatusOr<Seed> SeedQueue::SelectNext() {
  if (heap_.empty()) return absl::FailedPreconditionError("seed queue is empty");
  Seed top = heap_.top();
  heap_.pop();
  Seed again = top;
  if (top.score() > 0) {
    ++again.reinsertions;
  } else {
    again.base_score = kZeroScoreReinsertion;
    again.reinsertions = 0;
  }
  Push(std::move(again));
  return top;
}

bool TryInsert(Seed seed, CoverageDictionary &dict, SeedQueue &queue,
               Rng &rng) {
  if (std::isinf(seed.score())) return false;
  const uint64_t key = CoverageKey(*seed.coverage);
  const uint64_t n = dict.Count(key);
  if (UniformReal(rng) >= 1.0 / static_cast<double>(n + 1)) return false;
  dict.Increment(key);
  queue.Push(std::move(seed));
  return true;
}

double RandomScore(Rng &rng) { return UniformReal(rng); }

}  // namespace tofu
