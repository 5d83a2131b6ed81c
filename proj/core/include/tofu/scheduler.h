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

#ifndef TOFU_SCHEDULER_H_
#define TOFU_SCHEDULER_H_

#include <cstdint>
#include <limits>
#include <memory>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/status/statusor.h"
#include "tofu/distance.h"
#include "tofu/harness.h"
#include "tofu/input_bundle.h"
#include "tofu/rng.h"

namespace tofu {

inline constexpr double kInfiniteScore = std::numeric_limits<double>::infinity();
inline constexpr double kReinsertionFactor = 1.2;
// Replacement score when a zero-score seed is reinserted.
inline constexpr double kZeroScoreReinsertion = 0.5;

struct Seed {
  uint64_t id = 0;
  std::shared_ptr<const InputBundle> input;
  std::shared_ptr<const CoverageSet> coverage;

  // The live score is always base_score * 1.2^reinsertions.
  double base_score = 0;
  int reinsertions = 0;
  double score() const;

  // Assigned by SeedQueue::Push.
  uint64_t insert_seq = 0;
};

// Order-independent 64-bit key of a coverage set (FNV-1a over the sorted
// block ids), stable across runs and platforms.
uint64_t CoverageKey(const CoverageSet &coverage);

class CoverageDictionary {
 public:
  uint64_t Count(const CoverageSet &coverage) const;
  uint64_t Count(uint64_t key) const;
  void Increment(uint64_t key) { ++counts_[key]; }
  size_t size() const { return counts_.size(); }

 private:
  absl::flat_hash_map<uint64_t, uint64_t> counts_;
};

struct TargetLedger {
  std::set<std::string> all;
  std::set<std::string> covered;

  bool done() const { return covered.size() == all.size(); }
};

// Adds coverage ∩ (all − covered) to the ledger and returns it.
std::set<std::string> UpdateTargets(const CoverageSet &coverage,
                                    TargetLedger &ledger);

// min over uncovered targets t, min over b in coverage, of dist_t(b).
// Infinite for empty coverage or when every distance is infinite.
double ScoreTrace(const CoverageSet &coverage, const DistanceMaps &maps,
                  const TargetLedger &ledger);

// Min-priority queue on (score, insert_seq).
class SeedQueue {
 public:
  void Push(Seed seed);

  // Pops the best seed and immediately pushes a copy back with its score
  // multiplied by 1.2 (or reset to 0.5 if it was 0). Returns the popped
  // seed. FailedPrecondition when empty.
  absl::StatusOr<Seed> SelectNext();

  const Seed &Top() const { return heap_.top(); }
  bool empty() const { return heap_.empty(); }
  size_t size() const { return heap_.size(); }
  uint64_t pushes() const { return next_seq_; }

 private:
  struct Later {
    bool operator()(const Seed &a, const Seed &b) const;
  };
  std::priority_queue<Seed, std::vector<Seed>, Later> heap_;
  uint64_t next_seq_ = 0;
};

// Accepts with probability 1/(n+1), n being the dictionary count of the
// seed's coverage set; on acceptance bumps the count and pushes the seed.
// Seeds with an infinite score are rejected without touching `rng`.
bool TryInsert(Seed seed, CoverageDictionary &dict, SeedQueue &queue,
               Rng &rng);

// Priority used instead of ScoreTrace when guidance is disabled.
double RandomScore(Rng &rng);

}  // namespace tofu

#endif  // TOFU_SCHEDULER_H_
