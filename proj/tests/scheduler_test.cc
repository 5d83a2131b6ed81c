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

#include "gmock/gmock.h"
#include "gtest/gtest.h"

namespace tofu {
namespace {

using ::testing::ElementsAre;
using ::testing::IsEmpty;

Seed MakeSeed(uint64_t id, double score, CoverageSet coverage = {"x"}) {
  Seed seed;
  seed.id = id;
  seed.base_score = score;
  seed.coverage = std::make_shared<const CoverageSet>(std::move(coverage));
  return seed;
}

DistanceMaps TwoTargets() {
  DistanceMaps maps;
  maps.emplace("t", DistanceMap("t", {{"a", Distance(4)}, {"b", Distance(2)}}));
  maps.emplace("u", DistanceMap("u", {{"a", Distance(7)},
                                      {"b", Distance::Infinite()}}));
  return maps;
}

TEST(ScoreTraceTest, MinOverTargetsAndBlocks) {
  TargetLedger ledger{{"t", "u"}, {}};
  EXPECT_EQ(ScoreTrace({"a", "b"}, TwoTargets(), ledger), 2);
}

TEST(ScoreTraceTest, EmptyCoverageIsInfinite) {
  TargetLedger ledger{{"t", "u"}, {}};
  EXPECT_TRUE(std::isinf(ScoreTrace({}, TwoTargets(), ledger)));
}

TEST(ScoreTraceTest, CoveringAnUncoveredTargetScoresZero) {
  TargetLedger ledger{{"t", "u"}, {}};
  EXPECT_EQ(ScoreTrace({"a", "t"}, TwoTargets(), ledger), 0);
}

TEST(ScoreTraceTest, CoveredTargetsNoLongerCount) {
  TargetLedger ledger{{"t", "u"}, {"t"}};
  EXPECT_EQ(ScoreTrace({"a", "b"}, TwoTargets(), ledger), 7);
  EXPECT_TRUE(std::isinf(ScoreTrace({"b"}, TwoTargets(), ledger)));
}

TEST(ScoreTraceTest, MonotoneInCoverage) {
  TargetLedger ledger{{"t", "u"}, {}};
  const DistanceMaps maps = TwoTargets();
  const std::vector<std::string> blocks = {"a", "b", "t", "u", "z"};
  for (int mask = 0; mask < 32; ++mask) {
    CoverageSet small;
    for (int i = 0; i < 5; ++i) {
      if (mask & (1 << i)) small.insert(blocks[i]);
    }
    for (int extra = 0; extra < 5; ++extra) {
      CoverageSet big = small;
      big.insert(blocks[extra]);
      EXPECT_LE(ScoreTrace(big, maps, ledger), ScoreTrace(small, maps, ledger));
    }
  }
}

TEST(CoverageKeyTest, DependsOnlyOnTheSet) {
  EXPECT_EQ(CoverageKey({"b", "a"}), CoverageKey({"a", "b"}));
  EXPECT_NE(CoverageKey({"ab"}), CoverageKey({"a", "b"}));
  EXPECT_NE(CoverageKey({}), CoverageKey({""}));
}

TEST(TryInsertTest, UnseenCoverageIsAlwaysAccepted) {
  Rng rng(3);
  for (int i = 0; i < 1000; ++i) {
    CoverageDictionary dict;
    SeedQueue queue;
    EXPECT_TRUE(TryInsert(MakeSeed(i, 1), dict, queue, rng));
    EXPECT_EQ(dict.Count(CoverageSet{"x"}), 1);
    EXPECT_EQ(queue.size(), 1);
  }
}

TEST(TryInsertTest, AcceptanceRateIsOneOverNPlusOne) {
  Rng rng(12345);
  int accepted = 0;
  constexpr int kTrials = 10000;
  for (int i = 0; i < kTrials; ++i) {
    CoverageDictionary dict;
    const uint64_t key = CoverageKey({"x"});
    for (int k = 0; k < 3; ++k) dict.Increment(key);
    SeedQueue queue;
    accepted += TryInsert(MakeSeed(i, 1), dict, queue, rng);
  }
  const double rate = static_cast<double>(accepted) / kTrials;
  EXPECT_GE(rate, 0.24);
  EXPECT_LE(rate, 0.26);
}

TEST(TryInsertTest, InfiniteScoreIsRejectedWithoutSideEffects) {
  Rng rng(1);
  Rng untouched(1);
  CoverageDictionary dict;
  SeedQueue queue;
  EXPECT_FALSE(TryInsert(MakeSeed(1, kInfiniteScore), dict, queue, rng));
  EXPECT_EQ(dict.size(), 0);
  EXPECT_TRUE(queue.empty());
  EXPECT_EQ(rng(), untouched());
}

TEST(TryInsertTest, DictionaryCountsAcceptedInserts) {
  Rng rng(9);
  CoverageDictionary dict;
  SeedQueue queue;
  int accepted = 0;
  for (int i = 0; i < 200; ++i) accepted += TryInsert(MakeSeed(i, 2), dict, queue, rng);
  EXPECT_EQ(dict.Count(CoverageSet{"x"}), static_cast<uint64_t>(accepted));
  EXPECT_EQ(queue.size(), static_cast<size_t>(accepted));
}

TEST(SeedQueueTest, SelectsMinimumAndReinsertsScaled) {
  SeedQueue queue;
  queue.Push(MakeSeed(1, 3));
  queue.Push(MakeSeed(2, 5));
  absl::StatusOr<Seed> a = queue.SelectNext();
  ASSERT_TRUE(a.ok());
  EXPECT_EQ(a->id, 1);
  EXPECT_EQ(a->score(), 3);
  EXPECT_EQ(queue.size(), 2);
  EXPECT_EQ(queue.Top().id, 1);
  EXPECT_DOUBLE_EQ(queue.Top().score(), 3.6);
}

TEST(SeedQueueTest, ZeroScoreIsReinsertedAtHalf) {
  SeedQueue queue;
  queue.Push(MakeSeed(1, 0));
  absl::StatusOr<Seed> a = queue.SelectNext();
  ASSERT_TRUE(a.ok());
  EXPECT_EQ(a->score(), 0);
  EXPECT_EQ(queue.Top().score(), 0.5);
  ASSERT_TRUE(queue.SelectNext().ok());
  EXPECT_EQ(queue.Top().score(), 0.5 * 1.2);
}

TEST(SeedQueueTest, TiesBreakByInsertionOrder) {
  SeedQueue queue;
  queue.Push(MakeSeed(1, 2));
  queue.Push(MakeSeed(2, 2));
  EXPECT_EQ(queue.SelectNext()->id, 1);
  EXPECT_EQ(queue.SelectNext()->id, 2);
}

TEST(SeedQueueTest, LiveScoreAfterKPopsIsExactPower) {
  for (double s : {0.25, 1.0, 3.0, 17.0}) {
    SeedQueue queue;
    queue.Push(MakeSeed(1, s));
    for (int k = 1; k <= 40; ++k) {
      ASSERT_TRUE(queue.SelectNext().ok());
      EXPECT_EQ(queue.Top().score(), s * std::pow(1.2, k));
    }
  }
}

TEST(SeedQueueTest, EmptyQueueIsAnError) {
  SeedQueue queue;
  EXPECT_EQ(queue.SelectNext().status().code(),
            absl::StatusCode::kFailedPrecondition);
}

TEST(SeedQueueTest, ExtractionOrderIsDeterministic) {
  auto drain = [] {
    SeedQueue queue;
    Rng rng(4);
    for (int i = 0; i < 50; ++i) queue.Push(MakeSeed(i, UniformInt(rng, 0, 5)));
    std::vector<uint64_t> order;
    for (int i = 0; i < 200; ++i) order.push_back(queue.SelectNext()->id);
    return order;
  };
  EXPECT_EQ(drain(), drain());
}

TEST(UpdateTargetsTest, ReturnsNewlyCoveredTargets) {
  TargetLedger ledger{{"t1", "t2", "t3"}, {}};
  EXPECT_THAT(UpdateTargets({"t1", "t2", "x"}, ledger), ElementsAre("t1", "t2"));
  EXPECT_FALSE(ledger.done());
  EXPECT_THAT(UpdateTargets({"t1", "x"}, ledger), IsEmpty());
  EXPECT_THAT(UpdateTargets({"t3"}, ledger), ElementsAre("t3"));
  EXPECT_TRUE(ledger.done());
}

TEST(UpdateTargetsTest, DisjointCoverageLeavesLedgerUnchanged) {
  TargetLedger ledger{{"t"}, {}};
  EXPECT_THAT(UpdateTargets({"a", "b"}, ledger), IsEmpty());
  EXPECT_THAT(ledger.covered, IsEmpty());
}

TEST(RandomScoreTest, SeededAndRoughlyUniform) {
  Rng a(77), b(77);
  double sum = 0;
  for (int i = 0; i < 10000; ++i) {
    const double x = RandomScore(a);
    EXPECT_EQ(x, RandomScore(b));
    EXPECT_GE(x, 0.0);
    EXPECT_LT(x, 1.0);
    sum += x;
  }
  EXPECT_NEAR(sum / 10000, 0.5, 0.02);
  Rng c(1);
  EXPECT_NE(RandomScore(c), RandomScore(c));
}

}  // namespace
}  // namespace tofu
