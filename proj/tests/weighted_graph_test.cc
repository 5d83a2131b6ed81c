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
#include <set>

#include "glog/logging.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_support.h"
#include "tofu/post_dominators.h"

namespace tofu {
namespace {

Distance WeightOf(const WeightedGraph &g, absl::string_view src,
                  absl::string_view dst, EdgeKind kind) {
  const size_t s = *g.IndexOf(src);
  const size_t d = *g.IndexOf(dst);
  for (const WeightedArc &arc : g.arcs()) {
    if (arc.src == s && arc.dst == d && arc.kind == kind) return arc.weight;
  }
  ADD_FAILURE() << "no " << EdgeKindName(kind) << " arc " << src << " -> "
                << dst;
  return Distance::Infinite();
}

bool HasArc(const WeightedGraph &g, absl::string_view src,
            absl::string_view dst, EdgeKind kind) {
  const size_t s = *g.IndexOf(src);
  const size_t d = *g.IndexOf(dst);
  for (const WeightedArc &arc : g.arcs()) {
    if (arc.src == s && arc.dst == d && arc.kind == kind) return true;
  }
  return false;
}

Icfg MustParse(absl::string_view text) {
  absl::StatusOr<Icfg> icfg = ParseIcfg(text);
  CHECK(icfg.ok()) << icfg.status();
  return *std::move(icfg);
}

TEST(WeightedGraphTest, DiamondBranchesCostOneShortcutCostsZero) {
  Icfg icfg = MustParse(R"(
main f
function f signature=v address_taken=0 entry=a exits=d
block a
block b
block c
block d
edge a b
edge a c
edge b d
edge c d
)");
  WeightedGraph g = BuildWeightedGraph(icfg, TargetSpec{{"b"}});
  EXPECT_EQ(WeightOf(g, "a", "b", EdgeKind::kIntra), Distance(1));
  EXPECT_EQ(WeightOf(g, "a", "c", EdgeKind::kIntra), Distance(1));
  EXPECT_EQ(WeightOf(g, "b", "d", EdgeKind::kIntra), Distance(0));
  EXPECT_EQ(WeightOf(g, "a", "d", EdgeKind::kPostDom), Distance(0));
  // No arc ever leads to the synthetic exit.
  EXPECT_FALSE(g.IndexOf(kVirtualExit).has_value());
}

TEST(WeightedGraphTest, CallIntoFunctionThatCannotReachTargetIsPruned) {
  Icfg icfg = MustParse(R"(
main main
function main signature=v address_taken=0 entry=m:0 exits=m:2
block m:0
block m:1
block m:2
edge m:0 m:1
edge m:1 m:2
call m:0 direct=g return=m:1
call m:1 direct=t return=m:2
function g signature=v address_taken=0 entry=g:0 exits=g:0
block g:0
function t signature=v address_taken=0 entry=t:0 exits=t:1
block t:0
block t:1
edge t:0 t:1
)");
  WeightedGraph g = BuildWeightedGraph(icfg, TargetSpec{{"t:1"}});
  EXPECT_EQ(WeightOf(g, "m:0", "g:0", EdgeKind::kCall), Distance::Infinite());
  EXPECT_EQ(WeightOf(g, "m:1", "t:0", EdgeKind::kCall), Distance(0));
  EXPECT_EQ(WeightOf(g, "g:0", "m:1", EdgeKind::kReturn), Distance(0));
}

TEST(WeightedGraphTest, IndirectSiteWithTwoCalleesOnlyOneRelevant) {
  Icfg icfg = MustParse(R"(
main main
function main signature=v address_taken=0 entry=m:0 exits=m:1
block m:0
block m:1
edge m:0 m:1
call m:0 indirect=i32(i32) return=m:1
function g signature=i32(i32) address_taken=1 entry=g:0 exits=g:1
block g:0
block g:1
edge g:0 g:1
function h signature=i32(i32) address_taken=1 entry=h:0 exits=h:0
block h:0
)");
  WeightedGraph g = BuildWeightedGraph(icfg, TargetSpec{{"g:1"}});
  EXPECT_EQ(WeightOf(g, "m:0", "g:0", EdgeKind::kCall), Distance(1));
  EXPECT_EQ(WeightOf(g, "m:0", "h:0", EdgeKind::kCall), Distance::Infinite());
}

TEST(WeightedGraphTest, CallerUnreachableFromMainIsPruned) {
  Icfg icfg = MustParse(R"(
main main
function main signature=v address_taken=0 entry=m:0 exits=m:0
block m:0
function orphan signature=v address_taken=0 entry=o:0 exits=o:1
block o:0
block o:1
edge o:0 o:1
call o:0 direct=t return=o:1
function t signature=v address_taken=0 entry=t:0 exits=t:0
block t:0
)");
  WeightedGraph g = BuildWeightedGraph(icfg, TargetSpec{{"t:0"}});
  EXPECT_EQ(WeightOf(g, "o:0", "t:0", EdgeKind::kCall), Distance::Infinite());
}

TEST(WeightedGraphTest, RepeatedDirectCalleeCountsOnce) {
  Icfg icfg = MustParse(R"(
main main
function main signature=v address_taken=0 entry=m:0 exits=m:1
block m:0
block m:1
edge m:0 m:1
call m:0 direct=t,t return=m:1
function t signature=v address_taken=0 entry=t:0 exits=t:0
block t:0
)");
  WeightedGraph g = BuildWeightedGraph(icfg, TargetSpec{{"t:0"}});
  EXPECT_EQ(WeightOf(g, "m:0", "t:0", EdgeKind::kCall), Distance(0));
}

// Functions from which a target-holding function is reachable in the call
// graph, found by brute-force search over call sites.
std::set<std::string> CanReachTargetFunction(const Icfg &icfg,
                                             const TargetSpec &targets) {
  std::set<std::string> holders;
  for (const auto &t : targets.targets) holders.insert(icfg.FunctionOfBlock(t)->name);
  std::set<std::string> result;
  for (const FunctionDef &f : icfg.functions()) {
    std::set<std::string> seen{f.name};
    std::deque<std::string> work{f.name};
    while (!work.empty()) {
      std::string cur = work.front();
      work.pop_front();
      if (holders.contains(cur)) {
        result.insert(f.name);
        break;
      }
      for (const CallSite &site : icfg.call_sites()) {
        if (icfg.FunctionOfBlock(site.block)->name != cur) continue;
        for (const std::string &callee : site.callees) {
          if (seen.insert(callee).second) work.push_back(callee);
        }
      }
    }
  }
  return result;
}

TEST(WeightedGraphTest, PropertiesOnRandomPrograms) {
  Rng rng(99);
  for (int i = 0; i < 200; ++i) {
    testing::RandomProgram program = testing::RandomIcfg(rng);
    absl::StatusOr<Icfg> parsed = Icfg::Create(program.parts);
    ASSERT_TRUE(parsed.ok()) << parsed.status();
    const Icfg icfg = ResolveIndirectCalls(*parsed);
    const TargetSpec targets{program.targets};
    const WeightedGraph g = BuildWeightedGraph(icfg, targets);
    EXPECT_EQ(g.arcs(), BuildWeightedGraph(icfg, targets).arcs());

    // Intra weights follow the successor count.
    for (const WeightedArc &arc : g.arcs()) {
      if (arc.kind != EdgeKind::kIntra) continue;
      const size_t fanout = icfg.IntraSuccessors(g.nodes()[arc.src]).size();
      EXPECT_EQ(arc.weight, Distance(fanout > 1 ? 1 : 0));
    }

    // One zero-weight postdom arc per block whose ipdom is a real block.
    for (const FunctionDef &f : icfg.functions()) {
      auto ipdom = ComputeImmediatePostDominators(icfg, f.name);
      ASSERT_TRUE(ipdom.ok());
      for (const std::string &block : f.blocks) {
        int arcs = 0;
        for (const WeightedArc &arc : g.arcs()) {
          if (arc.kind == EdgeKind::kPostDom && g.nodes()[arc.src] == block) {
            ++arcs;
            EXPECT_EQ(arc.weight, Distance(0));
            EXPECT_EQ(g.nodes()[arc.dst], ipdom->at(block));
          }
        }
        const bool real = ipdom->contains(block) && ipdom->at(block) != kVirtualExit;
        EXPECT_EQ(arcs, real ? 1 : 0) << block;
      }
    }

    // Pruned call arcs never lead toward a target function, or start in a
    // function main cannot call.
    const std::set<std::string> reach = CanReachTargetFunction(icfg, targets);
    std::set<std::string> from_main;
    {
      std::deque<std::string> work{icfg.main()};
      from_main.insert(icfg.main());
      while (!work.empty()) {
        std::string cur = work.front();
        work.pop_front();
        for (const CallSite &site : icfg.call_sites()) {
          if (icfg.FunctionOfBlock(site.block)->name != cur) continue;
          for (const std::string &callee : site.callees) {
            if (from_main.insert(callee).second) work.push_back(callee);
          }
        }
      }
    }
    for (const WeightedArc &arc : g.arcs()) {
      if (arc.kind != EdgeKind::kCall) continue;
      const std::string caller = icfg.FunctionOfBlock(g.nodes()[arc.src])->name;
      const std::string callee = icfg.FunctionOfBlock(g.nodes()[arc.dst])->name;
      const bool relevant = reach.contains(callee) && from_main.contains(caller);
      EXPECT_EQ(arc.weight.is_finite(), relevant)
          << caller << " -> " << callee;
    }
  }
}

}  // namespace
}  // namespace tofu
