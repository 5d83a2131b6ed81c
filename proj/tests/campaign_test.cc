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


#include "tofu/campaign.h"

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_support.h"
#include "tofu/fixtures.h"
#include "tofu/report.h"

namespace tofu {
namespace {

using ::testing::ElementsAre;
using ::testing::HasSubstr;
using testing::FixturePath;
using testing::ScratchDir;

FuzzConfig FixtureConfig(const std::string &name) {
  FuzzConfig config;
  config.fixture = name;
  config.graph_path = FixturePath(name + "/" + name + ".icfg");
  config.targets_path = FixturePath(name + "/" + name + ".targets");
  config.grammar_path = FixturePath(name + "/" + name + ".grammar");
  config.phases = PhasePlan::kFileOnly;
  config.timeout_seconds = 60;
  config.max_executions = 20000;
  return config;
}

std::string Slurp(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

// Records what the campaign did, for checking its invariants.
class Recorder : public CampaignObserver {
 public:
  void OnSelect(int phase, const Seed &seed) override {
    selections.push_back(seed.id);
    select_phases.insert(phase);
  }
  void OnExecution(int phase, uint64_t, const InputBundle &input,
                   const ExecutionResult &) override {
    if (phase == 2) phase2_argvs.insert(input.argv());
    if (phase == 1) phase1_argvs.insert(input.argv());
  }
  std::vector<uint64_t> selections;
  std::set<int> select_phases;
  std::set<std::vector<std::string>> phase1_argvs;
  std::set<std::vector<std::string>> phase2_argvs;
};

const TargetOutcome &Outcome(const CampaignReport &report,
                             const std::string &target) {
  for (const TargetOutcome &outcome : report.targets) {
    if (outcome.target == target) return outcome;
  }
  ADD_FAILURE() << "no outcome for " << target;
  static const TargetOutcome kNone;
  return kNone;
}

TEST(StaticPhaseTest, ValidateDistancesAndFiles) {
  ScratchDir a, b;
  auto first = RunStaticPhase(FixturePath("validate/validate.icfg"),
                              FixturePath("validate/validate.targets"), a.path());
  ASSERT_TRUE(first.ok()) << first.status();
  EXPECT_TRUE(first->unreachable.empty());
  const DistanceMap &map = first->maps.at("main:10");
  EXPECT_EQ(map.At("main:0"), Distance(2));
  EXPECT_EQ(map.At("main:7"), Distance(1));
  EXPECT_FALSE(map.At("print_error:0").is_finite());
  const auto oracle = testing::BellmanFordDistances(first->graph, "main:10");
  EXPECT_EQ(oracle.at("main:0"), map.At("main:0"));

  ASSERT_TRUE(RunStaticPhase(FixturePath("validate/validate.icfg"),
                             FixturePath("validate/validate.targets"), b.path())
                  .ok());
  const std::string name = DistanceFileName("main:10");
  EXPECT_FALSE(Slurp(a.path() / name).empty());
  EXPECT_EQ(Slurp(a.path() / name), Slurp(b.path() / name));
}

TEST(StaticPhaseTest, UnreachableTargetIsReported) {
  ScratchDir dir;
  const std::string graph = dir.Write("g.icfg",
                                      "main main\n"
                                      "function main entry=main:0 exits=main:1\n"
                                      "block main:0\nblock main:1\n"
                                      "edge main:0 main:1\n"
                                      "function dead entry=dead:0 exits=dead:0\n"
                                      "block dead:0\n");
  const std::string targets = dir.Write("t", "dead:0\nmain:1\n");
  auto analysis = RunStaticPhase(graph, targets);
  ASSERT_TRUE(analysis.ok()) << analysis.status();
  EXPECT_THAT(analysis->unreachable, ElementsAre("dead:0"));

  const std::string prog = dir.Write(
      "prog.sh", "#!/bin/sh\necho main:0 >> \"$TOFU_COVERAGE_FILE\"\n"
                 "echo main:1 >> \"$TOFU_COVERAGE_FILE\"\n", true);
  FuzzConfig config;
  config.program = prog;
  config.graph_path = graph;
  config.targets_path = targets;
  config.mutator = MutatorKind::kHavoc;
  config.phases = PhasePlan::kFileOnly;
  config.max_executions = 50;
  auto report = RunCampaign(config);
  ASSERT_TRUE(report.ok()) << report.status();
  EXPECT_EQ(Outcome(*report, "dead:0").status,
            TargetOutcome::Status::kStaticallyUnreachable);
  EXPECT_EQ(Outcome(*report, "main:1").status, TargetOutcome::Status::kCovered);
  EXPECT_EQ(Outcome(*report, "main:1").first_hit_execution, 1u);
  EXPECT_TRUE(report->all_reachable_covered());
  EXPECT_EQ(report->executions, 1u);
}

TEST(StaticPhaseTest, ErrorsCarryContext) {
  auto missing = RunStaticPhase("/nonexistent.icfg", "/nonexistent.targets");
  ASSERT_FALSE(missing.ok());
  EXPECT_THAT(missing.status().message(), HasSubstr("static phase"));
}

TEST(CampaignTest, ValidateStructuredFindsWitness) {
  FuzzConfig config = FixtureConfig("validate");
  config.seed = 42;
  Recorder recorder;
  auto report = RunCampaign(config, &recorder);
  ASSERT_TRUE(report.ok()) << report.status();
  const TargetOutcome &outcome = Outcome(*report, "main:10");
  ASSERT_EQ(outcome.status, TargetOutcome::Status::kCovered);
  ASSERT_NE(outcome.witness, nullptr);
  EXPECT_TRUE(testing::ValidateAccepts(outcome.witness->content()));
  auto replay = RunFixture("validate", outcome.witness->argv(),
                           outcome.witness->content());
  EXPECT_TRUE(replay->coverage.count("main:10"));
  // The campaign stops after the batch that covered the target.
  EXPECT_GE(report->executions, *outcome.first_hit_execution);
  EXPECT_LT(report->executions, *outcome.first_hit_execution + config.batch);
  EXPECT_TRUE(report->all_reachable_covered());
  EXPECT_EQ(report->phases, PhasePlan::kFileOnly);
  ASSERT_EQ(report->phase_summaries.size(), 1u);
  EXPECT_EQ(report->phase_summaries[0].name, "file");
  EXPECT_FALSE(report->frozen_argv.has_value());
}

TEST(CampaignTest, CoveringCorpusNeedsNoRounds) {
  ScratchDir corpus;
  corpus.Write("hit", "aaaaabbaaaaa");
  FuzzConfig config = FixtureConfig("validate");
  config.corpus_dir = corpus.path().string();
  auto report = RunCampaign(config);
  ASSERT_TRUE(report.ok()) << report.status();
  EXPECT_EQ(report->executions, 1u);
  EXPECT_EQ(report->phase_summaries[0].rounds, 0u);
  EXPECT_EQ(Outcome(*report, "main:10").first_hit_execution, 1u);
}

TEST(CampaignTest, UnparsableCorpusIsSkipped) {
  ScratchDir corpus;
  corpus.Write("bad", "abab");
  corpus.Write("good", "abba");
  FuzzConfig config = FixtureConfig("validate");
  config.corpus_dir = corpus.path().string();
  config.max_executions = 1;
  auto report = RunCampaign(config);
  ASSERT_TRUE(report.ok()) << report.status();
  EXPECT_EQ(report->executions, 1u);
}

TEST(CampaignTest, ExecutionBudgetIsRespected) {
  FuzzConfig config = FixtureConfig("ladder");
  config.max_executions = 300;
  config.mode = GuidanceMode::kUnguided;
  config.seed = 5;
  auto report = RunCampaign(config);
  ASSERT_TRUE(report.ok()) << report.status();
  EXPECT_LE(report->executions, 300u);
  if (!report->all_reachable_covered()) EXPECT_EQ(report->executions, 300u);
}

TEST(CampaignTest, UnguidedSelectsDifferently) {
  FuzzConfig config = FixtureConfig("ladder");
  config.max_executions = 2000;
  config.batch = 20;
  Recorder guided, unguided;
  ASSERT_TRUE(RunCampaign(config, &guided).ok());
  config.mode = GuidanceMode::kUnguided;
  ASSERT_TRUE(RunCampaign(config, &unguided).ok());
  ASSERT_FALSE(guided.selections.empty());
  ASSERT_FALSE(unguided.selections.empty());
  EXPECT_NE(guided.selections, unguided.selections);
}

TEST(CampaignTest, SameSeedSameSelections) {
  FuzzConfig config = FixtureConfig("ladder");
  config.max_executions = 1000;
  config.seed = 3;
  Recorder a, b;
  auto ra = RunCampaign(config, &a);
  auto rb = RunCampaign(config, &b);
  ASSERT_TRUE(ra.ok() && rb.ok());
  EXPECT_EQ(a.selections, b.selections);
  EXPECT_EQ(ra->executions, rb->executions);
}

TEST(CampaignTest, HavocWithoutGrammarStartsFromEmpty) {
  FuzzConfig config = FixtureConfig("ladder");
  config.grammar_path.reset();
  config.mutator = MutatorKind::kHavoc;
  config.max_executions = 500;
  Recorder recorder;
  auto report = RunCampaign(config, &recorder);
  ASSERT_TRUE(report.ok()) << report.status();
  EXPECT_LE(report->executions, 500u);
  EXPECT_GT(report->phase_summaries[0].rounds, 0u);
}

TEST(StagedCampaignTest, FlagdemoFreezesBlankLineFlag) {
  FuzzConfig config = FixtureConfig("flagdemo");
  config.cmdspec_path = FixturePath("flagdemo/flagdemo.cmdspec");
  config.phases = PhasePlan::kStaged;
  config.max_executions = 2000;
  config.phase1_max_executions = 500;
  config.seed = 1;
  Recorder recorder;
  auto report = RunCampaign(config, &recorder);
  ASSERT_TRUE(report.ok()) << report.status();
  ASSERT_FALSE(report->phase_summaries.empty());
  EXPECT_EQ(report->phase_summaries[0].name, "cmdline");
  ASSERT_TRUE(report->frozen_argv.has_value());
  EXPECT_THAT(*report->frozen_argv, ::testing::Contains("-B"));
  EXPECT_EQ(report->frozen_argv->back(), "@@");
  EXPECT_THAT(report->phase_summaries[0].best_argv, ::testing::Contains("-B"));
  EXPECT_TRUE(report->all_reachable_covered());
  // Phase 1 covered the target, so there is no phase 2.
  EXPECT_EQ(report->phase_summaries.size(), 1u);
  EXPECT_TRUE(recorder.phase2_argvs.empty());
}

TEST(StagedCampaignTest, PhaseTwoUsesFrozenArgv) {
  ScratchDir dir;
  const std::string spec = dir.Write(
      "spec", "--verbose|optional|no option\n--level|optional|int|0,3\n");
  FuzzConfig config = FixtureConfig("validate");
  config.cmdspec_path = spec;
  config.phases = PhasePlan::kStaged;
  config.max_executions = 20000;
  config.phase1_max_executions = 300;
  config.seed = 8;
  Recorder recorder;
  auto report = RunCampaign(config, &recorder);
  ASSERT_TRUE(report.ok()) << report.status();
  ASSERT_EQ(report->phase_summaries.size(), 2u);
  EXPECT_EQ(report->phase_summaries[0].executions, 300u);
  EXPECT_EQ(report->phase_summaries[1].name, "file");
  EXPECT_GT(recorder.phase1_argvs.size(), 1u);
  ASSERT_EQ(recorder.phase2_argvs.size(), 1u);
  EXPECT_EQ(*recorder.phase2_argvs.begin(), *report->frozen_argv);
  const TargetOutcome &outcome = Outcome(*report, "main:10");
  EXPECT_EQ(outcome.status, TargetOutcome::Status::kCovered);
  EXPECT_EQ(outcome.phase, 2);
}

TEST(StagedCampaignTest, DegradesWithoutCmdspec) {
  FuzzConfig config = FixtureConfig("validate");
  config.phases = PhasePlan::kStaged;
  config.max_executions = 200;
  auto report = RunCampaign(config);
  ASSERT_TRUE(report.ok()) << report.status();
  EXPECT_EQ(report->phases, PhasePlan::kFileOnly);
  EXPECT_FALSE(report->frozen_argv.has_value());
}

TEST(StagedCampaignTest, DegradesWithoutFileDimension) {
  FuzzConfig config = FixtureConfig("flagdemo");
  config.grammar_path.reset();
  config.cmdspec_path = FixturePath("flagdemo/flagdemo.cmdspec");
  config.phases = PhasePlan::kCmdlineOnly;
  config.max_executions = 500;
  auto report = RunCampaign(config);
  ASSERT_TRUE(report.ok()) << report.status();
  EXPECT_EQ(report->phases, PhasePlan::kCmdlineOnly);
  // With one file operand the second file reads as empty, so -B reaches the
  // blank-line loop header but never a blank line.
  EXPECT_LE(report->phase_summaries[0].best_score, 2);
}

TEST(StagedCampaignTest, CmdlineOnlyNeedsSpec) {
  FuzzConfig config = FixtureConfig("validate");
  config.phases = PhasePlan::kCmdlineOnly;
  config.max_executions = 10;
  auto report = RunCampaign(config);
  ASSERT_FALSE(report.ok());
  EXPECT_EQ(report.status().code(), absl::StatusCode::kInvalidArgument);
}

TEST(FuzzConfigTest, Validation) {
  FuzzConfig config = FixtureConfig("validate");
  EXPECT_TRUE(config.Validate().ok());
  FuzzConfig both = config;
  both.program = "/bin/true";
  EXPECT_FALSE(both.Validate().ok());
  FuzzConfig batch = config;
  batch.batch = 0;
  EXPECT_FALSE(batch.Validate().ok());
  FuzzConfig timeout = config;
  timeout.timeout_seconds = 0;
  EXPECT_FALSE(timeout.Validate().ok());
  FuzzConfig grammarless = config;
  grammarless.grammar_path.reset();
  EXPECT_FALSE(grammarless.Validate().ok());
  grammarless.mutator = MutatorKind::kHavoc;
  EXPECT_TRUE(grammarless.Validate().ok());
}

TEST(FuzzConfigTest, EnumNames) {
  EXPECT_EQ(*ParseGuidanceMode("unguided"), GuidanceMode::kUnguided);
  EXPECT_EQ(*ParseMutatorKind("havoc"), MutatorKind::kHavoc);
  EXPECT_EQ(*ParsePhasePlan("cmdline-only"), PhasePlan::kCmdlineOnly);
  EXPECT_FALSE(ParsePhasePlan("both").ok());
  EXPECT_EQ(PhasePlanName(PhasePlan::kFileOnly), "file-only");
  EXPECT_EQ(TargetStatusName(TargetOutcome::Status::kStaticallyUnreachable),
            "statically-unreachable");
}

}  // namespace
}  // namespace tofu
