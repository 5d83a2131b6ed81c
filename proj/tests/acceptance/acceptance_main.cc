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


// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "glog/logging.h"
#include "test_support.h"
#include "tofu/campaign.h"
#include "tofu/distance.h"
#include "tofu/fixtures.h"
#include "tofu/grammar.h"
#include "tofu/post_dominators.h"
#include "tofu/report.h"
#include "tofu/scheduler.h"

namespace tofu {
namespace {

using testing::FixturePath;

constexpr int kCampaigns = 20;

struct Verdict {
  bool pass = false;
  std::string detail;
};

// Every campaign report produced along the way, for the witness check.
std::vector<CampaignReport> &AllReports() {
  static auto *reports = new std::vector<CampaignReport>();
  return *reports;
}

FuzzConfig FixtureConfig(const std::string &name, uint64_t seed) {
  FuzzConfig config;
  config.fixture = name;
  config.graph_path = FixturePath(name + "/" + name + ".icfg");
  config.targets_path = FixturePath(name + "/" + name + ".targets");
  config.grammar_path = FixturePath(name + "/" + name + ".grammar");
  config.phases = PhasePlan::kFileOnly;
  config.timeout_seconds = 60;
  config.seed = seed;
  return config;
}

absl::StatusOr<CampaignReport> Campaign(const FuzzConfig &config) {
  absl::StatusOr<CampaignReport> report = RunCampaign(config);
  if (report.ok()) AllReports().push_back(*report);
  return report;
}

// Executions to first cover `target`; +inf when missed.
double ExecutionsToTarget(const CampaignReport &report, const std::string &target) {
  for (const TargetOutcome &outcome : report.targets) {
    if (outcome.target == target && outcome.first_hit_execution) {
      return static_cast<double>(*outcome.first_hit_execution);
    }
  }
  return std::numeric_limits<double>::infinity();
}

double Median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const size_t n = values.size();
  return n % 2 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2;
}

std::string Num(double v) {
  return std::isinf(v) ? "inf" : absl::StrFormat("%.1f", v);
}

Verdict DistanceOracle() {
  Rng rng(20260101);
  int graphs = 0, mismatches = 0;
  for (; graphs < 200; ++graphs) {
    testing::RandomProgram program = testing::RandomIcfg(rng, 60, 6);
    absl::StatusOr<Icfg> icfg = Icfg::Create(program.parts);
    if (!icfg.ok()) return {false, icfg.status().ToString()};
    const TargetSpec targets{program.targets};
    const WeightedGraph graph = BuildWeightedGraph(ResolveIndirectCalls(*icfg), targets);
    const DistanceMaps maps = ComputeDistances(graph, targets);
    for (const std::string &t : targets.targets) {
      for (const auto &[block, want] : testing::BellmanFordDistances(graph, t)) {
        if (!(maps.at(t).At(block) == want)) ++mismatches;
      }
    }
  }
  return {mismatches == 0,
          absl::StrCat(graphs, " graphs, ", mismatches, " mismatching distances")};
}

Verdict PostDominatorOracle() {
  Rng rng(777);
  int checked = 0, skipped = 0, mismatches = 0;
  while (checked < 100) {
    absl::StatusOr<Icfg> icfg = Icfg::Create(testing::RandomCfg(rng, 30));
    if (!icfg.ok()) return {false, icfg.status().ToString()};
    auto oracle = testing::PathEnumerationIpdoms(*icfg, "f");
    if (!oracle) {
      ++skipped;
      continue;
    }
    auto ipdom = ComputeImmediatePostDominators(*icfg, "f");
    if (!ipdom.ok() || *ipdom != *oracle) ++mismatches;
    ++checked;
  }
  return {mismatches == 0, absl::StrCat(checked, " CFGs, ", mismatches,
                                        " mismatches, ", skipped,
                                        " skipped for path explosion")};
}

Verdict SchedulerStatistics() {
  Rng rng(4242);
  const CoverageSet coverage = {"main:0", "main:1"};
  int accepted = 0;
  constexpr int kTrials = 10000;
  for (int i = 0; i < kTrials; ++i) {
    CoverageDictionary dict;
    for (int k = 0; k < 3; ++k) dict.Increment(CoverageKey(coverage));
    SeedQueue queue;
    Seed seed;
    seed.id = i;
    seed.base_score = 1;
    seed.coverage = std::make_shared<const CoverageSet>(coverage);
    accepted += TryInsert(std::move(seed), dict, queue, rng);
  }
  const double rate = static_cast<double>(accepted) / kTrials;

  bool exact = true;
  for (double s : {0.25, 1.0, 3.0, 7.0, 12.5}) {
    SeedQueue queue;
    Seed seed;
    seed.base_score = s;
    seed.coverage = std::make_shared<const CoverageSet>(coverage);
    queue.Push(seed);
    for (int k = 1; k <= 40; ++k) {
      if (!queue.SelectNext().ok()) return {false, "queue unexpectedly empty"};
      exact &= queue.Top().score() == s * std::pow(1.2, k);
    }
  }
  return {rate >= 0.24 && rate <= 0.26 && exact,
          absl::StrFormat("acceptance %.4f at n=3; s*1.2^k exact for k<=40: %s",
                          rate, exact ? "yes" : "no")};
}

constexpr absl::string_view kSecondGrammar = R"(
start Config
Config  -> Header Section*
Header  -> "version " int(0,99) "\n"
Section -> "[" Name "]\n" Entry* | "ports " count(4) ":" Port+ "\n"
Name    -> class([a-z]) class([a-z0-9])*
Entry   -> Name "=" Value "\n"
Value   -> int(-5,500) | oneof("on","off") | "'" Name? "'"
Port    -> " " int(1,65535)
)";

Verdict MutationClosure() {
  absl::StatusOr<GrammarSpec> palindromes =
      LoadGrammar(FixturePath("validate/validate.grammar"));
  absl::StatusOr<GrammarSpec> config = ParseGrammar(kSecondGrammar);
  if (!palindromes.ok() || !config.ok()) return {false, "grammar failed to load"};
  MutatorConfig mc;
  int mutants = 0, failures = 0;
  for (const GrammarSpec *spec : {&*palindromes, &*config}) {
    Rng rng(99);
    SyntaxTree tree = Generate(*spec, mc, rng);
    for (int i = 0; i < 5000; ++i, ++mutants) {
      SyntaxTree mutant = Mutate(tree, *spec, mc, rng);
      absl::StatusOr<SyntaxTree> reparsed = Parse(Render(mutant), *spec);
      if (!reparsed.ok() || Render(*reparsed) != Render(mutant)) ++failures;
      // Walk: keep mutating the mutant, restart from fresh trees now and then.
      tree = i % 50 == 49 ? Generate(*spec, mc, rng) : std::move(mutant);
    }
  }
  return {failures == 0,
          absl::StrCat(mutants, " mutants over 2 grammars, ", failures,
                       " failed to re-parse")};
}

Verdict ValidateEndToEnd() {
  std::vector<double> executions;
  int succeeded = 0;
  for (int seed = 1; seed <= kCampaigns; ++seed) {
    auto report = Campaign(FixtureConfig("validate", seed));
    if (!report.ok()) return {false, report.status().ToString()};
    const double e = ExecutionsToTarget(*report, "main:10");
    executions.push_back(e);
    succeeded += std::isfinite(e);
  }
  const double median = Median(executions);
  return {median <= 5000 && succeeded >= 18,
          absl::StrCat("median executions ", Num(median), ", ", succeeded, "/",
                       kCampaigns, " covered within 60 s")};
}

Verdict HavocAblation() {
  int structured = 0, havoc = 0;
  for (int seed = 1; seed <= kCampaigns; ++seed) {
    FuzzConfig config = FixtureConfig("validate", seed);
    config.max_executions = 5000;
    auto s = Campaign(config);
    config.mutator = MutatorKind::kHavoc;
    auto h = Campaign(config);
    if (!s.ok() || !h.ok()) return {false, "campaign failed"};
    structured += s->all_reachable_covered();
    havoc += h->all_reachable_covered();
  }
  return {havoc < structured,
          absl::StrCat("validate within 5000 executions: structured ",
                       structured, "/", kCampaigns, ", havoc ", havoc, "/",
                       kCampaigns)};
}

Verdict GuidanceAblation() {
  std::vector<double> guided, unguided;
  for (int seed = 1; seed <= kCampaigns; ++seed) {
    FuzzConfig config = FixtureConfig("ladder", seed);
    config.max_executions = 200000;
    auto g = Campaign(config);
    config.mode = GuidanceMode::kUnguided;
    auto u = Campaign(config);
    if (!g.ok() || !u.ok()) return {false, "campaign failed"};
    guided.push_back(ExecutionsToTarget(*g, "main:5"));
    unguided.push_back(ExecutionsToTarget(*u, "main:5"));
  }
  const double mg = Median(guided), mu = Median(unguided);
  return {mu > mg, absl::StrCat("ladder median executions: guided ", Num(mg),
                                ", unguided ", Num(mu))};
}

Verdict StagedFlagdemo() {
  int found = 0;
  for (int seed = 1; seed <= kCampaigns; ++seed) {
    FuzzConfig config = FixtureConfig("flagdemo", seed);
    config.cmdspec_path = FixturePath("flagdemo/flagdemo.cmdspec");
    config.phases = PhasePlan::kStaged;
    config.phase1_max_executions = 500;
    config.max_executions = 5000;
    auto report = Campaign(config);
    if (!report.ok()) return {false, report.status().ToString()};
    const PhaseSummary &phase1 = report->phase_summaries.front();
    const auto &argv = phase1.best_argv;
    if (phase1.name == "cmdline" && phase1.executions <= 500 &&
        std::find(argv.begin(), argv.end(), "-B") != argv.end()) {
      ++found;
    }
  }

  auto analysis = RunStaticPhase(FixturePath("flagdemo/flagdemo.icfg"),
                                 FixturePath("flagdemo/flagdemo.targets"));
  if (!analysis.ok()) return {false, analysis.status().ToString()};
  TargetLedger ledger;
  ledger.all = {"diff_2_files:5"};
  const std::string left = FixturePath("flagdemo/corpus/left.txt");
  const std::string input = "foo bar\nbaz\n";
  const double without = ScoreTrace(
      RunFixture("flagdemo", {left, "@@"}, input)->coverage, analysis->maps, ledger);
  const double with = ScoreTrace(
      RunFixture("flagdemo", {"-B", left, "@@"}, input)->coverage, analysis->maps,
      ledger);
  return {found >= 19 && with < without,
          absl::StrCat(found, "/", kCampaigns,
                       " phase-1 runs chose -B within 500 executions; score ",
                       Num(with), " with -B vs ", Num(without), " without")};
}

Verdict Reproducibility() {
  std::vector<FuzzConfig> configs = {FixtureConfig("validate", 42),
                                     FixtureConfig("ladder", 7)};
  configs[1].max_executions = 5000;
  configs.push_back(FixtureConfig("flagdemo", 3));
  configs.back().cmdspec_path = FixturePath("flagdemo/flagdemo.cmdspec");
  configs.back().phases = PhasePlan::kStaged;
  configs.back().max_executions = 3000;
  FuzzConfig havoc = FixtureConfig("validate", 5);
  havoc.mutator = MutatorKind::kHavoc;
  havoc.max_executions = 3000;
  configs.push_back(havoc);

  int identical = 0;
  for (const FuzzConfig &config : configs) {
    testing::ScratchDir a, b;
    auto ra = Campaign(config);
    auto rb = Campaign(config);
    if (!ra.ok() || !rb.ok()) return {false, "campaign failed"};
    if (!EmitReport(*ra, a.path()).ok() || !EmitReport(*rb, b.path()).ok()) {
      return {false, "cannot write reports"};
    }
    auto slurp = [](const std::filesystem::path &p) {
      std::ifstream in(p, std::ios::binary);
      std::ostringstream out;
      out << in.rdbuf();
      return out.str();
    };
    const std::string ja = slurp(a.path() / "report.json");
    identical += !ja.empty() && ja == slurp(b.path() / "report.json");
  }
  return {identical == static_cast<int>(configs.size()),
          absl::StrCat(identical, "/", configs.size(),
                       " config pairs produced byte-identical report.json")};
}

Verdict WitnessReplay() {
  int witnesses = 0, reproduced = 0;
  for (const CampaignReport &report : AllReports()) {
    testing::ScratchDir dir;
    if (!EmitReport(report, dir.path()).ok()) return {false, "cannot write report"};
    for (const TargetOutcome &outcome : report.targets) {
      if (outcome.status != TargetOutcome::Status::kCovered) continue;
      ++witnesses;
      auto witness = ReadWitness(dir.path() / "witnesses" /
                                 (WitnessStem(outcome.target) + ".json"));
      if (!witness.ok()) continue;
      auto result = ReplayWitness(*witness);
      reproduced += result.ok() && result->coverage.contains(outcome.target);
    }
  }
  return {witnesses > 0 && reproduced == witnesses,
          absl::StrCat(reproduced, "/", witnesses, " witnesses from ",
                       AllReports().size(), " reports replayed to their target")};
}

}  // namespace
}  // namespace tofu

int main(int argc, char **argv) {
  google::InitGoogleLogging(argv[0]);
  // Corpus and degradation warnings are expected here.
  FLAGS_minloglevel = google::GLOG_ERROR;

  struct Criterion {
    const char *name;
    std::function<tofu::Verdict()> run;
    double time_limit_seconds;
  };
  const std::vector<Criterion> criteria = {
      {"distance oracle", tofu::DistanceOracle, 30},
      {"post-dominator oracle", tofu::PostDominatorOracle, 30},
      {"scheduler statistics", tofu::SchedulerStatistics, 0},
      {"structured-mutation closure", tofu::MutationClosure, 60},
      {"validate end-to-end", tofu::ValidateEndToEnd, 0},
      {"ablation: havoc vs structured", tofu::HavocAblation, 0},
      {"ablation: unguided vs guided", tofu::GuidanceAblation, 0},
      {"staged fuzzing on flagdemo", tofu::StagedFlagdemo, 0},
      {"reproducibility", tofu::Reproducibility, 0},
      // Runs last so it sees every report produced above.
      {"witness replay", tofu::WitnessReplay, 0},
  };
  int failed = 0;
  for (const Criterion &c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    tofu::Verdict verdict = c.run();
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (c.time_limit_seconds > 0 && seconds >= c.time_limit_seconds) {
      verdict.pass = false;
      verdict.detail += absl::StrFormat(" (over the %.0f s limit)",
                                        c.time_limit_seconds);
    }
    failed += !verdict.pass;
    std::printf("%s %s: %s [%.1f s]\n", verdict.pass ? "PASS" : "FAIL", c.name,
                verdict.detail.c_str(), seconds);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
