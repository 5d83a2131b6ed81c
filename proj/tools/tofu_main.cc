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

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "glog/logging.h"
#include "tofu/campaign.h"
#include "tofu/distance.h"
#include "tofu/icfg.h"
#include "tofu/report.h"

namespace {

int RunDist(const std::string &graph, const std::string &targets,
            const std::string &out) {
  absl::StatusOr<tofu::StaticAnalysis> analysis =
      tofu::RunStaticPhase(graph, targets, out);
  if (!analysis.ok()) {
    std::cerr << analysis.status().message() << "\n";
    return 2;
  }
  for (const std::string &target : analysis->targets.targets) {
    std::cout << (out.empty() ? "" : out + "/") << tofu::DistanceFileName(target)
              << (analysis->unreachable.contains(target)
                      ? "  (statically unreachable)"
                      : "")
              << "\n";
  }
  return 0;
}

int RunFuzz(const tofu::FuzzConfig &config) {
  absl::StatusOr<tofu::CampaignReport> report = tofu::RunCampaign(config);
  if (!report.ok()) {
    std::cerr << report.status().message() << "\n";
    return 2;
  }
  if (absl::Status s = tofu::EmitReport(*report, config.out_dir); !s.ok()) {
    std::cerr << s.message() << "\n";
    return 2;
  }
  std::ifstream summary(config.out_dir / "summary.txt");
  std::cout << summary.rdbuf();
  return report->all_reachable_covered() ? 0 : 1;
}

int RunReplay(const std::string &witness_path, const std::string &graph_path,
              double timeout) {
  absl::StatusOr<tofu::Witness> witness = tofu::ReadWitness(witness_path);
  if (!witness.ok()) {
    std::cerr << witness.status().message() << "\n";
    return 2;
  }
  absl::StatusOr<tofu::Icfg> icfg = tofu::LoadIcfg(graph_path);
  if (!icfg.ok()) {
    std::cerr << icfg.status().message() << "\n";
    return 2;
  }
  if (!icfg->HasBlock(witness->target)) {
    std::cerr << "target " << witness->target << " is not in " << graph_path
              << "\n";
    return 2;
  }
  absl::StatusOr<tofu::ExecutionResult> result = tofu::ReplayWitness(
      *witness,
      std::chrono::milliseconds(static_cast<int64_t>(timeout * 1000)));
  if (!result.ok()) {
    std::cerr << result.status().message() << "\n";
    return 2;
  }
  const bool hit = result->coverage.contains(witness->target);
  std::cout << witness->target << ": " << (hit ? "reproduced" : "NOT reproduced")
            << " (" << result->coverage.size() << " blocks, "
            << tofu::ExitName(result->exit) << ")\n";
  return hit ? 0 : 1;
}

}  // namespace

int main(int argc, char **argv) {
  google::InitGoogleLogging(argv[0]);
  FLAGS_logtostderr = true;

  CLI::App app{"tofu: directed greybox fuzzing toward target basic blocks"};
  app.require_subcommand(1);

  std::string graph, targets, out;
  CLI::App *dist = app.add_subcommand("dist", "Compute per-target distance files");
  dist->add_option("--graph", graph, "Interprocedural CFG file")->required();
  dist->add_option("--targets", targets, "Target block list")->required();
  dist->add_option("--out", out, "Output directory")->required();

  tofu::FuzzConfig config;
  std::string grammar, cmdspec, corpus, out_dir;
  std::string mode = "guided", mutator = "structured", phases = "staged";
  CLI::App *fuzz = app.add_subcommand("fuzz", "Run a directed fuzzing campaign");
  fuzz->add_option("--graph", config.graph_path)->required();
  fuzz->add_option("--targets", config.targets_path)->required();
  fuzz->add_option("--grammar", grammar, "Input-file grammar");
  fuzz->add_option("--cmdspec", cmdspec, "Command-line flag spec");
  fuzz->add_option("--corpus", corpus, "Directory of initial input files");
  fuzz->add_option("--program", config.program,
                   "Instrumented executable under test");
  fuzz->add_option("--fixture", config.fixture, "Built-in fixture program");
  fuzz->add_option("--timeout", config.timeout_seconds, "Campaign seconds")
      ->required();
  fuzz->add_option("--per-exec-timeout", config.per_exec_timeout_seconds);
  fuzz->add_option("--phase1-timeout", config.phase1_timeout_seconds,
                   "Command-line phase seconds (default: half)");
  fuzz->add_option("--max-execs", config.max_executions,
                   "Execution budget, 0 for none");
  fuzz->add_option("--phase1-max-execs", config.phase1_max_executions);
  fuzz->add_option("--batch", config.batch)->capture_default_str();
  fuzz->add_option("--parallelism", config.parallelism)->capture_default_str();
  fuzz->add_option("--seed", config.seed)->capture_default_str();
  fuzz->add_option("--max-depth", config.mutator_config.max_depth)
      ->capture_default_str();
  fuzz->add_option("--mode", mode)
      ->check(CLI::IsMember({"guided", "unguided"}))
      ->capture_default_str();
  fuzz->add_option("--mutator", mutator)
      ->check(CLI::IsMember({"structured", "havoc"}))
      ->capture_default_str();
  fuzz->add_option("--phases", phases)
      ->check(CLI::IsMember({"staged", "cmdline-only", "file-only"}))
      ->capture_default_str();
  fuzz->add_option("--out", out_dir)->required();

  std::string witness;
  double replay_timeout = 5;
  CLI::App *replay = app.add_subcommand("replay", "Rerun a stored witness");
  replay->add_option("--witness", witness)->required();
  replay->add_option("--graph", graph)->required();
  replay->add_option("--timeout", replay_timeout)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    // --help and friends exit 0; usage errors share the error exit code.
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (dist->parsed()) return RunDist(graph, targets, out);
  if (replay->parsed()) return RunReplay(witness, graph, replay_timeout);

  if (!grammar.empty()) config.grammar_path = grammar;
  if (!cmdspec.empty()) config.cmdspec_path = cmdspec;
  if (!corpus.empty()) config.corpus_dir = corpus;
  config.out_dir = out_dir;
  config.mode = *tofu::ParseGuidanceMode(mode);
  config.mutator = *tofu::ParseMutatorKind(mutator);
  config.phases = *tofu::ParsePhasePlan(phases);
  return RunFuzz(config);
}
