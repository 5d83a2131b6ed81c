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

#ifndef TOFU_CAMPAIGN_H_
#define TOFU_CAMPAIGN_H_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "tofu/cmdline.h"
#include "tofu/distance.h"
#include "tofu/grammar.h"
#include "tofu/harness.h"
#include "tofu/icfg.h"
#include "tofu/input_bundle.h"
#include "tofu/scheduler.h"
#include "tofu/weighted_graph.h"

namespace tofu {

enum class GuidanceMode { kGuided, kUnguided };
enum class MutatorKind { kStructured, kHavoc };
enum class PhasePlan { kStaged, kCmdlineOnly, kFileOnly };

absl::string_view GuidanceModeName(GuidanceMode mode);
absl::string_view MutatorKindName(MutatorKind kind);
absl::string_view PhasePlanName(PhasePlan plan);
absl::StatusOr<GuidanceMode> ParseGuidanceMode(absl::string_view name);
absl::StatusOr<MutatorKind> ParseMutatorKind(absl::string_view name);
absl::StatusOr<PhasePlan> ParsePhasePlan(absl::string_view name);

struct FuzzConfig {
  std::string graph_path;
  std::string targets_path;
  std::optional<std::string> grammar_path;
  std::optional<std::string> cmdspec_path;
  // Initial file inputs, one per regular file.
  std::optional<std::string> corpus_dir;

  // Exactly one of these names the program under test: an executable that
  // reports coverage through TOFU_COVERAGE_FILE, or a built-in fixture.
  std::string program;
  std::string fixture;

  // Distance files, report and witnesses go here. Nothing is written when
  // empty.
  std::filesystem::path out_dir;

  double timeout_seconds = 60;
  double per_exec_timeout_seconds = 1;
  // Share of the campaign given to command-line fuzzing in staged mode.
  // Defaults to half of timeout_seconds.
  std::optional<double> phase1_timeout_seconds;
  // Execution budgets; 0 means unbounded. In staged mode phase 1 defaults
  // to half of max_executions.
  uint64_t max_executions = 0;
  uint64_t phase1_max_executions = 0;

  int batch = 120;
  int parallelism = 1;
  uint64_t seed = 0;
  GuidanceMode mode = GuidanceMode::kGuided;
  MutatorKind mutator = MutatorKind::kStructured;
  PhasePlan phases = PhasePlan::kStaged;
  MutatorConfig mutator_config;

  absl::Status Validate() const;
};

struct StaticAnalysis {
  Icfg icfg;
  TargetSpec targets;
  WeightedGraph graph;
  DistanceMaps maps;
  // Targets whose distance from main's entry is infinite.
  std::set<std::string> unreachable;
};

// Loads the graph and targets, resolves indirect calls, weights the graph
// and computes one distance map per target. Writes the distance files when
// `out_dir` is non-empty.
absl::StatusOr<StaticAnalysis> RunStaticPhase(
    const std::string &graph_path, const std::string &targets_path,
    const std::filesystem::path &out_dir = {});

struct TargetOutcome {
  enum class Status { kCovered, kTimeout, kStaticallyUnreachable };

  std::string target;
  Status status = Status::kTimeout;
  // 1-based index over all campaign executions.
  std::optional<uint64_t> first_hit_execution;
  std::optional<double> first_hit_seconds;
  int phase = 0;
  std::shared_ptr<const InputBundle> witness;
};

absl::string_view TargetStatusName(TargetOutcome::Status status);

struct PhaseSummary {
  std::string name;  // "cmdline" or "file"
  uint64_t executions = 0;
  uint64_t rounds = 0;
  uint64_t failed_executions = 0;
  uint64_t queue_pushes = 0;
  size_t final_queue_size = 0;
  size_t distinct_coverage_sets = 0;
  double seconds = 0;
  // Lowest score observed in this phase and the argv that produced it.
  double best_score = kInfiniteScore;
  std::vector<std::string> best_argv;
  uint64_t best_found_at = 0;
};

struct CampaignReport {
  std::string subject;  // fixture name or program path
  bool subject_is_fixture = false;
  uint64_t seed = 0;
  GuidanceMode mode = GuidanceMode::kGuided;
  MutatorKind mutator = MutatorKind::kStructured;
  PhasePlan phases = PhasePlan::kStaged;
  int batch = 0;

  std::vector<TargetOutcome> targets;
  std::vector<PhaseSummary> phase_summaries;
  // The phase-1 argv used for every phase-2 execution, when staged.
  std::optional<std::vector<std::string>> frozen_argv;
  uint64_t executions = 0;
  double seconds = 0;

  // True when every statically reachable target is covered.
  bool all_reachable_covered() const;
};

// Hooks for tests and logging. Called from the coordinating thread only.
class CampaignObserver {
 public:
  virtual ~CampaignObserver() = default;
  virtual void OnSelect(int /*phase*/, const Seed & /*seed*/) {}
  virtual void OnExecution(int /*phase*/, uint64_t /*execution*/,
                           const InputBundle & /*input*/,
                           const ExecutionResult & /*result*/) {}
};

std::unique_ptr<Executor> MakeExecutor(const FuzzConfig &config);

// Runs the static phase, then the configured fuzzing phases.
absl::StatusOr<CampaignReport> RunCampaign(const FuzzConfig &config,
                                           CampaignObserver *observer = nullptr);

// Same, with an already computed static phase and a caller-provided
// executor.
absl::StatusOr<CampaignReport> RunCampaign(const FuzzConfig &config,
                                           const StaticAnalysis &analysis,
                                           Executor &executor,
                                           CampaignObserver *observer = nullptr);

}  // namespace tofu

#endif  // TOFU_CAMPAIGN_H_
