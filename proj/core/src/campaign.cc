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

#include <algorithm>
#include <chrono>
#include <fstream>
#include <map>
#include <sstream>
#include <variant>

#include "absl/strings/str_cat.h"
#include "glog/logging.h"
#include "tofu/rng.h"
#include "tofu/status_macros.h"

namespace tofu {
namespace {

// Fresh inputs generated when there is no corpus.
constexpr int kInitialGenerated = 8;

absl::Status WithContext(const absl::Status &status, absl::string_view context) {
  return absl::Status(status.code(), absl::StrCat(context, ": ", status.message()));
}

absl::StatusOr<std::string> ReadFile(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot read ", path.string()));
  std::ostringstream contents;
  contents << in.rdbuf();
  return contents.str();
}

absl::StatusOr<std::vector<std::string>> ReadCorpus(
    const std::filesystem::path &dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) {
    return absl::NotFoundError(absl::StrCat("missing corpus directory ", dir.string()));
  }
  std::vector<std::filesystem::path> paths;
  for (const auto &entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file()) paths.push_back(entry.path());
  }
  std::sort(paths.begin(), paths.end());
  std::vector<std::string> inputs;
  for (const auto &path : paths) {
    TOFU_ASSIGN_OR_RETURN(std::string bytes, ReadFile(path));
    inputs.push_back(std::move(bytes));
  }
  return inputs;
}

enum class PhaseKind { kCmdline, kFile };

class Campaign {
 public:
  Campaign(const FuzzConfig &config, const StaticAnalysis &analysis,
           Executor &executor, CampaignObserver *observer,
           std::optional<GrammarSpec> grammar,
           std::optional<CmdlineSpec> cmdline,
           std::vector<std::string> corpus)
      : config_(config),
        analysis_(analysis),
        executor_(executor),
        observer_(observer),
        grammar_(std::move(grammar)),
        cmdline_(std::move(cmdline)),
        corpus_(std::move(corpus)),
        start_(std::chrono::steady_clock::now()) {}

  absl::StatusOr<CampaignReport> Run();

 private:
  struct PhaseState {
    int index = 0;
    PhaseKind kind = PhaseKind::kFile;
    uint64_t stream = 0;
    uint64_t mutants = 0;
    uint64_t budget = 0;
    double deadline = 0;
    SeedQueue queue;
    CoverageDictionary dictionary;
    Rng coordinator;
    PhaseSummary summary;
    std::shared_ptr<const InputBundle> best;
  };

  bool has_file() const {
    return grammar_.has_value() || config_.mutator == MutatorKind::kHavoc;
  }
  const CmdlineSpec *cmdline_spec() const {
    return cmdline_ ? &*cmdline_ : nullptr;
  }
  double Elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }
  uint64_t Remaining(const PhaseState &phase) const;

  InputBundle::File DefaultFile() const;
  InputBundle::File AsFile(SyntaxTree tree) const;
  absl::StatusOr<std::vector<InputBundle::File>> InitialFiles(Rng &rng) const;
  bool CanGenerate(const PhaseState &phase) const;
  InputBundle MakeMutant(const PhaseState &phase, const InputBundle &parent,
                         Rng &rng) const;
  InputBundle Fresh(const PhaseState &phase, const InputBundle &base,
                    Rng &rng) const;

  void ExecuteAndFold(PhaseState &phase,
                      std::vector<std::shared_ptr<const InputBundle>> inputs);
  void Fold(PhaseState &phase, std::shared_ptr<const InputBundle> input,
            const absl::StatusOr<ExecutionResult> &result);

  absl::StatusOr<PhaseSummary> RunPhase(int index, PhaseKind kind,
                                        std::vector<InputBundle> initial,
                                        uint64_t budget, double deadline,
                                        std::shared_ptr<const InputBundle> *best);

  const FuzzConfig &config_;
  const StaticAnalysis &analysis_;
  Executor &executor_;
  CampaignObserver *observer_;
  std::optional<GrammarSpec> grammar_;
  std::optional<CmdlineSpec> cmdline_;
  std::vector<std::string> corpus_;
  std::chrono::steady_clock::time_point start_;

  TargetLedger ledger_;
  std::map<std::string, TargetOutcome> outcomes_;
  uint64_t executions_ = 0;
};

uint64_t Campaign::Remaining(const PhaseState &phase) const {
  if (phase.budget == 0) return UINT64_MAX;
  return phase.budget > phase.summary.executions
             ? phase.budget - phase.summary.executions
             : 0;
}

InputBundle::File Campaign::AsFile(SyntaxTree tree) const {
  if (config_.mutator == MutatorKind::kHavoc) return Render(tree);
  return tree;
}

InputBundle::File Campaign::DefaultFile() const {
  if (!has_file()) return std::monostate{};
  if (grammar_) {
    Rng rng(0);
    return AsFile(Generate(*grammar_, config_.mutator_config, rng));
  }
  return corpus_.empty() ? std::string() : corpus_.front();
}

absl::StatusOr<std::vector<InputBundle::File>> Campaign::InitialFiles(
    Rng &rng) const {
  std::vector<InputBundle::File> files;
  for (const std::string &bytes : corpus_) {
    if (config_.mutator == MutatorKind::kHavoc) {
      files.emplace_back(bytes);
      continue;
    }
    absl::StatusOr<SyntaxTree> tree = Parse(bytes, *grammar_);
    if (!tree.ok()) {
      LOG(WARNING) << "skipping corpus input: " << tree.status();
      continue;
    }
    files.emplace_back(*std::move(tree));
  }
  if (!files.empty()) return files;
  if (grammar_) {
    for (int i = 0; i < kInitialGenerated; ++i) {
      files.push_back(AsFile(Generate(*grammar_, config_.mutator_config, rng)));
    }
  } else {
    files.emplace_back(std::string());
  }
  return files;
}

bool Campaign::CanGenerate(const PhaseState &phase) const {
  if (phase.kind == PhaseKind::kCmdline) return cmdline_.has_value();
  return grammar_.has_value() || corpus_.empty();
}

InputBundle Campaign::MakeMutant(const PhaseState &phase,
                                 const InputBundle &parent, Rng &rng) const {
  if (phase.kind == PhaseKind::kCmdline) {
    return InputBundle::Make(MutateCmdline(parent.cmdline(), *cmdline_, rng),
                             parent.file(), cmdline_spec());
  }
  InputBundle::File file;
  if (const auto *tree = std::get_if<SyntaxTree>(&parent.file())) {
    file = Mutate(*tree, *grammar_, config_.mutator_config, rng);
  } else {
    file = HavocMutate(parent.content(), rng);
  }
  return InputBundle::Make(parent.cmdline(), std::move(file), cmdline_spec());
}

InputBundle Campaign::Fresh(const PhaseState &phase, const InputBundle &base,
                            Rng &rng) const {
  if (phase.kind == PhaseKind::kCmdline) {
    return InputBundle::Make(MutateCmdline(base.cmdline(), *cmdline_, rng),
                             base.file(), cmdline_spec());
  }
  InputBundle::File file =
      grammar_ ? AsFile(Generate(*grammar_, config_.mutator_config, rng))
               : InputBundle::File(HavocMutate("", rng));
  return InputBundle::Make(base.cmdline(), std::move(file), cmdline_spec());
}

void Campaign::ExecuteAndFold(
    PhaseState &phase, std::vector<std::shared_ptr<const InputBundle>> inputs) {
  std::vector<ExecutionRequest> requests;
  requests.reserve(inputs.size());
  const auto timeout = std::chrono::milliseconds(
      static_cast<int64_t>(config_.per_exec_timeout_seconds * 1000));
  for (const auto &input : inputs) {
    requests.push_back(ExecutionRequest{.program = config_.program,
                                        .argv = input->argv(),
                                        .input = input->content(),
                                        .timeout = timeout,
                                        .env = {}});
  }
  std::vector<absl::StatusOr<ExecutionResult>> results =
      executor_.Run(requests);
  for (size_t i = 0; i < inputs.size(); ++i) {
    Fold(phase, inputs[i], results[i]);
  }
}

void Campaign::Fold(PhaseState &phase, std::shared_ptr<const InputBundle> input,
                    const absl::StatusOr<ExecutionResult> &result) {
  ++executions_;
  ++phase.summary.executions;
  static const ExecutionResult kFailed;
  if (!result.ok()) {
    if (phase.summary.failed_executions++ == 0) {
      LOG(WARNING) << "execution failed: " << result.status();
    }
  }
  const ExecutionResult &run = result.ok() ? *result : kFailed;
  if (observer_ != nullptr) {
    observer_->OnExecution(phase.index, executions_, *input, run);
  }

  const double before = ScoreTrace(run.coverage, analysis_.maps, ledger_);
  if (before < phase.summary.best_score) {
    phase.summary.best_score = before;
    phase.summary.best_argv = input->argv();
    phase.summary.best_found_at = executions_;
    phase.best = input;
  }
  for (const std::string &target : UpdateTargets(run.coverage, ledger_)) {
    TargetOutcome &outcome = outcomes_[target];
    outcome.status = TargetOutcome::Status::kCovered;
    outcome.first_hit_execution = executions_;
    outcome.first_hit_seconds = Elapsed();
    outcome.phase = phase.index;
    outcome.witness = input;
  }

  Seed seed;
  seed.id = executions_;
  seed.input = std::move(input);
  seed.coverage = std::make_shared<const CoverageSet>(run.coverage);
  seed.base_score = config_.mode == GuidanceMode::kGuided
                        ? ScoreTrace(run.coverage, analysis_.maps, ledger_)
                        : RandomScore(phase.coordinator);
  TryInsert(std::move(seed), phase.dictionary, phase.queue, phase.coordinator);
}

absl::StatusOr<PhaseSummary> Campaign::RunPhase(
    int index, PhaseKind kind, std::vector<InputBundle> initial,
    uint64_t budget, double deadline,
    std::shared_ptr<const InputBundle> *best) {
  const double phase_start = Elapsed();
  PhaseState phase;
  phase.index = index;
  phase.kind = kind;
  phase.stream = SplitSeed(config_.seed, index);
  phase.coordinator = Rng(SplitSeed(phase.stream, 0));
  phase.budget = budget;
  phase.deadline = deadline;
  phase.summary.name = kind == PhaseKind::kCmdline ? "cmdline" : "file";

  std::vector<std::shared_ptr<const InputBundle>> pending;
  for (InputBundle &bundle : initial) {
    if (pending.size() >= Remaining(phase)) break;
    pending.push_back(std::make_shared<const InputBundle>(std::move(bundle)));
  }
  if (pending.empty()) return phase.summary;
  const InputBundle base = *pending.front();
  ExecuteAndFold(phase, std::move(pending));

  Rng fresh_rng(SplitSeed(phase.stream, UINT64_MAX));
  while (!ledger_.done() && Remaining(phase) > 0 && Elapsed() < deadline) {
    const uint64_t n =
        std::min<uint64_t>(static_cast<uint64_t>(config_.batch), Remaining(phase));
    std::vector<std::shared_ptr<const InputBundle>> batch;
    batch.reserve(n);
    if (phase.queue.empty()) {
      if (!CanGenerate(phase)) {
        return absl::FailedPreconditionError(
            "seed queue exhausted and no generator is available");
      }
      for (uint64_t i = 0; i < n; ++i) {
        batch.push_back(
            std::make_shared<const InputBundle>(Fresh(phase, base, fresh_rng)));
      }
    } else {
      TOFU_ASSIGN_OR_RETURN(Seed parent, phase.queue.SelectNext());
      if (observer_ != nullptr) observer_->OnSelect(index, parent);
      for (uint64_t i = 0; i < n; ++i) {
        Rng rng(SplitSeed(phase.stream, 1 + phase.mutants++));
        batch.push_back(std::make_shared<const InputBundle>(
            MakeMutant(phase, *parent.input, rng)));
      }
    }
    ExecuteAndFold(phase, std::move(batch));
    ++phase.summary.rounds;
  }

  phase.summary.queue_pushes = phase.queue.pushes();
  phase.summary.final_queue_size = phase.queue.size();
  phase.summary.distinct_coverage_sets = phase.dictionary.size();
  phase.summary.seconds = Elapsed() - phase_start;
  if (best != nullptr) *best = phase.best;
  return phase.summary;
}

absl::StatusOr<CampaignReport> Campaign::Run() {
  CampaignReport report;
  report.subject = config_.fixture.empty() ? config_.program : config_.fixture;
  report.subject_is_fixture = !config_.fixture.empty();
  report.seed = config_.seed;
  report.mode = config_.mode;
  report.mutator = config_.mutator;
  report.batch = config_.batch;

  for (const std::string &target : analysis_.targets.targets) {
    TargetOutcome outcome;
    outcome.target = target;
    if (analysis_.unreachable.contains(target)) {
      outcome.status = TargetOutcome::Status::kStaticallyUnreachable;
    } else {
      ledger_.all.insert(target);
    }
    outcomes_[target] = outcome;
  }

  PhasePlan plan = config_.phases;
  if (plan == PhasePlan::kStaged && !cmdline_) {
    LOG(WARNING) << "no command-line spec; running file fuzzing only";
    plan = PhasePlan::kFileOnly;
  }
  if (plan == PhasePlan::kStaged && !has_file()) {
    LOG(WARNING) << "no file dimension; running command-line fuzzing only";
    plan = PhasePlan::kCmdlineOnly;
  }
  if (plan == PhasePlan::kCmdlineOnly && !cmdline_) {
    return absl::InvalidArgumentError(
        "command-line fuzzing needs a command-line spec");
  }
  report.phases = plan;

  CmdlineState cmdline;
  if (cmdline_) {
    TOFU_ASSIGN_OR_RETURN(cmdline, InitialState(*cmdline_));
  }
  const double timeout = config_.timeout_seconds;
  const uint64_t budget = config_.max_executions;

  auto file_phase = [&](int index, const CmdlineState &state,
                        uint64_t phase_budget) -> absl::Status {
    Rng init_rng(SplitSeed(SplitSeed(config_.seed, index), UINT64_MAX - 1));
    TOFU_ASSIGN_OR_RETURN(std::vector<InputBundle::File> files,
                          InitialFiles(init_rng));
    std::vector<InputBundle> initial;
    for (InputBundle::File &file : files) {
      initial.push_back(InputBundle::Make(state, std::move(file), cmdline_spec()));
    }
    absl::StatusOr<PhaseSummary> summary =
        RunPhase(index, PhaseKind::kFile, std::move(initial), phase_budget,
                 timeout, nullptr);
    if (!summary.ok()) return WithContext(summary.status(), "file phase");
    report.phase_summaries.push_back(*std::move(summary));
    return absl::OkStatus();
  };

  if (plan == PhasePlan::kFileOnly) {
    TOFU_RETURN_IF_ERROR(file_phase(1, cmdline, budget));
  } else {
    const bool staged = plan == PhasePlan::kStaged;
    uint64_t phase1_budget = budget;
    double phase1_deadline = timeout;
    if (staged) {
      phase1_budget = config_.phase1_max_executions != 0
                          ? config_.phase1_max_executions
                          : budget / 2;
      if (budget != 0) phase1_budget = std::max<uint64_t>(1, phase1_budget);
      phase1_deadline = config_.phase1_timeout_seconds.value_or(timeout / 2);
    }
    std::vector<InputBundle> initial;
    initial.push_back(InputBundle::Make(cmdline, DefaultFile(), cmdline_spec()));
    std::shared_ptr<const InputBundle> best;
    absl::StatusOr<PhaseSummary> summary =
        RunPhase(1, PhaseKind::kCmdline, std::move(initial), phase1_budget,
                 phase1_deadline, &best);
    if (!summary.ok()) return WithContext(summary.status(), "command-line phase");
    report.phase_summaries.push_back(*std::move(summary));

    if (staged) {
      const CmdlineState frozen = best != nullptr ? best->cmdline() : cmdline;
      report.frozen_argv =
          InputBundle::Make(frozen, std::string(), cmdline_spec()).argv();
      if (!ledger_.done()) {
        const uint64_t used = executions_;
        const uint64_t rest =
            budget == 0 ? 0 : (budget > used ? budget - used : 0);
        if (budget == 0 || rest > 0) {
          TOFU_RETURN_IF_ERROR(file_phase(2, frozen, rest));
        }
      }
    }
  }

  for (auto &[target, outcome] : outcomes_) report.targets.push_back(outcome);
  report.executions = executions_;
  report.seconds = Elapsed();
  return report;
}

}  // namespace

absl::string_view GuidanceModeName(GuidanceMode mode) {
  return mode == GuidanceMode::kGuided ? "guided" : "unguided";
}

absl::string_view MutatorKindName(MutatorKind kind) {
  return kind == MutatorKind::kStructured ? "structured" : "havoc";
}

absl::string_view PhasePlanName(PhasePlan plan) {
  switch (plan) {
    case PhasePlan::kStaged:
      return "staged";
    case PhasePlan::kCmdlineOnly:
      return "cmdline-only";
    case PhasePlan::kFileOnly:
      return "file-only";
  }
  return "?";
}

absl::StatusOr<GuidanceMode> ParseGuidanceMode(absl::string_view name) {
  if (name == "guided") return GuidanceMode::kGuided;
  if (name == "unguided") return GuidanceMode::kUnguided;
  return absl::InvalidArgumentError(absl::StrCat("unknown mode '", name, "'"));
}

absl::StatusOr<MutatorKind> ParseMutatorKind(absl::string_view name) {
  if (name == "structured") return MutatorKind::kStructured;
  if (name == "havoc") return MutatorKind::kHavoc;
  return absl::InvalidArgumentError(absl::StrCat("unknown mutator '", name, "'"));
}

absl::StatusOr<PhasePlan> ParsePhasePlan(absl::string_view name) {
  for (PhasePlan plan :
       {PhasePlan::kStaged, PhasePlan::kCmdlineOnly, PhasePlan::kFileOnly}) {
    if (PhasePlanName(plan) == name) return plan;
  }
  return absl::InvalidArgumentError(absl::StrCat("unknown phases '", name, "'"));
}

absl::string_view TargetStatusName(TargetOutcome::Status status) {
  switch (status) {
    case TargetOutcome::Status::kCovered:
      return "covered";
    case TargetOutcome::Status::kTimeout:
      return "timeout";
    case TargetOutcome::Status::kStaticallyUnreachable:
      return "statically-unreachable";
  }
  return "?";
}

bool CampaignReport::all_reachable_covered() const {
  return std::all_of(targets.begin(), targets.end(), [](const auto &t) {
    return t.status != TargetOutcome::Status::kTimeout;
  });
}

absl::Status FuzzConfig::Validate() const {
  if (graph_path.empty() || targets_path.empty()) {
    return absl::InvalidArgumentError("graph and targets are required");
  }
  if (program.empty() == fixture.empty()) {
    return absl::InvalidArgumentError(
        "exactly one of program and fixture must be set");
  }
  if (batch < 1) return absl::InvalidArgumentError("batch must be at least 1");
  if (parallelism < 1) {
    return absl::InvalidArgumentError("parallelism must be at least 1");
  }
  if (!(timeout_seconds > 0)) {
    return absl::InvalidArgumentError("timeout must be positive");
  }
  if (!(per_exec_timeout_seconds > 0)) {
    return absl::InvalidArgumentError("per-exec timeout must be positive");
  }
  if (phase1_timeout_seconds && !(*phase1_timeout_seconds > 0)) {
    return absl::InvalidArgumentError("phase-1 timeout must be positive");
  }
  if (mutator == MutatorKind::kStructured && !grammar_path &&
      phases != PhasePlan::kCmdlineOnly) {
    return absl::InvalidArgumentError("structured mutator requires a grammar");
  }
  return mutator_config.Validate();
}

absl::StatusOr<StaticAnalysis> RunStaticPhase(
    const std::string &graph_path, const std::string &targets_path,
    const std::filesystem::path &out_dir) {
  auto annotate = [](const absl::Status &s) {
    return WithContext(s, "static phase");
  };
  absl::StatusOr<Icfg> loaded = LoadIcfg(graph_path);
  if (!loaded.ok()) return annotate(loaded.status());
  Icfg icfg = ResolveIndirectCalls(*loaded);
  absl::StatusOr<TargetSpec> targets = LoadTargets(targets_path, icfg);
  if (!targets.ok()) return annotate(targets.status());
  WeightedGraph graph = BuildWeightedGraph(icfg, *targets);
  DistanceMaps maps = ComputeDistances(graph, *targets);
  if (!out_dir.empty()) {
    absl::Status written = WriteDistanceFiles(maps, out_dir);
    if (!written.ok()) return annotate(written);
  }
  std::set<std::string> unreachable;
  const std::string &entry = icfg.FindFunction(icfg.main())->entry;
  for (const std::string &target : targets->targets) {
    if (!maps.at(target).At(entry).is_finite()) unreachable.insert(target);
  }
  return StaticAnalysis{std::move(icfg), *std::move(targets), std::move(graph),
                        std::move(maps), std::move(unreachable)};
}

std::unique_ptr<Executor> MakeExecutor(const FuzzConfig &config) {
  if (!config.fixture.empty()) {
    return std::make_unique<FixtureExecutor>(config.fixture);
  }
  return std::make_unique<ProcessExecutor>(config.parallelism);
}

absl::StatusOr<CampaignReport> RunCampaign(const FuzzConfig &config,
                                           const StaticAnalysis &analysis,
                                           Executor &executor,
                                           CampaignObserver *observer) {
  TOFU_RETURN_IF_ERROR(config.Validate());
  std::optional<GrammarSpec> grammar;
  if (config.grammar_path) {
    TOFU_ASSIGN_OR_RETURN(grammar, LoadGrammar(*config.grammar_path));
  }
  std::optional<CmdlineSpec> cmdline;
  if (config.cmdspec_path) {
    TOFU_ASSIGN_OR_RETURN(cmdline, LoadCmdlineSpec(*config.cmdspec_path));
  }
  std::vector<std::string> corpus;
  if (config.corpus_dir) {
    TOFU_ASSIGN_OR_RETURN(corpus, ReadCorpus(*config.corpus_dir));
  }
  Campaign campaign(config, analysis, executor, observer, std::move(grammar),
                    std::move(cmdline), std::move(corpus));
  return campaign.Run();
}

absl::StatusOr<CampaignReport> RunCampaign(const FuzzConfig &config,
                                           CampaignObserver *observer) {
  TOFU_RETURN_IF_ERROR(config.Validate());
  const std::filesystem::path dist_dir =
      config.out_dir.empty() ? std::filesystem::path()
                             : config.out_dir / "distances";
  TOFU_ASSIGN_OR_RETURN(
      StaticAnalysis analysis,
      RunStaticPhase(config.graph_path, config.targets_path, dist_dir));
  std::unique_ptr<Executor> executor = MakeExecutor(config);
  return RunCampaign(config, analysis, *executor, observer);
}

}  // namespace tofu
