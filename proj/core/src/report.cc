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

#include "tofu/report.h"

#include <fstream>
#include <sstream>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_replace.h"
#include "nlohmann/json.hpp"
#include "tofu/fixtures.h"

namespace tofu {
namespace {

using nlohmann::json;

json ScoreJson(double score) {
  if (std::isinf(score)) return "INF";
  return score;
}

absl::Status WriteFile(const std::filesystem::path &path,
                       absl::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.close();
  if (!out) return absl::InternalError(absl::StrCat("cannot write ", path.string()));
  return absl::OkStatus();
}

absl::StatusOr<std::string> ReadFile(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot read ", path.string()));
  std::ostringstream contents;
  contents << in.rdbuf();
  return contents.str();
}

}  // namespace

std::string WitnessStem(absl::string_view target) {
  return absl::StrReplaceAll(target, {{":", "__"}, {"/", "_"}});
}

std::string ReportJson(const CampaignReport &report) {
  json root;
  root["subject"] = report.subject;
  root["subject_kind"] = report.subject_is_fixture ? "fixture" : "program";
  root["seed"] = report.seed;
  root["mode"] = GuidanceModeName(report.mode);
  root["mutator"] = MutatorKindName(report.mutator);
  root["phases"] = PhasePlanName(report.phases);
  root["batch"] = report.batch;
  root["executions"] = report.executions;
  root["all_reachable_covered"] = report.all_reachable_covered();
  root["frozen_argv"] =
      report.frozen_argv ? json(*report.frozen_argv) : json(nullptr);

  json phases = json::array();
  for (const PhaseSummary &phase : report.phase_summaries) {
    phases.push_back({
        {"name", phase.name},
        {"executions", phase.executions},
        {"rounds", phase.rounds},
        {"failed_executions", phase.failed_executions},
        {"queue_pushes", phase.queue_pushes},
        {"final_queue_size", phase.final_queue_size},
        {"distinct_coverage_sets", phase.distinct_coverage_sets},
        {"best_score", ScoreJson(phase.best_score)},
        {"best_argv", phase.best_argv},
        {"best_found_at", phase.best_found_at},
    });
  }
  root["phase_summaries"] = std::move(phases);

  json targets = json::array();
  for (const TargetOutcome &outcome : report.targets) {
    json row = {{"target", outcome.target},
                {"status", TargetStatusName(outcome.status)}};
    if (outcome.status == TargetOutcome::Status::kCovered) {
      row["first_hit_execution"] = *outcome.first_hit_execution;
      row["phase"] = outcome.phase;
      row["witness"] = absl::StrCat("witnesses/", WitnessStem(outcome.target), ".json");
    }
    targets.push_back(std::move(row));
  }
  root["targets"] = std::move(targets);
  return root.dump(2) + "\n";
}

absl::Status EmitReport(const CampaignReport &report,
                        const std::filesystem::path &dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir / "witnesses", ec);
  if (ec) {
    return absl::InternalError(
        absl::StrCat("cannot create ", dir.string(), ": ", ec.message()));
  }
  if (auto s = WriteFile(dir / "report.json", ReportJson(report)); !s.ok()) {
    return s;
  }

  json timing;
  timing["seconds"] = report.seconds;
  for (const PhaseSummary &phase : report.phase_summaries) {
    timing["phases"].push_back({{"name", phase.name}, {"seconds", phase.seconds}});
  }
  timing["targets"] = json::array();
  for (const TargetOutcome &outcome : report.targets) {
    if (outcome.first_hit_seconds) {
      timing["targets"].push_back({{"target", outcome.target},
                                   {"first_hit_seconds", *outcome.first_hit_seconds}});
    }
  }
  if (auto s = WriteFile(dir / "timing.json", timing.dump(2) + "\n"); !s.ok()) {
    return s;
  }

  std::string summary = absl::StrFormat(
      "subject %s, seed %d, %s/%s/%s\n%d executions in %.2f s\n",
      report.subject, report.seed, GuidanceModeName(report.mode),
      MutatorKindName(report.mutator), PhasePlanName(report.phases),
      report.executions, report.seconds);
  for (const PhaseSummary &phase : report.phase_summaries) {
    absl::StrAppendFormat(&summary,
                          "phase %-8s %8d execs %6d rounds  best score %s\n",
                          phase.name, phase.executions, phase.rounds,
                          std::isinf(phase.best_score)
                              ? std::string("INF")
                              : absl::StrCat(phase.best_score));
  }
  if (report.frozen_argv) {
    absl::StrAppend(&summary, "frozen command line:");
    for (const std::string &arg : *report.frozen_argv) {
      absl::StrAppend(&summary, " ", arg);
    }
    absl::StrAppend(&summary, "\n");
  }
  for (const TargetOutcome &outcome : report.targets) {
    absl::StrAppendFormat(&summary, "%-28s %-22s", outcome.target,
                          TargetStatusName(outcome.status));
    if (outcome.first_hit_seconds) {
      absl::StrAppendFormat(&summary, " exec %d at %.3f s  witnesses/%s.json",
                            *outcome.first_hit_execution,
                            *outcome.first_hit_seconds,
                            WitnessStem(outcome.target));
    }
    absl::StrAppend(&summary, "\n");
  }
  if (auto s = WriteFile(dir / "summary.txt", summary); !s.ok()) return s;

  for (const TargetOutcome &outcome : report.targets) {
    if (outcome.witness == nullptr) continue;
    const std::string stem = WitnessStem(outcome.target);
    json witness = {{"target", outcome.target},
                    {"subject_kind", report.subject_is_fixture ? "fixture" : "program"},
                    {"subject", report.subject},
                    {"argv", outcome.witness->argv()},
                    {"input", stem + ".input"}};
    if (auto s = WriteFile(dir / "witnesses" / (stem + ".json"),
                           witness.dump(2) + "\n");
        !s.ok()) {
      return s;
    }
    if (auto s = WriteFile(dir / "witnesses" / (stem + ".input"),
                           outcome.witness->content());
        !s.ok()) {
      return s;
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<Witness> ReadWitness(const std::filesystem::path &path) {
  absl::StatusOr<std::string> text = ReadFile(path);
  if (!text.ok()) return text.status();
  json parsed = json::parse(*text, nullptr, /*allow_exceptions=*/false);
  if (parsed.is_discarded() || !parsed.is_object()) {
    return absl::InvalidArgumentError(
        absl::StrCat(path.string(), ": not a JSON object"));
  }
  Witness witness;
  try {
    witness.target = parsed.at("target").get<std::string>();
    const std::string kind = parsed.at("subject_kind").get<std::string>();
    if (kind != "fixture" && kind != "program") {
      return absl::InvalidArgumentError(
          absl::StrCat(path.string(), ": unknown subject_kind '", kind, "'"));
    }
    witness.fixture = kind == "fixture";
    witness.subject = parsed.at("subject").get<std::string>();
    witness.argv = parsed.at("argv").get<std::vector<std::string>>();
    const std::string input = parsed.at("input").get<std::string>();
    absl::StatusOr<std::string> bytes = ReadFile(path.parent_path() / input);
    if (!bytes.ok()) return bytes.status();
    witness.input = *std::move(bytes);
  } catch (const json::exception &e) {
    return absl::InvalidArgumentError(
        absl::StrCat(path.string(), ": ", e.what()));
  }
  return witness;
}

absl::StatusOr<ExecutionResult> ReplayWitness(
    const Witness &witness, std::chrono::milliseconds timeout) {
  if (witness.fixture) {
    return RunFixture(witness.subject, witness.argv, witness.input);
  }
  return Execute(ExecutionRequest{.program = witness.subject,
                                  .argv = witness.argv,
                                  .input = witness.input,
                                  .timeout = timeout,
                                  .env = {}});
}

}  // namespace tofu
