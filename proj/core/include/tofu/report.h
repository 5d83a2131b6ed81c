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

#ifndef TOFU_REPORT_H_
#define TOFU_REPORT_H_

#include <filesystem>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "tofu/campaign.h"
#include "tofu/harness.h"

namespace tofu {

// Everything needed to rerun one covering input.
struct Witness {
  std::string target;
  bool fixture = false;
  // Fixture name or program path.
  std::string subject;
  // Contains "@@" where the input file goes.
  std::vector<std::string> argv;
  std::string input;
};

// The machine-readable report. Deterministic for a deterministic campaign:
// it holds execution counts but no wall-clock values.
std::string ReportJson(const CampaignReport &report);

// Writes into `dir`:
//   report.json                  ReportJson()
//   timing.json                  wall-clock seconds per phase and target
//   summary.txt                  human-readable table
//   witnesses/<target>.json      argv and subject, plus
//   witnesses/<target>.input     the raw input bytes
absl::Status EmitReport(const CampaignReport &report,
                        const std::filesystem::path &dir);

std::string WitnessStem(absl::string_view target);

absl::StatusOr<Witness> ReadWitness(const std::filesystem::path &path);

absl::StatusOr<ExecutionResult> ReplayWitness(
    const Witness &witness, std::chrono::milliseconds timeout =
                                std::chrono::milliseconds(5000));

}  // namespace tofu

#endif  // TOFU_REPORT_H_
