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

#ifndef TOFU_STATUS_MACROS_H_
#define TOFU_STATUS_MACROS_H_

#include "absl/status/status.h"
#include "absl/status/statusor.h"

#define TOFU_CONCAT_INNER_(a, b) a##b
#define TOFU_CONCAT_(a, b) TOFU_CONCAT_INNER_(a, b)

#define TOFU_RETURN_IF_ERROR(expr)                 \
  do {                                             \
    ::absl::Status tofu_status_ = (expr);          \
    if (!tofu_status_.ok()) return tofu_status_;   \
  } while (false)

#define TOFU_ASSIGN_OR_RETURN_IMPL_(tmp, lhs, expr) \
  auto tmp = (expr);                                \
  if (!tmp.ok()) return std::move(tmp).status();    \
  lhs = std::move(tmp).value()

// `lhs` may be a declaration: TOFU_ASSIGN_OR_RETURN(Icfg icfg, LoadIcfg(p));
#define TOFU_ASSIGN_OR_RETURN(lhs, expr) \
  TOFU_ASSIGN_OR_RETURN_IMPL_(TOFU_CONCAT_(tofu_statusor_, __LINE__), lhs, expr)

#endif  // TOFU_STATUS_MACROS_H_
