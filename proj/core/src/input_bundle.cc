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

#include "tofu/input_bundle.h"

#include "tofu/harness.h"

namespace tofu {

InputBundle InputBundle::Make(CmdlineState cmdline, File file,
                              const CmdlineSpec *spec) {
  InputBundle bundle;
  if (spec != nullptr) bundle.argv_ = RenderArgv(cmdline, *spec);
  if (const auto *tree = std::get_if<SyntaxTree>(&file)) {
    bundle.content_ = Render(*tree);
  } else if (const auto *bytes = std::get_if<std::string>(&file)) {
    bundle.content_ = *bytes;
  }
  if (file.index() != 0) bundle.argv_.emplace_back(kInputPlaceholder);
  bundle.cmdline_ = std::move(cmdline);
  bundle.file_ = std::move(file);
  return bundle;
}

}  // namespace tofu
