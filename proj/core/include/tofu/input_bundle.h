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

#ifndef TOFU_INPUT_BUNDLE_H_
#define TOFU_INPUT_BUNDLE_H_

#include <string>
#include <variant>
#include <vector>

#include "tofu/cmdline.h"
#include "tofu/grammar.h"

namespace tofu {

// One complete program input: a command line plus an optional file, kept
// both in structured form and rendered.
class InputBundle {
 public:
  // No file, a derivation tree (structured mode), or raw bytes (havoc).
  using File = std::variant<std::monostate, SyntaxTree, std::string>;

  // `spec` may be null when the campaign has no command-line dimension.
  // When a file is present the rendered argv ends with the "@@" token.
  static InputBundle Make(CmdlineState cmdline, File file,
                          const CmdlineSpec *spec);

  const CmdlineState &cmdline() const { return cmdline_; }
  const File &file() const { return file_; }
  bool has_file() const { return file_.index() != 0; }
  const std::vector<std::string> &argv() const { return argv_; }
  const std::string &content() const { return content_; }

 private:
  CmdlineState cmdline_;
  File file_;
  std::vector<std::string> argv_;
  std::string content_;
};

}  // namespace tofu

#endif  // TOFU_INPUT_BUNDLE_H_
