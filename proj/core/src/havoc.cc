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

#include <string>

#include "tofu/grammar.h"

namespace tofu {
namespace {

enum HavocOp { kFlipBit, kSetByte, kDeleteSpan, kDuplicateSpan, kInsertRandom };
constexpr int kNumHavocOps = 5;
constexpr int64_t kMaxSpan = 16;

}  // namespace

std::string HavocMutate(absl::string_view bytes, Rng &rng) {
  std::string data(bytes);
  // Stacking count 1, 2, 4 or 8.
  const int stack = 1 << UniformInt(rng, 0, 3);
  for (int i = 0; i < stack; ++i) {
    int op = static_cast<int>(UniformInt(rng, 0, kNumHavocOps - 1));
    // Everything but insertion needs at least one byte to work on.
    if (data.empty()) op = kInsertRandom;
    const int64_t size = static_cast<int64_t>(data.size());
    switch (op) {
      case kFlipBit: {
        const int64_t bit = UniformInt(rng, 0, size * 8 - 1);
        data[bit / 8] = static_cast<char>(data[bit / 8] ^ (1 << (bit % 8)));
        break;
      }
      case kSetByte:
        data[UniformInt(rng, 0, size - 1)] =
            static_cast<char>(UniformInt(rng, 0, 255));
        break;
      case kDeleteSpan: {
        const int64_t len = UniformInt(rng, 1, std::min(size, kMaxSpan));
        data.erase(UniformInt(rng, 0, size - len), len);
        break;
      }
      case kDuplicateSpan: {
        const int64_t len = UniformInt(rng, 1, std::min(size, kMaxSpan));
        const std::string span = data.substr(UniformInt(rng, 0, size - len), len);
        data.insert(UniformInt(rng, 0, size), span);
        break;
      }
      case kInsertRandom: {
        const int64_t len = UniformInt(rng, 1, 4);
        std::string fresh;
        for (int64_t j = 0; j < len; ++j) {
          fresh += static_cast<char>(UniformInt(rng, 0, 255));
        }
        data.insert(UniformInt(rng, 0, size), fresh);
        break;
      }
    }
  }
  return data;
}

}  // namespace tofu
