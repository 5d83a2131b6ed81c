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

#include "tofu/rng.h"

namespace tofu {

uint64_t SplitSeed(uint64_t seed, uint64_t stream) {
  uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

int64_t UniformInt(Rng &rng, int64_t lo, int64_t hi) {
  return std::uniform_int_distribution<int64_t>(lo, hi)(rng);
}

double UniformReal(Rng &rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

size_t WeightedIndex(Rng &rng, const double *weights, size_t size) {
  double total = 0;
  for (size_t i = 0; i < size; ++i) total += weights[i];
  double pick = UniformReal(rng) * total;
  size_t last_positive = 0;
  for (size_t i = 0; i < size; ++i) {
    if (weights[i] <= 0) continue;
    last_positive = i;
    if (pick < weights[i]) return i;
    pick -= weights[i];
  }
  return last_positive;
}

}  // namespace tofu
