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

#ifndef TOFU_RNG_H_
#define TOFU_RNG_H_

#include <cstdint>
#include <random>

namespace tofu {

// Every random decision in the fuzzer flows from one of these, seeded from
// the campaign seed.
using Rng = std::mt19937_64;

// Derives an independent seed for `stream` from `seed` (splitmix64 mixing).
// Used to give each mutant its own generator so results do not depend on
// the order in which work is scheduled.
uint64_t SplitSeed(uint64_t seed, uint64_t stream);

// Uniform integer in [lo, hi].
int64_t UniformInt(Rng &rng, int64_t lo, int64_t hi);

// Uniform real in [0, 1).
double UniformReal(Rng &rng);

// Picks an index with probability proportional to `weights[i]`. All weights
// must be non-negative and at least one positive.
size_t WeightedIndex(Rng &rng, const double *weights, size_t size);

}  // namespace tofu

#endif  // TOFU_RNG_H_
