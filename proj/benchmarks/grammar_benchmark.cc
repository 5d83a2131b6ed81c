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

#include "benchmark/benchmark.h"
#include "tofu/grammar.h"
#include "tofu/rng.h"

namespace tofu {
namespace {

const GrammarSpec &Palindromes() {
  static const GrammarSpec *spec = new GrammarSpec(
      *ParseGrammar("start S\nS -> \"a\" S \"a\" | \"b\" S \"b\" | \"\"\n"));
  return *spec;
}

const GrammarSpec &Lines() {
  static const GrammarSpec *spec = new GrammarSpec(*ParseGrammar(
      "start File\nFile -> Line*\nLine -> Word* \"\\n\"\n"
      "Word -> oneof(\"foo\", \"bar\", \"baz\", \" \") | int(0,999)\n"));
  return *spec;
}

void BM_Generate(benchmark::State &state) {
  const GrammarSpec &spec = state.range(0) == 0 ? Palindromes() : Lines();
  MutatorConfig config;
  Rng rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(Generate(spec, config, rng));
}
BENCHMARK(BM_Generate)->Arg(0)->Arg(1);

void BM_Mutate(benchmark::State &state) {
  const GrammarSpec &spec = state.range(0) == 0 ? Palindromes() : Lines();
  MutatorConfig config;
  Rng rng(2);
  const SyntaxTree tree = Generate(spec, config, rng);
  for (auto _ : state) benchmark::DoNotOptimize(Mutate(tree, spec, config, rng));
}
BENCHMARK(BM_Mutate)->Arg(0)->Arg(1);

void BM_Parse(benchmark::State &state) {
  const GrammarSpec &spec = state.range(0) == 0 ? Palindromes() : Lines();
  MutatorConfig config;
  Rng rng(3);
  const std::string text = Render(Generate(spec, config, rng));
  for (auto _ : state) benchmark::DoNotOptimize(Parse(text, spec));
  state.SetBytesProcessed(state.iterations() * text.size());
}
BENCHMARK(BM_Parse)->Arg(0)->Arg(1);

void BM_Havoc(benchmark::State &state) {
  const std::string input(static_cast<size_t>(state.range(0)), 'a');
  Rng rng(4);
  for (auto _ : state) benchmark::DoNotOptimize(HavocMutate(input, rng));
}
BENCHMARK(BM_Havoc)->Arg(16)->Arg(1024);

}  // namespace
}  // namespace tofu
