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

#ifndef TOFU_GRAMMAR_H_
#define TOFU_GRAMMAR_H_

// Grammars describing the primary input file and the syntax trees
// the structured mutator operates on.
//
// Grammar file format:
//
//   # comment
//   start Doc
//   Doc   -> Line* | "x" Item+ ";"
//   Line  -> Word? "\n"
//         |  oneof("a","bc") int(0,255) class([a-z_])
//   Item  -> count(2) ":" Port*     # renders the number of Port items
//
// Terminals are quoted literals, int(lo,hi), class([...]), oneof("..",..)
// and count(k), which renders the number of items in the k-th (1-based)
// symbol of the same alternative. Symbols may carry ?, * or +.

#include <array>
#include <bitset>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "tofu/rng.h"

namespace tofu {

enum class Quantifier { kOne, kOptional, kStar, kPlus };

struct Terminal {
  enum class Kind { kLiteral, kIntRange, kCharClass, kOneOf, kCount };
  Kind kind = Kind::kLiteral;
  std::string literal;
  int64_t lo = 0;
  int64_t hi = 0;
  std::bitset<256> chars;
  std::vector<std::string> choices;
  // kCount: 0-based index of the counted symbol in the same alternative.
  size_t count_of = 0;

  // Number of distinct values this terminal can take (saturating).
  uint64_t Cardinality() const;
};

struct Symbol {
  // -1 for terminals.
  int nonterminal = -1;
  Terminal terminal;
  Quantifier quantifier = Quantifier::kOne;

  bool is_terminal() const { return nonterminal < 0; }
};

struct Production {
  std::vector<Symbol> symbols;
};

class GrammarSpec {
 public:
  const std::vector<std::string> &names() const { return names_; }
  const std::vector<Production> &productions(int nonterminal) const {
    return rules_[nonterminal];
  }
  size_t num_nonterminals() const { return names_.size(); }
  int start() const { return start_; }
  std::optional<int> Find(absl::string_view name) const;

  // Height of the shortest tree rooted at `nonterminal` (a node whose
  // alternative needs no nonterminal children has height 1).
  int MinHeight(int nonterminal) const { return min_height_[nonterminal]; }
  int MinHeight(int nonterminal, int production) const;

 private:
  friend absl::StatusOr<GrammarSpec> ParseGrammar(absl::string_view text);

  std::vector<std::string> names_;
  std::vector<std::vector<Production>> rules_;
  int start_ = 0;
  std::vector<int> min_height_;
};

absl::StatusOr<GrammarSpec> ParseGrammar(absl::string_view text);
absl::StatusOr<GrammarSpec> LoadGrammar(const std::string &path);

struct SyntaxNode;

// The items matched by one symbol of an alternative: exactly one for plain
// symbols, 0..1 for '?', any number for '*', at least one for '+'.
struct Slot {
  std::vector<SyntaxNode> items;

  friend bool operator==(const Slot &, const Slot &) = default;
};

struct SyntaxNode {
  // Nonterminal node when >= 0; terminal leaf otherwise.
  int nonterminal = -1;
  int production = 0;
  std::vector<Slot> slots;

  // Terminal leaves only.
  std::string text;
  // Set for count(k) leaves; their text is derived from the sibling slot.
  std::optional<size_t> count_of;

  bool is_terminal() const { return nonterminal < 0; }
  friend bool operator==(const SyntaxNode &, const SyntaxNode &) = default;
};

using SyntaxTree = SyntaxNode;

// Concatenation of the terminal values, left to right.
std::string Render(const SyntaxTree &tree);

// Nonterminal nesting depth; a root without nonterminal children has depth 1.
int TreeDepth(const SyntaxTree &tree);

// Checks that `tree` is a derivation permitted by `spec`.
absl::Status CheckConforms(const SyntaxTree &tree, const GrammarSpec &spec);

inline constexpr size_t kDefaultParseBudget = 2'000'000;

// Backtracking recursive descent. Returns InvalidArgument with the furthest
// position reached when `text` is not derivable and ResourceExhausted when
// the step budget runs out before a decision.
absl::StatusOr<SyntaxTree> Parse(absl::string_view text,
                                 const GrammarSpec &spec,
                                 size_t step_budget = kDefaultParseBudget);

enum class MutationOp {
  kReplaceSubtree,
  kDeleteOptional,
  kDuplicateRepeated,
  kMutateTerminal,
  kSwapSiblings,
};
inline constexpr size_t kNumMutationOps = 5;

struct MutatorConfig {
  int max_depth = 12;
  // Upper bound on items generated for '*' / '+' and on duplication.
  int max_repeat = 8;
  // Indexed by MutationOp.
  std::array<double, kNumMutationOps> weights = {1, 1, 1, 1, 1};
  int min_mutations = 1;
  int max_mutations = 3;

  absl::Status Validate() const;
};

// A fresh tree for the start symbol. Alternatives that cannot finish within
// the remaining depth are excluded, so the result is at most
// max(config.max_depth, spec.MinHeight(start)) deep.
SyntaxTree Generate(const GrammarSpec &spec, const MutatorConfig &config,
                    Rng &rng);
SyntaxTree GenerateNonterminal(const GrammarSpec &spec, int nonterminal,
                               int max_depth, const MutatorConfig &config,
                               Rng &rng);

// Applies between min_mutations and max_mutations weighted structural
// operators to a copy of `tree`. The result still conforms to `spec`.
SyntaxTree Mutate(const SyntaxTree &tree, const GrammarSpec &spec,
                  const MutatorConfig &config, Rng &rng);

// Applies exactly one operator of the given kind, if any site allows it.
// Returns false (leaving `tree` untouched) when none does.
bool ApplyMutation(MutationOp op, SyntaxTree &tree, const GrammarSpec &spec,
                   const MutatorConfig &config, Rng &rng);

// One structure-blind havoc round: a small stacked number of bit flips, byte
// sets, span deletions, span duplications and random insertions.
std::string HavocMutate(absl::string_view bytes, Rng &rng);

}  // namespace tofu

#endif  // TOFU_GRAMMAR_H_
