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

#include <algorithm>
#include <cctype>
#include <utility>

#include "absl/container/flat_hash_set.h"
#include "absl/functional/function_ref.h"
#include "absl/status/status.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "tofu/grammar.h"

namespace tofu {
namespace {

// Inputs beyond this size are refused rather than risk exhausting the stack
// of the recursive parser.
constexpr size_t kMaxParseInput = 16 * 1024;

class Parser {
 public:
  Parser(const GrammarSpec &spec, absl::string_view text, size_t budget)
      : spec_(spec), text_(text), budget_(budget) {}

  absl::StatusOr<SyntaxTree> Run() {
    std::optional<SyntaxTree> result;
    ParseNonterminal(spec_.start(), 0, [&](size_t end, SyntaxNode &node) {
      if (end != text_.size()) return false;
      result = std::move(node);
      return true;
    });
    if (result.has_value()) return *std::move(result);
    if (exhausted_) {
      return absl::ResourceExhaustedError(
          absl::StrCat("parse step budget of ", budget_, " exhausted"));
    }
    return absl::InvalidArgumentError(absl::StrCat(
        "input is not derivable from ", spec_.names()[spec_.start()],
        "; no parse extends past position ", furthest_));
  }

 private:
  using Continuation = absl::FunctionRef<bool(size_t, SyntaxNode &)>;

  bool Tick() {
    if (steps_++ >= budget_) exhausted_ = true;
    return !exhausted_;
  }

  bool ParseNonterminal(int nt, size_t pos, Continuation k) {
    if (!Tick()) return false;
    // Re-entering the same nonterminal at the same position without having
    // consumed input can only loop.
    if (!active_.insert({nt, pos}).second) return false;
    const auto &productions = spec_.productions(nt);
    for (size_t p = 0; p < productions.size() && !exhausted_; ++p) {
      std::vector<Slot> slots(productions[p].symbols.size());
      if (ParseSymbols(nt, static_cast<int>(p), 0, pos, pos, slots, k)) {
        active_.erase({nt, pos});
        return true;
      }
    }
    active_.erase({nt, pos});
    return false;
  }

  bool ParseSymbols(int nt, int prod, size_t i, size_t start, size_t pos,
                    std::vector<Slot> &slots, Continuation k) {
    if (!Tick()) return false;
    const Production &production = spec_.productions(nt)[prod];
    if (i == production.symbols.size()) {
      SyntaxNode node;
      node.nonterminal = nt;
      node.production = prod;
      node.slots = slots;
      for (const Slot &slot : node.slots) {
        for (const SyntaxNode &item : slot.items) {
          if (item.count_of.has_value() &&
              item.text != std::to_string(node.slots[*item.count_of].items.size())) {
            return false;
          }
        }
      }
      active_.erase({nt, start});
      const bool accepted = k(pos, node);
      active_.insert({nt, start});
      return accepted;
    }
    return ParseRepeat(nt, prod, i, start, pos, 0, slots, k);
  }

  bool ParseRepeat(int nt, int prod, size_t i, size_t start, size_t pos,
                   size_t count, std::vector<Slot> &slots, Continuation k) {
    const Symbol &symbol = spec_.productions(nt)[prod].symbols[i];
    size_t lo = 1, hi = 1;
    switch (symbol.quantifier) {
      case Quantifier::kOne:
        break;
      case Quantifier::kOptional:
        lo = 0;
        break;
      case Quantifier::kStar:
        lo = 0;
        hi = static_cast<size_t>(-1);
        break;
      case Quantifier::kPlus:
        hi = static_cast<size_t>(-1);
        break;
    }
    if (count < hi) {
      const bool matched =
          ParseItem(symbol, pos, [&](size_t end, SyntaxNode &item) {
            if (end == pos && count >= lo) return false;
            slots[i].items.push_back(item);
            const bool ok =
                ParseRepeat(nt, prod, i, start, end, count + 1, slots, k);
            slots[i].items.pop_back();
            return ok;
          });
      if (matched) return true;
    }
    if (count >= lo && !exhausted_) {
      return ParseSymbols(nt, prod, i + 1, start, pos, slots, k);
    }
    return false;
  }

  bool ParseItem(const Symbol &symbol, size_t pos, Continuation k) {
    if (!symbol.is_terminal()) {
      return ParseNonterminal(symbol.nonterminal, pos, k);
    }
    SyntaxNode leaf;
    if (symbol.terminal.kind == Terminal::Kind::kCount) {
      leaf.count_of = symbol.terminal.count_of;
    }
    for (size_t length : TerminalMatches(symbol.terminal, pos)) {
      if (!Tick()) return false;
      furthest_ = std::max(furthest_, pos + length);
      leaf.text = std::string(text_.substr(pos, length));
      if (k(pos + length, leaf)) return true;
    }
    return false;
  }

  // Lengths of the prefixes of text_[pos..] the terminal accepts, longest
  // first.
  std::vector<size_t> TerminalMatches(const Terminal &t, size_t pos) const {
    std::vector<size_t> lengths;
    absl::string_view rest = text_.substr(pos);
    switch (t.kind) {
      case Terminal::Kind::kLiteral:
        if (rest.substr(0, t.literal.size()) == t.literal) {
          lengths.push_back(t.literal.size());
        }
        break;
      case Terminal::Kind::kCharClass:
        if (!rest.empty() && t.chars.test(static_cast<unsigned char>(rest[0]))) {
          lengths.push_back(1);
        }
        break;
      case Terminal::Kind::kOneOf:
        for (const std::string &choice : t.choices) {
          if (rest.substr(0, choice.size()) == choice) {
            lengths.push_back(choice.size());
          }
        }
        std::sort(lengths.rbegin(), lengths.rend());
        lengths.erase(std::unique(lengths.begin(), lengths.end()),
                      lengths.end());
        break;
      case Terminal::Kind::kIntRange:
      case Terminal::Kind::kCount: {
        const int64_t lo = t.kind == Terminal::Kind::kCount ? 0 : t.lo;
        const int64_t hi = t.kind == Terminal::Kind::kCount
                               ? std::numeric_limits<int64_t>::max()
                               : t.hi;
        size_t sign = !rest.empty() && rest[0] == '-' ? 1 : 0;
        size_t digits = 0;
        while (sign + digits < rest.size() && digits < 19 &&
               std::isdigit(static_cast<unsigned char>(rest[sign + digits]))) {
          ++digits;
        }
        for (size_t d = digits; d >= 1; --d) {
          absl::string_view token = rest.substr(0, sign + d);
          int64_t value = 0;
          if (!absl::SimpleAtoi(token, &value)) continue;
          // Only the canonical spelling, as produced by rendering.
          if (std::to_string(value) != token) continue;
          if (value >= lo && value <= hi) lengths.push_back(token.size());
        }
        break;
      }
    }
    return lengths;
  }

  const GrammarSpec &spec_;
  absl::string_view text_;
  size_t budget_;
  size_t steps_ = 0;
  bool exhausted_ = false;
  size_t furthest_ = 0;
  absl::flat_hash_set<std::pair<int, size_t>> active_;
};

}  // namespace

absl::StatusOr<SyntaxTree> Parse(absl::string_view text,
                                 const GrammarSpec &spec, size_t step_budget) {
  if (text.size() > kMaxParseInput) {
    return absl::ResourceExhaustedError(
        absl::StrCat("input of ", text.size(), " bytes exceeds the ",
                     kMaxParseInput, "-byte parse limit"));
  }
  return Parser(spec, text, step_budget).Run();
}

}  // namespace tofu
