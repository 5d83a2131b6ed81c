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
#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>

#include "absl/status/status.h"
#include "absl/strings/ascii.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "tofu/grammar.h"
#include "tofu/status_macros.h"

namespace tofu {
namespace {

constexpr int kUnproductive = std::numeric_limits<int>::max();

absl::Status LineError(size_t line, absl::string_view message) {
  return absl::InvalidArgumentError(absl::StrCat("line ", line, ": ", message));
}

// Removes a trailing '#' comment, ignoring '#' inside quotes and brackets.
absl::string_view StripComment(absl::string_view line) {
  bool in_quote = false;
  int bracket = 0;
  for (size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (c == '\\' && (in_quote || bracket > 0)) {
      ++i;
    } else if (c == '"' && bracket == 0) {
      in_quote = !in_quote;
    } else if (!in_quote && c == '[') {
      ++bracket;
    } else if (!in_quote && c == ']' && bracket > 0) {
      --bracket;
    } else if (c == '#' && !in_quote && bracket == 0) {
      return line.substr(0, i);
    }
  }
  return line;
}

bool IsIdentStart(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool IsIdentChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ||
         c == '.';
}

// A symbol as written, before nonterminal names are resolved.
struct RawSymbol {
  std::string name;  // nonterminal reference when non-empty
  Terminal terminal;
  Quantifier quantifier = Quantifier::kOne;
};

class BodyLexer {
 public:
  BodyLexer(absl::string_view body, size_t line) : s_(body), line_(line) {}

  // Parses `alt ('|' alt)*`. A leading '|' continues a previous rule.
  absl::Status ParseAlternatives(std::vector<std::vector<RawSymbol>> &alts) {
    std::vector<RawSymbol> current;
    SkipSpace();
    if (Peek() == '|') {
      ++pos_;
    }
    while (true) {
      SkipSpace();
      if (pos_ >= s_.size()) {
        alts.push_back(std::move(current));
        return absl::OkStatus();
      }
      if (Peek() == '|') {
        ++pos_;
        alts.push_back(std::move(current));
        current.clear();
        continue;
      }
      RawSymbol symbol;
      TOFU_RETURN_IF_ERROR(ParseSymbol(symbol));
      SkipSpace();
      if (pos_ < s_.size() &&
          (Peek() == '?' || Peek() == '*' || Peek() == '+')) {
        char q = s_[pos_++];
        if (symbol.name.empty() &&
            symbol.terminal.kind == Terminal::Kind::kCount) {
          return Error("count() cannot carry a repetition marker");
        }
        symbol.quantifier = q == '?'   ? Quantifier::kOptional
                            : q == '*' ? Quantifier::kStar
                                       : Quantifier::kPlus;
      }
      current.push_back(std::move(symbol));
    }
  }

 private:
  char Peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void SkipSpace() {
    while (pos_ < s_.size() &&
           std::isspace(static_cast<unsigned char>(s_[pos_]))) {
      ++pos_;
    }
  }
  absl::Status Error(absl::string_view message) const {
    return LineError(line_, absl::StrCat(message, " (column ", pos_ + 1, ")"));
  }

  absl::Status ParseEscape(std::string &out) {
    if (pos_ >= s_.size()) return Error("dangling escape");
    char c = s_[pos_++];
    switch (c) {
      case 'n':
        out += '\n';
        break;
      case 't':
        out += '\t';
        break;
      case 'r':
        out += '\r';
        break;
      case '0':
        out += '\0';
        break;
      case 'x': {
        if (pos_ + 2 > s_.size()) return Error("short \\x escape");
        const absl::string_view hex = s_.substr(pos_, 2);
        int value = 0;
        const auto [end, ec] =
            std::from_chars(hex.data(), hex.data() + hex.size(), value, 16);
        if (ec != std::errc() || end != hex.data() + hex.size()) {
          return Error("bad \\x escape");
        }
        out += static_cast<char>(value);
        pos_ += 2;
        break;
      }
      default:
        out += c;
    }
    return absl::OkStatus();
  }

  absl::Status ParseQuoted(std::string &out) {
    if (Peek() != '"') return Error("expected '\"'");
    ++pos_;
    while (pos_ < s_.size() && s_[pos_] != '"') {
      if (s_[pos_] == '\\') {
        ++pos_;
        TOFU_RETURN_IF_ERROR(ParseEscape(out));
      } else {
        out += s_[pos_++];
      }
    }
    if (pos_ >= s_.size()) return Error("unterminated string");
    ++pos_;
    return absl::OkStatus();
  }

  absl::Status Expect(char c) {
    SkipSpace();
    if (Peek() != c) return Error(absl::StrCat("expected '", std::string(1, c), "'"));
    ++pos_;
    return absl::OkStatus();
  }

  absl::Status ParseInteger(int64_t &value) {
    SkipSpace();
    size_t begin = pos_;
    if (Peek() == '-') ++pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      ++pos_;
    }
    if (!absl::SimpleAtoi(s_.substr(begin, pos_ - begin), &value)) {
      return Error("expected integer");
    }
    return absl::OkStatus();
  }

  absl::Status ParseClass(std::bitset<256> &chars) {
    SkipSpace();
    if (Peek() != '[') return Error("expected '[' in class()");
    ++pos_;
    bool negate = false;
    if (Peek() == '^') {
      negate = true;
      ++pos_;
    }
    auto next_char = [&](unsigned char &c) -> absl::Status {
      if (pos_ >= s_.size()) return Error("unterminated character class");
      if (s_[pos_] == '\\') {
        ++pos_;
        std::string decoded;
        TOFU_RETURN_IF_ERROR(ParseEscape(decoded));
        c = static_cast<unsigned char>(decoded[0]);
      } else {
        c = static_cast<unsigned char>(s_[pos_++]);
      }
      return absl::OkStatus();
    };
    while (pos_ < s_.size() && s_[pos_] != ']') {
      unsigned char lo = 0;
      TOFU_RETURN_IF_ERROR(next_char(lo));
      unsigned char hi = lo;
      if (Peek() == '-' && pos_ + 1 < s_.size() && s_[pos_ + 1] != ']') {
        ++pos_;
        TOFU_RETURN_IF_ERROR(next_char(hi));
      }
      if (hi < lo) return Error("reversed range in character class");
      for (int c = lo; c <= hi; ++c) chars.set(c);
    }
    if (pos_ >= s_.size()) return Error("unterminated character class");
    ++pos_;
    if (negate) chars.flip();
    if (chars.none()) return Error("empty character class");
    return Expect(')');
  }

  absl::Status ParseSymbol(RawSymbol &symbol) {
    if (Peek() == '"') {
      symbol.terminal.kind = Terminal::Kind::kLiteral;
      return ParseQuoted(symbol.terminal.literal);
    }
    if (!IsIdentStart(Peek())) {
      return Error(absl::StrCat("unexpected character '",
                                std::string(1, Peek()), "'"));
    }
    size_t begin = pos_;
    while (pos_ < s_.size() && IsIdentChar(s_[pos_])) ++pos_;
    std::string word(s_.substr(begin, pos_ - begin));
    if (Peek() != '(') {
      symbol.name = std::move(word);
      return absl::OkStatus();
    }
    ++pos_;
    Terminal &t = symbol.terminal;
    if (word == "int") {
      t.kind = Terminal::Kind::kIntRange;
      TOFU_RETURN_IF_ERROR(ParseInteger(t.lo));
      TOFU_RETURN_IF_ERROR(Expect(','));
      TOFU_RETURN_IF_ERROR(ParseInteger(t.hi));
      if (t.hi < t.lo) return Error("int(lo,hi) with hi < lo");
      return Expect(')');
    }
    if (word == "class") {
      t.kind = Terminal::Kind::kCharClass;
      return ParseClass(t.chars);
    }
    if (word == "oneof") {
      t.kind = Terminal::Kind::kOneOf;
      while (true) {
        SkipSpace();
        std::string choice;
        TOFU_RETURN_IF_ERROR(ParseQuoted(choice));
        t.choices.push_back(std::move(choice));
        SkipSpace();
        if (Peek() == ',') {
          ++pos_;
          continue;
        }
        return Expect(')');
      }
    }
    if (word == "count") {
      t.kind = Terminal::Kind::kCount;
      int64_t index = 0;
      TOFU_RETURN_IF_ERROR(ParseInteger(index));
      if (index < 1) return Error("count() index is 1-based");
      t.count_of = static_cast<size_t>(index - 1);
      return Expect(')');
    }
    return Error(absl::StrCat("unknown terminal class ", word));
  }

  absl::string_view s_;
  size_t line_;
  size_t pos_ = 0;
};

void ComputeMinHeights(const std::vector<std::vector<Production>> &rules,
                       std::vector<int> &heights) {
  heights.assign(rules.size(), kUnproductive);
  for (bool changed = true; changed;) {
    changed = false;
    for (size_t nt = 0; nt < rules.size(); ++nt) {
      for (const Production &p : rules[nt]) {
        int tallest = 0;
        for (const Symbol &s : p.symbols) {
          if (s.is_terminal() || s.quantifier == Quantifier::kOptional ||
              s.quantifier == Quantifier::kStar) {
            continue;
          }
          tallest = std::max(tallest, heights[s.nonterminal]);
        }
        if (tallest == kUnproductive) continue;
        if (tallest + 1 < heights[nt]) {
          heights[nt] = tallest + 1;
          changed = true;
        }
      }
    }
  }
}

}  // namespace

uint64_t Terminal::Cardinality() const {
  switch (kind) {
    case Kind::kLiteral:
    case Kind::kCount:
      return 1;
    case Kind::kIntRange: {
      const unsigned __int128 span =
          static_cast<unsigned __int128>(static_cast<__int128>(hi) - lo) + 1;
      return span > std::numeric_limits<uint64_t>::max()
                 ? std::numeric_limits<uint64_t>::max()
                 : static_cast<uint64_t>(span);
    }
    case Kind::kCharClass:
      return chars.count();
    case Kind::kOneOf:
      return choices.size();
  }
  return 1;
}

std::optional<int> GrammarSpec::Find(absl::string_view name) const {
  for (size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<int>(i);
  }
  return std::nullopt;
}

int GrammarSpec::MinHeight(int nonterminal, int production) const {
  int tallest = 0;
  for (const Symbol &s : rules_[nonterminal][production].symbols) {
    if (s.is_terminal() || s.quantifier == Quantifier::kOptional ||
        s.quantifier == Quantifier::kStar) {
      continue;
    }
    tallest = std::max(tallest, min_height_[s.nonterminal]);
  }
  return tallest == kUnproductive ? kUnproductive : tallest + 1;
}

absl::StatusOr<GrammarSpec> ParseGrammar(absl::string_view text) {
  std::vector<std::string> names;
  std::vector<std::vector<std::vector<RawSymbol>>> raw_rules;
  std::vector<size_t> rule_lines;
  std::string start_name;
  size_t line_no = 0;
  for (absl::string_view raw : absl::StrSplit(text, '\n')) {
    ++line_no;
    absl::string_view line = absl::StripAsciiWhitespace(StripComment(raw));
    if (line.empty()) continue;
    if (line.front() == '|') {
      if (raw_rules.empty()) {
        return LineError(line_no, "continuation line without a rule");
      }
      TOFU_RETURN_IF_ERROR(
          BodyLexer(line, line_no).ParseAlternatives(raw_rules.back()));
      continue;
    }
    if (line.find("->") == absl::string_view::npos &&
        absl::ConsumePrefix(&line, "start") && !line.empty() &&
        std::isspace(static_cast<unsigned char>(line.front()))) {
      if (!start_name.empty()) return LineError(line_no, "duplicate start line");
      start_name = std::string(absl::StripAsciiWhitespace(line));
      continue;
    }
    line = absl::StripAsciiWhitespace(StripComment(raw));
    size_t arrow = line.find("->");
    if (arrow == absl::string_view::npos) {
      return LineError(line_no, "expected 'Name -> alternatives'");
    }
    std::string name(absl::StripAsciiWhitespace(line.substr(0, arrow)));
    if (name.empty() || !IsIdentStart(name[0]) ||
        !std::all_of(name.begin(), name.end(), IsIdentChar)) {
      return LineError(line_no, absl::StrCat("bad nonterminal name '", name, "'"));
    }
    if (std::find(names.begin(), names.end(), name) != names.end()) {
      return LineError(line_no, absl::StrCat("duplicate rule for ", name));
    }
    names.push_back(name);
    rule_lines.push_back(line_no);
    raw_rules.emplace_back();
    TOFU_RETURN_IF_ERROR(BodyLexer(line.substr(arrow + 2), line_no)
                             .ParseAlternatives(raw_rules.back()));
  }
  if (names.empty()) return absl::InvalidArgumentError("grammar has no rules");

  GrammarSpec spec;
  spec.names_ = names;
  auto index_of = [&](absl::string_view name) -> std::optional<int> {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) return std::nullopt;
    return static_cast<int>(it - names.begin());
  };
  if (start_name.empty()) start_name = names.front();
  std::optional<int> start = index_of(start_name);
  if (!start.has_value()) {
    return absl::InvalidArgumentError(
        absl::StrCat("undefined start symbol ", start_name));
  }
  spec.start_ = *start;

  for (size_t nt = 0; nt < raw_rules.size(); ++nt) {
    std::vector<Production> &productions = spec.rules_.emplace_back();
    for (std::vector<RawSymbol> &alt : raw_rules[nt]) {
      Production &p = productions.emplace_back();
      for (RawSymbol &raw_symbol : alt) {
        Symbol &s = p.symbols.emplace_back();
        s.quantifier = raw_symbol.quantifier;
        if (raw_symbol.name.empty()) {
          s.terminal = std::move(raw_symbol.terminal);
          continue;
        }
        std::optional<int> ref = index_of(raw_symbol.name);
        if (!ref.has_value()) {
          return absl::InvalidArgumentError(absl::StrCat(
              "line ", rule_lines[nt], ": undefined nonterminal ",
              raw_symbol.name));
        }
        s.nonterminal = *ref;
      }
      for (const Symbol &s : p.symbols) {
        if (!s.is_terminal() || s.terminal.kind != Terminal::Kind::kCount) {
          continue;
        }
        if (s.terminal.count_of >= p.symbols.size() ||
            p.symbols[s.terminal.count_of].quantifier == Quantifier::kOne) {
          return absl::InvalidArgumentError(absl::StrCat(
              "line ", rule_lines[nt],
              ": count() must refer to a symbol with ?, * or + in the same "
              "alternative"));
        }
      }
    }
  }

  ComputeMinHeights(spec.rules_, spec.min_height_);
  for (size_t nt = 0; nt < names.size(); ++nt) {
    if (spec.min_height_[nt] == kUnproductive) {
      return absl::InvalidArgumentError(
          absl::StrCat("unproductive nonterminal ", names[nt]));
    }
  }
  return spec;
}

absl::StatusOr<GrammarSpec> LoadGrammar(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::ostringstream contents;
  contents << in.rdbuf();
  absl::StatusOr<GrammarSpec> spec = ParseGrammar(contents.str());
  if (!spec.ok()) {
    return absl::Status(spec.status().code(),
                        absl::StrCat(path, ": ", spec.status().message()));
  }
  return spec;
}

namespace {

void RenderInto(const SyntaxNode &node, std::string &out) {
  if (node.is_terminal()) {
    out += node.text;
    return;
  }
  for (const Slot &slot : node.slots) {
    for (const SyntaxNode &item : slot.items) {
      if (item.count_of.has_value()) {
        out += std::to_string(node.slots[*item.count_of].items.size());
      } else {
        RenderInto(item, out);
      }
    }
  }
}

bool TerminalAccepts(const Terminal &t, absl::string_view text) {
  switch (t.kind) {
    case Terminal::Kind::kLiteral:
      return text == t.literal;
    case Terminal::Kind::kIntRange: {
      int64_t value = 0;
      return absl::SimpleAtoi(text, &value) && value >= t.lo &&
             value <= t.hi && std::to_string(value) == text;
    }
    case Terminal::Kind::kCharClass:
      return text.size() == 1 && t.chars.test(static_cast<unsigned char>(text[0]));
    case Terminal::Kind::kOneOf:
      return std::find(t.choices.begin(), t.choices.end(), text) !=
             t.choices.end();
    case Terminal::Kind::kCount:
      return true;
  }
  return false;
}

}  // namespace

std::string Render(const SyntaxTree &tree) {
  std::string out;
  RenderInto(tree, out);
  return out;
}

int TreeDepth(const SyntaxTree &tree) {
  if (tree.is_terminal()) return 0;
  int deepest = 0;
  for (const Slot &slot : tree.slots) {
    for (const SyntaxNode &item : slot.items) {
      deepest = std::max(deepest, TreeDepth(item));
    }
  }
  return deepest + 1;
}

absl::Status CheckConforms(const SyntaxTree &tree, const GrammarSpec &spec) {
  if (tree.is_terminal()) {
    return absl::InvalidArgumentError("tree root is a terminal");
  }
  if (tree.nonterminal >= static_cast<int>(spec.num_nonterminals())) {
    return absl::InvalidArgumentError("unknown nonterminal index");
  }
  const auto &productions = spec.productions(tree.nonterminal);
  if (tree.production < 0 ||
      tree.production >= static_cast<int>(productions.size())) {
    return absl::InvalidArgumentError(absl::StrCat(
        "bad alternative index for ", spec.names()[tree.nonterminal]));
  }
  const Production &p = productions[tree.production];
  if (tree.slots.size() != p.symbols.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "slot count mismatch under ", spec.names()[tree.nonterminal]));
  }
  for (size_t i = 0; i < p.symbols.size(); ++i) {
    const Symbol &s = p.symbols[i];
    const size_t n = tree.slots[i].items.size();
    const bool count_ok =
        s.quantifier == Quantifier::kOne        ? n == 1
        : s.quantifier == Quantifier::kOptional ? n <= 1
        : s.quantifier == Quantifier::kPlus     ? n >= 1
                                                : true;
    if (!count_ok) {
      return absl::InvalidArgumentError(absl::StrCat(
          "wrong item count in slot ", i, " under ",
          spec.names()[tree.nonterminal]));
    }
    for (const SyntaxNode &item : tree.slots[i].items) {
      if (s.is_terminal()) {
        const bool is_count = s.terminal.kind == Terminal::Kind::kCount;
        if (!item.is_terminal() || item.count_of.has_value() != is_count ||
            (is_count && *item.count_of != s.terminal.count_of) ||
            !TerminalAccepts(s.terminal, item.text)) {
          return absl::InvalidArgumentError(absl::StrCat(
              "terminal '", item.text, "' does not match slot ", i, " under ",
              spec.names()[tree.nonterminal]));
        }
      } else {
        if (item.nonterminal != s.nonterminal) {
          return absl::InvalidArgumentError(absl::StrCat(
              "expected ", spec.names()[s.nonterminal], " under ",
              spec.names()[tree.nonterminal]));
        }
        TOFU_RETURN_IF_ERROR(CheckConforms(item, spec));
      }
    }
  }
  return absl::OkStatus();
}

absl::Status MutatorConfig::Validate() const {
  if (max_depth < 1) return absl::InvalidArgumentError("max_depth must be >= 1");
  if (max_repeat < 1) {
    return absl::InvalidArgumentError("max_repeat must be >= 1");
  }
  bool any_positive = false;
  for (double w : weights) {
    if (w < 0) return absl::InvalidArgumentError("negative operator weight");
    any_positive |= w > 0;
  }
  if (!any_positive) {
    return absl::InvalidArgumentError("all operator weights are zero");
  }
  if (min_mutations < 1 || max_mutations < min_mutations) {
    return absl::InvalidArgumentError("bad mutations-per-call range");
  }
  return absl::OkStatus();
}

}  // namespace tofu
