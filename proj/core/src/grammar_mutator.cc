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
#include <map>
#include <utility>

#include "glog/logging.h"
#include "tofu/grammar.h"

namespace tofu {
namespace {

constexpr int kMaxAttempts = 16;

std::string DrawTerminal(const Terminal &t, Rng &rng) {
  switch (t.kind) {
    case Terminal::Kind::kLiteral:
      return t.literal;
    case Terminal::Kind::kIntRange:
      return std::to_string(UniformInt(rng, t.lo, t.hi));
    case Terminal::Kind::kCharClass: {
      int64_t pick = UniformInt(rng, 0, static_cast<int64_t>(t.chars.count()) - 1);
      for (int c = 0; c < 256; ++c) {
        if (t.chars.test(c) && pick-- == 0) return std::string(1, static_cast<char>(c));
      }
      LOG(FATAL) << "unreachable: empty character class";
    }
    case Terminal::Kind::kOneOf:
      return t.choices[UniformInt(rng, 0, static_cast<int64_t>(t.choices.size()) - 1)];
    case Terminal::Kind::kCount:
      return "0";
  }
  return "";
}

// Number of items to generate for a symbol; `can_recurse` tells whether a
// nonterminal item still fits in the remaining depth.
size_t DrawCount(Quantifier q, bool can_recurse, const MutatorConfig &config,
                 Rng &rng) {
  switch (q) {
    case Quantifier::kOne:
      return 1;
    case Quantifier::kOptional:
      return can_recurse ? UniformInt(rng, 0, 1) : 0;
    case Quantifier::kStar:
      return can_recurse ? UniformInt(rng, 0, config.max_repeat) : 0;
    case Quantifier::kPlus:
      return can_recurse ? UniformInt(rng, 1, config.max_repeat) : 1;
  }
  return 1;
}

SyntaxNode GenerateNode(const GrammarSpec &spec, int nt, int budget,
                        const MutatorConfig &config, Rng &rng) {
  const auto &productions = spec.productions(nt);
  std::vector<int> fitting;
  int shortest = 0;
  for (int p = 0; p < static_cast<int>(productions.size()); ++p) {
    if (spec.MinHeight(nt, p) <= budget) fitting.push_back(p);
    if (spec.MinHeight(nt, p) < spec.MinHeight(nt, shortest)) shortest = p;
  }
  SyntaxNode node;
  node.nonterminal = nt;
  node.production =
      fitting.empty()
          ? shortest
          : fitting[UniformInt(rng, 0, static_cast<int64_t>(fitting.size()) - 1)];
  const Production &production = productions[node.production];
  node.slots.resize(production.symbols.size());
  for (size_t i = 0; i < production.symbols.size(); ++i) {
    const Symbol &s = production.symbols[i];
    const bool fits = s.is_terminal() || spec.MinHeight(s.nonterminal) <= budget - 1;
    const size_t n = DrawCount(s.quantifier, fits, config, rng);
    for (size_t j = 0; j < n; ++j) {
      if (s.is_terminal()) {
        SyntaxNode leaf;
        leaf.text = DrawTerminal(s.terminal, rng);
        if (s.terminal.kind == Terminal::Kind::kCount) {
          leaf.count_of = s.terminal.count_of;
        }
        node.slots[i].items.push_back(std::move(leaf));
      } else {
        node.slots[i].items.push_back(
            GenerateNode(spec, s.nonterminal, budget - 1, config, rng));
      }
    }
  }
  // count() leaves store the value they will render.
  for (Slot &slot : node.slots) {
    for (SyntaxNode &item : slot.items) {
      if (item.count_of.has_value()) {
        item.text = std::to_string(node.slots[*item.count_of].items.size());
      }
    }
  }
  return node;
}

void RefreshCounts(SyntaxNode &node) {
  if (node.is_terminal()) return;
  for (Slot &slot : node.slots) {
    for (SyntaxNode &item : slot.items) {
      if (item.count_of.has_value()) {
        item.text = std::to_string(node.slots[*item.count_of].items.size());
      } else {
        RefreshCounts(item);
      }
    }
  }
}

struct NodeSite {
  SyntaxNode *node;
  int depth;
};
struct SlotSite {
  SyntaxNode *parent;
  size_t slot;
  const Symbol *symbol;
};
struct LeafSite {
  SyntaxNode *leaf;
  const Terminal *terminal;
};
struct SwapSite {
  SyntaxNode *a;
  SyntaxNode *b;
};

struct Sites {
  std::vector<NodeSite> nodes;
  std::vector<SlotSite> deletable;
  std::vector<SlotSite> duplicable;
  std::vector<LeafSite> leaves;
  std::vector<SwapSite> swaps;
};

void Collect(SyntaxNode &node, int depth, const GrammarSpec &spec,
             const MutatorConfig &config, Sites &sites) {
  sites.nodes.push_back({&node, depth});
  const Production &production = spec.productions(node.nonterminal)[node.production];
  // Sibling groups: nonterminal children by nonterminal id, terminal children
  // by slot.
  std::map<std::pair<bool, size_t>, std::vector<SyntaxNode *>> groups;
  for (size_t i = 0; i < node.slots.size(); ++i) {
    const Symbol &s = production.symbols[i];
    Slot &slot = node.slots[i];
    const size_t n = slot.items.size();
    if ((s.quantifier == Quantifier::kOptional && n >= 1) ||
        (s.quantifier == Quantifier::kStar && n >= 1) ||
        (s.quantifier == Quantifier::kPlus && n >= 2)) {
      sites.deletable.push_back({&node, i, &s});
    }
    if ((s.quantifier == Quantifier::kStar || s.quantifier == Quantifier::kPlus) &&
        n >= 1 && n < static_cast<size_t>(config.max_repeat)) {
      sites.duplicable.push_back({&node, i, &s});
    }
    for (SyntaxNode &item : slot.items) {
      if (s.is_terminal()) {
        if (s.terminal.kind != Terminal::Kind::kCount) {
          if (s.terminal.Cardinality() > 1) sites.leaves.push_back({&item, &s.terminal});
          groups[{true, i}].push_back(&item);
        }
      } else {
        groups[{false, static_cast<size_t>(s.nonterminal)}].push_back(&item);
        Collect(item, depth + 1, spec, config, sites);
      }
    }
  }
  for (auto &[key, members] : groups) {
    for (size_t a = 0; a < members.size(); ++a) {
      for (size_t b = a + 1; b < members.size(); ++b) {
        sites.swaps.push_back({members[a], members[b]});
      }
    }
  }
}

template <typename T>
const T &Pick(const std::vector<T> &items, Rng &rng) {
  return items[UniformInt(rng, 0, static_cast<int64_t>(items.size()) - 1)];
}

}  // namespace

SyntaxTree GenerateNonterminal(const GrammarSpec &spec, int nonterminal,
                               int max_depth, const MutatorConfig &config,
                               Rng &rng) {
  return GenerateNode(spec, nonterminal, std::max(max_depth, 1), config, rng);
}

SyntaxTree Generate(const GrammarSpec &spec, const MutatorConfig &config,
                    Rng &rng) {
  return GenerateNonterminal(spec, spec.start(), config.max_depth, config, rng);
}

bool ApplyMutation(MutationOp op, SyntaxTree &tree, const GrammarSpec &spec,
                   const MutatorConfig &config, Rng &rng) {
  Sites sites;
  Collect(tree, 1, spec, config, sites);
  switch (op) {
    case MutationOp::kReplaceSubtree: {
      const NodeSite &site = Pick(sites.nodes, rng);
      *site.node = GenerateNode(spec, site.node->nonterminal,
                                std::max(config.max_depth - site.depth + 1, 1),
                                config, rng);
      break;
    }
    case MutationOp::kDeleteOptional: {
      if (sites.deletable.empty()) return false;
      const SlotSite &site = Pick(sites.deletable, rng);
      auto &items = site.parent->slots[site.slot].items;
      items.erase(items.begin() +
                  UniformInt(rng, 0, static_cast<int64_t>(items.size()) - 1));
      break;
    }
    case MutationOp::kDuplicateRepeated: {
      if (sites.duplicable.empty()) return false;
      const SlotSite &site = Pick(sites.duplicable, rng);
      auto &items = site.parent->slots[site.slot].items;
      SyntaxNode copy =
          items[UniformInt(rng, 0, static_cast<int64_t>(items.size()) - 1)];
      items.insert(items.begin() +
                       UniformInt(rng, 0, static_cast<int64_t>(items.size())),
                   std::move(copy));
      break;
    }
    case MutationOp::kMutateTerminal: {
      if (sites.leaves.empty()) return false;
      const LeafSite &site = Pick(sites.leaves, rng);
      std::string value = DrawTerminal(*site.terminal, rng);
      for (int i = 0; i < kMaxAttempts && value == site.leaf->text; ++i) {
        value = DrawTerminal(*site.terminal, rng);
      }
      site.leaf->text = std::move(value);
      break;
    }
    case MutationOp::kSwapSiblings: {
      if (sites.swaps.empty()) return false;
      const SwapSite &site = Pick(sites.swaps, rng);
      std::swap(*site.a, *site.b);
      break;
    }
  }
  RefreshCounts(tree);
  return true;
}

SyntaxTree Mutate(const SyntaxTree &tree, const GrammarSpec &spec,
                  const MutatorConfig &config, Rng &rng) {
  SyntaxTree mutant = tree;
  const int64_t rounds =
      UniformInt(rng, config.min_mutations, config.max_mutations);
  for (int64_t round = 0; round < rounds; ++round) {
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
      const auto op = static_cast<MutationOp>(
          WeightedIndex(rng, config.weights.data(), config.weights.size()));
      if (ApplyMutation(op, mutant, spec, config, rng)) break;
    }
  }
  return mutant;
}

}  // namespace tofu
