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

#include "tofu/distance.h"

#include <algorithm>
#include <fstream>
#include <functional>
#include <queue>
#include <system_error>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_replace.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"

namespace tofu {

std::string Distance::ToString() const {
  return infinite_ ? "INF" : std::to_string(value_);
}

std::optional<Distance> Distance::Parse(absl::string_view token) {
  if (token == "INF") return Infinite();
  uint32_t value = 0;
  if (token.empty() || token.front() == '+' || token.front() == '-' ||
      !absl::SimpleAtoi(token, &value)) {
    return std::nullopt;
  }
  return Distance(value);
}

DistanceMap::DistanceMap(std::string target, std::vector<Entry> entries)
    : target_(std::move(target)), entries_(std::move(entries)) {
  for (size_t i = 0; i < entries_.size(); ++i) {
    index_[entries_[i].first] = i;
  }
  auto it = index_.find(target_);
  if (it == index_.end()) {
    entries_.insert(entries_.begin(), {target_, Distance(0)});
    index_.clear();
    for (size_t i = 0; i < entries_.size(); ++i) {
      index_[entries_[i].first] = i;
    }
  } else {
    entries_[it->second].second = Distance(0);
  }
}

Distance DistanceMap::At(absl::string_view block) const {
  auto it = index_.find(block);
  return it == index_.end() ? Distance::Infinite() : entries_[it->second].second;
}

DistanceMaps ComputeDistances(const WeightedGraph &graph,
                              const TargetSpec &targets) {
  const size_t n = graph.nodes().size();
  // Reversed adjacency over finite arcs.
  std::vector<std::vector<std::pair<size_t, uint32_t>>> preds(n);
  for (const WeightedArc &arc : graph.arcs()) {
    if (!arc.weight.is_finite()) continue;
    preds[arc.dst].emplace_back(arc.src, arc.weight.value());
  }

  DistanceMaps maps;
  for (const std::string &target : targets.targets) {
    std::vector<Distance> dist(n, Distance::Infinite());
    std::optional<size_t> t = graph.IndexOf(target);
    if (t.has_value()) {
      using Item = std::pair<uint32_t, size_t>;
      std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
      dist[*t] = Distance(0);
      heap.push({0, *t});
      while (!heap.empty()) {
        auto [d, node] = heap.top();
        heap.pop();
        if (Distance(d) > dist[node]) continue;
        for (auto [pred, w] : preds[node]) {
          Distance candidate(d + w);
          if (candidate < dist[pred]) {
            dist[pred] = candidate;
            heap.push({d + w, pred});
          }
        }
      }
    }
    std::vector<DistanceMap::Entry> entries;
    entries.reserve(n);
    for (size_t i = 0; i < n; ++i) {
      entries.emplace_back(graph.nodes()[i], dist[i]);
    }
    maps.emplace(target, DistanceMap(target, std::move(entries)));
  }
  return maps;
}

std::string DistanceFileName(absl::string_view target) {
  return absl::StrCat(absl::StrReplaceAll(target, {{":", "__"}}), ".dist");
}

absl::Status WriteDistanceFiles(const DistanceMaps &maps,
                                const std::filesystem::path &dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    return absl::InternalError(
        absl::StrCat("cannot create ", dir.string(), ": ", ec.message()));
  }
  for (const auto &[target, map] : maps) {
    const std::filesystem::path path = dir / DistanceFileName(target);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    for (const auto &[block, distance] : map.entries()) {
      out << block << ' ' << distance.ToString() << '\n';
    }
    out.flush();
    if (!out) {
      return absl::InternalError(absl::StrCat("cannot write ", path.string()));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<DistanceMaps> ReadDistanceFiles(
    const std::filesystem::path &dir) {
  std::error_code ec;
  std::filesystem::directory_iterator it(dir, ec);
  if (ec) {
    return absl::NotFoundError(
        absl::StrCat("cannot read ", dir.string(), ": ", ec.message()));
  }
  std::vector<std::filesystem::path> files;
  for (const auto &entry : it) {
    if (entry.is_regular_file() && entry.path().extension() == ".dist") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());

  DistanceMaps maps;
  for (const std::filesystem::path &path : files) {
    std::string target =
        absl::StrReplaceAll(path.stem().string(), {{"__", ":"}});
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      return absl::NotFoundError(absl::StrCat("cannot open ", path.string()));
    }
    std::vector<DistanceMap::Entry> entries;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      absl::string_view stripped = absl::StripAsciiWhitespace(line);
      if (stripped.empty()) continue;
      std::vector<absl::string_view> fields =
          absl::StrSplit(stripped, ' ', absl::SkipEmpty());
      std::optional<Distance> d;
      if (fields.size() == 2) d = Distance::Parse(fields[1]);
      if (!d.has_value()) {
        return absl::InvalidArgumentError(absl::StrCat(
            path.string(), ": line ", line_no, ": malformed distance entry"));
      }
      entries.emplace_back(std::string(fields[0]), *d);
    }
    maps.emplace(target, DistanceMap(target, std::move(entries)));
  }
  return maps;
}

}  // namespace tofu
