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

#ifndef TOFU_DISTANCE_VALUE_H_
#define TOFU_DISTANCE_VALUE_H_

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

#include "absl/strings/string_view.h"

namespace tofu {

// A count of remaining branch choices, or infinity. Infinity is a separate
// state, not a large number; addition saturates at it.
class Distance {
 public:
  constexpr Distance() = default;
  constexpr explicit Distance(uint32_t value) : value_(value) {}

  static constexpr Distance Infinite() {
    Distance d;
    d.infinite_ = true;
    return d;
  }

  constexpr bool is_finite() const { return !infinite_; }
  // Only meaningful when is_finite().
  constexpr uint32_t value() const { return value_; }

  friend constexpr Distance operator+(Distance a, Distance b) {
    if (a.infinite_ || b.infinite_) return Infinite();
    return Distance(a.value_ + b.value_);
  }

  // Infinite compares greater than every finite distance.
  friend constexpr auto operator<=>(const Distance &,
                                    const Distance &) = default;

  // "INF" or the decimal value.
  std::string ToString() const;
  static std::optional<Distance> Parse(absl::string_view token);

 private:
  bool infinite_ = false;
  uint32_t value_ = 0;
};

}  // namespace tofu

#endif  // TOFU_DISTANCE_VALUE_H_
