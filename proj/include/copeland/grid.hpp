// Copyright 2026 The copeland-bandits Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

namespace copeland {

// Dense row-major K x K table.
template <typename T>
class SquareGrid {
 public:
  SquareGrid() = default;
  explicit SquareGrid(std::size_t n, T fill = T{}) : n_(n), cells_(n * n, fill) {}

  std::size_t size() const noexcept { return n_; }

  T& operator()(std::size_t i, std::size_t j) { return cells_[i * n_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return cells_[i * n_ + j]; }

  std::span<T> row(std::size_t i) { return {cells_.data() + i * n_, n_}; }
  std::span<const T> row(std::size_t i) const { return {cells_.data() + i * n_, n_}; }

  const std::vector<T>& cells() const noexcept { return cells_; }

  void fill(const T& value) { std::fill(cells_.begin(), cells_.end(), value); }

  bool operator==(const SquareGrid&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<T> cells_;
};

}  // namespace copeland
