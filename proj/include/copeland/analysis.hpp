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

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "copeland/prefmat.hpp"

namespace copeland {

/// Uniform k-subset of {0..n-1}, ascending.
std::vector<Arm> sample_subset(std::size_t n, std::size_t k, Rng& rng);

/// `samples` random k-armed restrictions of `master`.
std::vector<PreferenceMatrix> sample_submatrices(const PreferenceMatrix& master, std::size_t k,
                                                 std::size_t samples, std::uint64_t seed);

/// Fraction of sampled k-armed restrictions that have a Condorcet winner.
double condorcet_probability(const PreferenceMatrix& master, std::size_t k,
                             std::size_t samples, std::uint64_t seed);

struct StructureStats {
  std::map<std::size_t, std::size_t> winner_count;   // C -> samples
  std::map<std::size_t, std::size_t> winner_losses;  // L_C -> samples
  std::size_t used = 0;
  std::size_t skipped = 0;  // restrictions with ties
};

StructureStats structure_stats(const PreferenceMatrix& master, std::size_t k,
                               std::size_t samples, std::uint64_t seed);

struct GapRatioStats {
  double mean_ratio = 0.0;  // mean of (bound_gap / min_gap)^2
  std::size_t used = 0;
  std::size_t skipped = 0;  // ties, or every arm a winner
};

GapRatioStats gap_ratio(const PreferenceMatrix& master, std::size_t k, std::size_t samples,
                        std::uint64_t seed);

/// Percentage of matrices on which two winner notions share an arm.
/// Index order: Copeland, Borda, random walk.
struct OverlapTable {
  static constexpr std::array<const char*, 3> kNotions = {"copeland", "borda", "random_walk"};
  std::array<std::array<double, 3>, 3> percent{};
  std::size_t matrices = 0;
};

OverlapTable winner_overlap(std::span<const PreferenceMatrix> matrices);

}  // namespace copeland
