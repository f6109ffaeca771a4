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

#include "copeland/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "copeland/error.hpp"

namespace copeland {

namespace {

void check_sample_args(const PreferenceMatrix& master, std::size_t k) {
  if (k < 2 || k > master.arms()) {
    throw Error(ErrorCode::kInvalidArgument,
                "subset size must be between 2 and the number of arms");
  }
}

bool has_ties(const PreferenceMatrix& m) {
  for (Arm i = 0; i < m.arms(); ++i) {
    for (Arm j = 0; j < m.arms(); ++j) {
      if (i != j && m(i, j) == 0.5) return true;
    }
  }
  return false;
}

bool intersects(const std::vector<Arm>& a, const std::vector<Arm>& b) {
  // both ascending
  auto x = a.begin();
  auto y = b.begin();
  while (x != a.end() && y != b.end()) {
    if (*x == *y) return true;
    if (*x < *y) ++x; else ++y;
  }
  return false;
}

}  // namespace

std::vector<Arm> sample_subset(std::size_t n, std::size_t k, Rng& rng) {
  if (k > n) throw Error(ErrorCode::kInvalidArgument, "subset larger than population");
  std::vector<Arm> pool(n);
  std::iota(pool.begin(), pool.end(), Arm{0});
  for (std::size_t x = 0; x < k; ++x) {
    const std::size_t y = x + static_cast<std::size_t>(rng.below(n - x));
    std::swap(pool[x], pool[y]);
  }
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

std::vector<PreferenceMatrix> sample_submatrices(const PreferenceMatrix& master, std::size_t k,
                                                 std::size_t samples, std::uint64_t seed) {
  check_sample_args(master, k);
  Rng rng(seed);
  std::vector<PreferenceMatrix> out;
  out.reserve(samples);
  for (std::size_t s = 0; s < samples; ++s) {
    const auto idx = sample_subset(master.arms(), k, rng);
    out.push_back(submatrix(master, idx));
  }
  return out;
}

double condorcet_probability(const PreferenceMatrix& master, std::size_t k,
                             std::size_t samples, std::uint64_t seed) {
  if (samples == 0) return 0.0;
  std::size_t hits = 0;
  for (const auto& m : sample_submatrices(master, k, samples, seed)) {
    if (condorcet_winner(m)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(samples);
}

StructureStats structure_stats(const PreferenceMatrix& master, std::size_t k,
                               std::size_t samples, std::uint64_t seed) {
  StructureStats stats;
  for (const auto& m : sample_submatrices(master, k, samples, seed)) {
    if (has_ties(m)) {
      ++stats.skipped;
      continue;
    }
    const auto g = gap_summary(m);
    ++stats.winner_count[g.winner_count];
    ++stats.winner_losses[g.winner_losses];
    ++stats.used;
  }
  return stats;
}

GapRatioStats gap_ratio(const PreferenceMatrix& master, std::size_t k, std::size_t samples,
                        std::uint64_t seed) {
  GapRatioStats stats;
  double sum = 0.0;
  for (const auto& m : sample_submatrices(master, k, samples, seed)) {
    if (has_ties(m)) {
      ++stats.skipped;
      continue;
    }
    const auto g = gap_summary(m);
    if (!std::isfinite(g.bound_gap)) {
      ++stats.skipped;
      continue;
    }
    const double r = g.bound_gap / g.min_gap;
    sum += r * r;
    ++stats.used;
  }
  if (stats.used > 0) stats.mean_ratio = sum / static_cast<double>(stats.used);
  return stats;
}

OverlapTable winner_overlap(std::span<const PreferenceMatrix> matrices) {
  if (matrices.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "winner overlap needs at least one matrix");
  }
  OverlapTable table;
  std::array<std::array<std::size_t, 3>, 3> hits{};
  for (const auto& m : matrices) {
    const std::array<std::vector<Arm>, 3> sets = {copeland_winners(m), borda_winners(m),
                                                  random_walk_winners(m)};
    for (std::size_t a = 0; a < 3; ++a) {
      for (std::size_t b = 0; b < 3; ++b) {
        if (intersects(sets[a], sets[b])) ++hits[a][b];
      }
    }
  }
  table.matrices = matrices.size();
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = 0; b < 3; ++b) {
      table.percent[a][b] = 100.0 * static_cast<double>(hits[a][b]) /
                            static_cast<double>(matrices.size());
    }
  }
  return table;
}

}  // namespace copeland
