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

#include <cstdint>
#include <string>
#include <vector>

#include "copeland/grid.hpp"
#include "copeland/prefmat.hpp"
#include "copeland/rng.hpp"

namespace copeland {

struct Checkpoint {
  std::uint64_t step = 0;
  double cumulative_regret = 0.0;

  bool operator==(const Checkpoint&) const = default;
};

/// Cumulative regret sampled on a geometric grid of steps.
struct RegretTrace {
  std::string algorithm;
  std::size_t replicate = 0;
  std::uint64_t seed = 0;
  std::string matrix_id;
  std::vector<Checkpoint> checkpoints;

  double final_regret() const { return checkpoints.empty() ? 0.0 : checkpoints.back().cumulative_regret; }
  std::uint64_t final_step() const { return checkpoints.empty() ? 0 : checkpoints.back().step; }
};

/// Regret of dueling i against j: 2 cpld(winner) - cpld(i) - cpld(j).
double regret_of_pair(const PreferenceMatrix& matrix, Arm i, Arm j);

/// Stochastic duel environment. Draws outcomes from the matrix, keeps the
/// win counts every learner reads, and accumulates regret.
///
/// All randomness of a simulation run, including the learner's own coin
/// flips, is drawn from rng() so that one seed fixes the whole trajectory.
class ComparisonOracle {
 public:
  /// `checkpoint_ratio` > 1: a checkpoint is recorded at step 1 and whenever
  /// the step count reaches ratio times the previous checkpoint.
  ComparisonOracle(PreferenceMatrix matrix, std::uint64_t seed, double checkpoint_ratio = 1.2);

  /// Duels i against j and returns the winner. i == j is a fair coin.
  Arm compare(Arm i, Arm j);

  std::size_t arms() const noexcept { return matrix_.arms(); }
  const PreferenceMatrix& matrix() const noexcept { return matrix_; }
  std::uint64_t steps() const noexcept { return steps_; }
  double cumulative_regret() const noexcept { return regret_; }
  const SquareGrid<std::uint64_t>& wins() const noexcept { return wins_; }
  double pair_regret(Arm i, Arm j) const { return arm_regret_[i] + arm_regret_[j]; }
  Rng& rng() noexcept { return rng_; }

  /// Replaces the comparison history with `wins`, as if those duels had
  /// already been played. The step count and regret are derived from the
  /// counts.
  void replay_counts(const SquareGrid<std::uint64_t>& wins);

  /// Records a closing checkpoint at the current step if it is not already
  /// the last one.
  void close_trace();
  const std::vector<Checkpoint>& checkpoints() const noexcept { return checkpoints_; }

 private:
  void check_arm(Arm a) const;

  PreferenceMatrix matrix_;
  Rng rng_;
  double ratio_;
  std::vector<double> arm_regret_;  // cpld(winner) - cpld(i)
  SquareGrid<std::uint64_t> wins_;
  std::uint64_t steps_ = 0;
  double regret_ = 0.0;
  double next_checkpoint_ = 1.0;
  std::vector<Checkpoint> checkpoints_;
};

}  // namespace copeland
