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

#include "copeland/oracle.hpp"

#include <algorithm>

#include "copeland/error.hpp"

namespace copeland {

namespace {

std::vector<double> per_arm_regret(const PreferenceMatrix& m) {
  const auto scores = copeland_scores(m);
  const int best = *std::max_element(scores.begin(), scores.end());
  const double denom = static_cast<double>(m.arms() - 1);
  std::vector<double> out(scores.size());
  for (Arm i = 0; i < scores.size(); ++i) out[i] = (best - scores[i]) / denom;
  return out;
}

}  // namespace

double regret_of_pair(const PreferenceMatrix& m, Arm i, Arm j) {
  if (i >= m.arms() || j >= m.arms()) {
    throw Error(ErrorCode::kInvalidArgument, "arm index out of range");
  }
  const auto scores = copeland_scores(m);
  const int best = *std::max_element(scores.begin(), scores.end());
  // Integer numerator keeps e.g. (4-2-1)/3 exact to one rounding.
  return (2 * best - scores[i] - scores[j]) / static_cast<double>(m.arms() - 1);
}

ComparisonOracle::ComparisonOracle(PreferenceMatrix matrix, std::uint64_t seed,
                                   double checkpoint_ratio)
    : matrix_(std::move(matrix)),
      rng_(seed),
      ratio_(checkpoint_ratio),
      arm_regret_(per_arm_regret(matrix_)),
      wins_(matrix_.arms(), 0) {
  require_valid(matrix_, /*require_no_ties=*/false);
  if (!(checkpoint_ratio > 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "checkpoint ratio must exceed 1");
  }
}

void ComparisonOracle::check_arm(Arm a) const {
  if (a >= matrix_.arms()) {
    throw Error(ErrorCode::kInvalidArgument, "arm index out of range: " + std::to_string(a));
  }
}

Arm ComparisonOracle::compare(Arm i, Arm j) {
  check_arm(i);
  check_arm(j);
  const Arm winner = rng_.bernoulli(matrix_(i, j)) ? i : j;
  const Arm loser = winner == i ? j : i;
  ++wins_(winner, loser);
  ++steps_;
  regret_ += arm_regret_[i] + arm_regret_[j];
  if (static_cast<double>(steps_) >= next_checkpoint_) {
    checkpoints_.push_back({steps_, regret_});
    next_checkpoint_ = static_cast<double>(steps_) * ratio_;
  }
  return winner;
}

void ComparisonOracle::replay_counts(const SquareGrid<std::uint64_t>& wins) {
  if (wins.size() != matrix_.arms()) {
    throw Error(ErrorCode::kInvalidArgument, "win-count table has the wrong size");
  }
  wins_ = wins;
  steps_ = 0;
  regret_ = 0.0;
  for (Arm i = 0; i < wins.size(); ++i) {
    for (Arm j = 0; j < wins.size(); ++j) {
      steps_ += wins(i, j);
      regret_ += static_cast<double>(wins(i, j)) * (arm_regret_[i] + arm_regret_[j]);
    }
  }
  checkpoints_.clear();
  if (steps_ > 0) checkpoints_.push_back({steps_, regret_});
  next_checkpoint_ = std::max(1.0, static_cast<double>(steps_) * ratio_);
}

void ComparisonOracle::close_trace() {
  if (steps_ > 0 && (checkpoints_.empty() || checkpoints_.back().step != steps_)) {
    checkpoints_.push_back({steps_, regret_});
  }
}

}  // namespace copeland
