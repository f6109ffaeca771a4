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
#include <optional>

#include "copeland/ccb.hpp"
#include "copeland/oracle.hpp"

namespace copeland {

/// Relative Upper Confidence Bound, a learner that assumes a Condorcet
/// winner exists. Kept as the baseline whose regret grows linearly when that
/// assumption fails.
class RucbLearner {
 public:
  RucbLearner(std::size_t arms, double alpha);

  Duel step(ComparisonOracle& oracle);

  /// Arm currently held as the likely Condorcet winner, if any.
  std::optional<Arm> champion() const noexcept { return champion_; }
  /// Arms whose upper bounds are at least 0.5 against everyone at the last step.
  const std::vector<Arm>& last_candidates() const noexcept { return candidates_; }

 private:
  std::size_t arms_;
  double alpha_;
  std::vector<Arm> all_arms_;
  std::optional<Arm> champion_;
  std::vector<Arm> candidates_;
  ConfidenceBounds bounds_;
};

RegretTrace run_rucb(const PreferenceMatrix& matrix, double alpha, std::uint64_t horizon,
                     std::uint64_t seed, double checkpoint_ratio = 1.2);

}  // namespace copeland
