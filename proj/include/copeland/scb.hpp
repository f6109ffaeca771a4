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
#include <vector>

#include "copeland/oracle.hpp"
#include "copeland/prefmat.hpp"

namespace copeland {

/// Anytime radius for the sign test on a pair after n duels:
/// sqrt(ln(4 n (n+1) K^2 / delta) / (2n)).
double certification_radius(std::uint64_t n, std::size_t arms, double delta);

/// Stops issuing duels once the oracle's step count reaches `limit`.
struct DuelBudget {
  std::uint64_t limit = UINT64_MAX;

  bool exhausted(const ComparisonOracle& oracle) const { return oracle.steps() >= limit; }
};

/// One noisy Copeland-score sample for arm i: draws an opponent uniformly
/// from the other arms, duels until the sign of p_ij - 0.5 is certified with
/// error at most delta/K^2, and returns 1 if i wins that pair. Empty if the
/// budget runs out first.
std::optional<int> copeland_reward(ComparisonOracle& oracle, Arm i, double delta,
                                   const DuelBudget& budget = {});

struct WinnerSearch {
  Arm arm = 0;
  bool completed = false;  // false when force-terminated by the budget
  std::uint64_t duels = 0;
};

/// KL elimination over the K Copeland-score reward processes. When the
/// budget cuts it short, the answer is the eliminator's current best().
WinnerSearch find_copeland_winner(ComparisonOracle& oracle, double delta, double eps,
                                  const DuelBudget& budget = {});

/// 2^(2^r), saturating at UINT64_MAX.
std::uint64_t squaring_budget(unsigned round);

/// What one restart of the scalable learner did.
struct ScbRound {
  unsigned round = 0;
  std::uint64_t budget = 0;          // T
  double delta = 0.0;
  std::uint64_t search_duels = 0;    // T_0
  Arm candidate = 0;
  bool force_terminated = false;
  std::uint64_t self_play = 0;       // duels of (candidate, candidate)
};

struct ScbRun {
  RegretTrace trace;
  std::vector<ScbRound> rounds;
};

/// Scalable Copeland bandit: restarts r = 1, 2, ... with budget T = 2^(2^r),
/// each searching with failure probability min(ln T / T, 0.5) and exact
/// identification, then self-playing the candidate for the rest of T.
/// Requires horizon >= 4.
ScbRun run_scb_detailed(const PreferenceMatrix& matrix, std::uint64_t horizon,
                        std::uint64_t seed, double checkpoint_ratio = 1.2);

RegretTrace run_scb(const PreferenceMatrix& matrix, std::uint64_t horizon, std::uint64_t seed,
                    double checkpoint_ratio = 1.2);

}  // namespace copeland
