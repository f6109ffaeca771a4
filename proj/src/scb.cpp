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

#include "copeland/scb.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "copeland/error.hpp"
#include "copeland/klbandit.hpp"

namespace copeland {

double certification_radius(std::uint64_t n, std::size_t arms, double delta) {
  const double nd = static_cast<double>(n);
  const double k2 = static_cast<double>(arms) * static_cast<double>(arms);
  return std::sqrt(std::log(4.0 * nd * (nd + 1.0) * k2 / delta) / (2.0 * nd));
}

std::optional<int> copeland_reward(ComparisonOracle& oracle, Arm i, double delta,
                                   const DuelBudget& budget) {
  const std::size_t k = oracle.arms();
  if (k < 2) throw Error(ErrorCode::kInvalidArgument, "Copeland reward needs K >= 2");
  if (budget.exhausted(oracle)) return std::nullopt;

  Rng& rng = oracle.rng();
  Arm j = rng.below(k - 1);
  if (j >= i) ++j;

  std::uint64_t n = 0;
  std::uint64_t won = 0;
  while (!budget.exhausted(oracle)) {
    ++n;
    won += oracle.compare(i, j) == i;
    const double mean = static_cast<double>(won) / static_cast<double>(n);
    if (std::abs(mean - 0.5) > certification_radius(n, k, delta)) return mean > 0.5 ? 1 : 0;
  }
  return std::nullopt;
}

WinnerSearch find_copeland_winner(ComparisonOracle& oracle, double delta, double eps,
                                  const DuelBudget& budget) {
  const std::size_t k = oracle.arms();
  const std::uint64_t start = oracle.steps();
  KlEliminator elim(k, delta, eps);
  const RewardSource reward = [&](Arm i) { return copeland_reward(oracle, i, delta, budget); };

  WinnerSearch out;
  while (!elim.finished()) {
    if (!elim.advance(reward)) break;
  }
  out.completed = elim.finished();
  out.arm = elim.best();
  out.duels = oracle.steps() - start;
  return out;
}

std::uint64_t squaring_budget(unsigned round) {
  if (round >= 6) return UINT64_MAX;
  const unsigned exponent = 1u << round;
  if (exponent >= 64) return UINT64_MAX;
  return std::uint64_t{1} << exponent;
}

ScbRun run_scb_detailed(const PreferenceMatrix& matrix, std::uint64_t horizon,
                        std::uint64_t seed, double checkpoint_ratio) {
  if (horizon < 4) throw Error(ErrorCode::kInvalidArgument, "SCB needs horizon >= 4");
  require_valid(matrix, /*require_no_ties=*/false);
  ComparisonOracle oracle(matrix, seed, checkpoint_ratio);

  ScbRun run;
  for (unsigned r = 1; oracle.steps() < horizon; ++r) {
    ScbRound info;
    info.round = r;
    info.budget = squaring_budget(r);
    const double t = static_cast<double>(info.budget);
    info.delta = std::min(std::log(t) / t, 0.5);
    if (!(info.delta > 0.0 && info.delta < 1.0)) {
      throw std::logic_error("SCB round failure probability left (0,1)");
    }

    const std::uint64_t round_start = oracle.steps();
    const std::uint64_t round_end =
        horizon - round_start < info.budget ? horizon : round_start + info.budget;
    const WinnerSearch search = find_copeland_winner(oracle, info.delta, 0.0, {round_end});
    info.search_duels = search.duels;
    info.candidate = search.arm;
    info.force_terminated = !search.completed;
    if (info.search_duels > info.budget) {
      throw std::logic_error("SCB search exceeded its round budget");
    }

    while (oracle.steps() < round_end) {
      oracle.compare(info.candidate, info.candidate);
      ++info.self_play;
    }
    run.rounds.push_back(info);
  }
  oracle.close_trace();
  run.trace.algorithm = "scb";
  run.trace.seed = seed;
  run.trace.checkpoints = oracle.checkpoints();
  return run;
}

RegretTrace run_scb(const PreferenceMatrix& matrix, std::uint64_t horizon, std::uint64_t seed,
                    double checkpoint_ratio) {
  return run_scb_detailed(matrix, horizon, seed, checkpoint_ratio).trace;
}

}  // namespace copeland
