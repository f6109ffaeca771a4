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
#include <vector>

#include "copeland/grid.hpp"
#include "copeland/oracle.hpp"
#include "copeland/prefmat.hpp"

namespace copeland {

/// A chosen pair: the optimistic winner and its challenger.
struct Duel {
  Arm first = 0;
  Arm second = 0;

  bool operator==(const Duel&) const = default;
};

struct ConfidenceBounds {
  SquareGrid<double> upper;
  SquareGrid<double> lower;
};

/// UCB/LCB matrices at step t (t >= 1): empirical win rate plus/minus
/// sqrt(alpha ln t / n), clamped to [0,1]. Pairs with no duels get [0,1];
/// the diagonal is fixed at 0.5.
ConfidenceBounds confidence_matrices(const SquareGrid<std::uint64_t>& wins, std::uint64_t t,
                                     double alpha);
/// Same as above, writing into `out` (reused between steps).
void confidence_matrices(const SquareGrid<std::uint64_t>& wins, std::uint64_t t, double alpha,
                         ConfidenceBounds& out);

/// Challenger rule: among `pool` plus `champion` itself, restricted to arms
/// j with lower(j, champion) <= 0.5, take the arm maximizing
/// upper(j, champion). Equal maxima go to the lowest index other than the
/// champion; the champion is returned only as the unique maximizer.
Arm pick_challenger(const ConfidenceBounds& bounds, Arm champion, const std::vector<Arm>& pool);

/// Copeland Confidence Bound learner.
class CcbLearner {
 public:
  /// What the bookkeeping stage did during the last step.
  struct StepTrace {
    bool reset_disproven = false;  // a shortlisted opponent was confidently beaten
    bool reset_emptied = false;    // the candidate set ran empty
    bool promoted = false;         // some arm's score interval collapsed
    bool from_shortlists = false;  // the pair was drawn from the shortlists
  };

  CcbLearner(std::size_t arms, double alpha);

  /// Plays one round against the oracle and returns the pair dueled.
  Duel step(ComparisonOracle& oracle);

  std::size_t arms() const noexcept { return arms_; }
  double alpha() const noexcept { return alpha_; }
  /// Arms still considered potential winners, ascending.
  std::vector<Arm> candidates() const;
  /// Per-arm shortlist of opponents believed to beat it, ascending.
  const std::vector<std::vector<Arm>>& shortlists() const noexcept { return shortlists_; }
  /// Current estimate of a winner's loss count.
  std::size_t estimated_winner_losses() const noexcept { return loss_estimate_; }
  const StepTrace& last_step() const noexcept { return trace_; }
  const ConfidenceBounds& bounds() const noexcept { return bounds_; }
  const std::vector<int>& optimistic_scores() const noexcept { return optimistic_; }
  const std::vector<int>& pessimistic_scores() const noexcept { return pessimistic_; }

 private:
  void reset();
  void update_sets(Rng& rng, const std::vector<Arm>& top);
  Duel choose(Rng& rng, std::vector<Arm> top);

  std::size_t arms_;
  double alpha_;
  std::vector<Arm> all_arms_;
  std::vector<char> in_candidates_;
  std::vector<std::vector<Arm>> shortlists_;
  std::size_t loss_estimate_;
  StepTrace trace_;

  ConfidenceBounds bounds_;
  std::vector<int> optimistic_;
  std::vector<int> pessimistic_;
};

/// Fresh oracle and learner, `horizon` steps, closed trace.
RegretTrace run_ccb(const PreferenceMatrix& matrix, double alpha, std::uint64_t horizon,
                    std::uint64_t seed, double checkpoint_ratio = 1.2);

}  // namespace copeland
