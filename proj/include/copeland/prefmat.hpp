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

// Preference matrices: the data model of a dueling bandit instance, its
// validation, the winner notions defined on it, and the gap quantities that
// the regret bounds are expressed in.
//
// Arms are 0-based. Entry (i, j) is the probability that arm i wins a duel
// against arm j. "i beats j" always means the strict inequality p_ij > 0.5.

#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "copeland/grid.hpp"
#include "copeland/rng.hpp"

namespace copeland {

using Arm = std::size_t;

/// Tolerance for the complement and diagonal invariants.
inline constexpr double kProbabilityTolerance = 1e-12;

class PreferenceMatrix {
 public:
  /// Takes K*K row-major values. Throws Error(kInvalidArgument) on a shape
  /// mismatch, K < 2, or a non-finite entry. Probability invariants are not
  /// enforced here; see validate().
  PreferenceMatrix(std::size_t arms, std::vector<double> row_major);

  static PreferenceMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t arms() const noexcept { return arms_; }
  double operator()(Arm i, Arm j) const { return p_[i * arms_ + j]; }
  std::span<const double> row(Arm i) const { return {p_.data() + i * arms_, arms_}; }
  const std::vector<double>& values() const noexcept { return p_; }

  bool operator==(const PreferenceMatrix&) const = default;

 private:
  std::size_t arms_;
  std::vector<double> p_;
};

struct Violation {
  enum class Kind { kRange, kDiagonal, kComplement, kTie };
  Kind kind;
  Arm i;
  Arm j;

  std::string describe() const;
};

/// Lists every violated invariant; an empty result means the matrix is
/// valid. With `require_no_ties` every off-diagonal 0.5 is reported.
std::vector<Violation> validate(const PreferenceMatrix& matrix, bool require_no_ties);

/// Throws Error(kInvalidArgument) naming the first violation, if any.
void require_valid(const PreferenceMatrix& matrix, bool require_no_ties);

std::vector<int> copeland_scores(const PreferenceMatrix& matrix);

/// Copeland score divided by K-1.
std::vector<double> normalized_copeland_scores(const PreferenceMatrix& matrix);

std::vector<Arm> copeland_winners(const PreferenceMatrix& matrix);

/// Row sums without the diagonal; maxima are compared with a 1e-12 slack so
/// that summation order cannot split a tie.
std::vector<Arm> borda_winners(const PreferenceMatrix& matrix);

/// Stationary distribution of the chain that moves from i to j != i with
/// probability p_ji / K and stays put otherwise. Computed by power iteration
/// to an L1 residual below 1e-10; throws Error(kNonConvergence) after 10^6
/// iterations.
std::vector<double> random_walk_distribution(const PreferenceMatrix& matrix);

/// Arms whose stationary mass is within 1e-9 of the maximum.
std::vector<Arm> random_walk_winners(const PreferenceMatrix& matrix);

std::optional<Arm> condorcet_winner(const PreferenceMatrix& matrix);

/// Gap structure of an instance without ties.
struct GapSummary {
  std::vector<int> copeland_scores;
  std::vector<Arm> winners;            // ascending
  std::vector<bool> is_winner;
  std::size_t winner_count = 0;        // C
  std::vector<std::vector<Arm>> losses;  // arms each arm loses to
  std::size_t winner_losses = 0;       // L_C
  SquareGrid<double> gap;              // |p_ij - 0.5|
  double min_gap = 0.0;                // over i != j
  /// For a non-winner i, the opponent realizing the (L_C+1)-th largest gap
  /// among the arms i loses to (lowest index on equal gaps).
  std::vector<std::optional<Arm>> pivot;
  std::vector<double> pivot_gap;       // 0 for winners
  SquareGrid<double> adjusted_gap;     // pivot-adjusted pairwise gap
  double min_pivot_gap = 0.0;          // over non-winners; +inf if none
  /// min of the winner/non-winner gaps and min_pivot_gap; +inf when every
  /// arm is a winner.
  double bound_gap = 0.0;
};

/// Requires a valid matrix without ties (Error(kInvalidArgument) otherwise).
/// Throws Error(kInconsistent) if a non-winner has no more losses than a
/// winner, which cannot happen without ties.
GapSummary gap_summary(const PreferenceMatrix& matrix);

struct ScbQuantities {
  std::vector<double> cpld;          // normalized Copeland score
  std::vector<double> score_gap;     // max(cpld_max - cpld_i, 1/(K-1))
  std::vector<double> hardness;      // sum_j 1/gap_ij^2
  double max_hardness = 0.0;
  std::vector<double> score_gap_eps; // max(score_gap_i, eps*(1 - cpld_max))
};

ScbQuantities scb_quantities(const PreferenceMatrix& matrix, double eps);

/// Arms 0..2 form a cycle, each beats every arm from 3 on, and arms from 3 on
/// are totally ordered by index. Off-diagonal entries are 0.5 +/- gamma.
/// Requires K >= 4 and gamma in (0, 0.5).
PreferenceMatrix cyclic_copeland_matrix(std::size_t arms, double gamma);

/// Each pair drawn uniformly on [0,1], redrawn until |p - 0.5| >= min_margin.
/// Requires min_margin in (0, 0.5).
PreferenceMatrix random_matrix(std::size_t arms, Rng& rng, double min_margin);

/// Restriction to `indices`, in the given order. Indices must be distinct,
/// in range, and at least two.
PreferenceMatrix submatrix(const PreferenceMatrix& matrix, std::span<const Arm> indices);

/// Number of arms with at most `d` losses.
std::size_t count_with_at_most_losses(const PreferenceMatrix& matrix, std::size_t d);

/// sum over arms with cpld < 1 of 1/(1 - cpld).
double inverse_score_deficit_sum(const PreferenceMatrix& matrix);

/// 5(K-1)(ceil(log2(K-1)) + 1), the closed-form ceiling for the sum above.
double inverse_score_deficit_ceiling(std::size_t arms);

namespace fixtures {
/// K=3 cycle: arm 0 beats 1, 1 beats 2, 2 beats 0, all at 0.6.
PreferenceMatrix cycle3();
/// K=4 with two Copeland winners (arms 0 and 1) and no Condorcet winner.
PreferenceMatrix four_arm();
/// K=5 total order by index at 0.6; arm 0 is a Condorcet winner.
PreferenceMatrix condorcet5();
/// Looks up "P3CYCLE", "P4" or "PCOND5".
std::optional<PreferenceMatrix> by_name(const std::string& name);
}  // namespace fixtures

/// CSV with K rows of K decimals. The result is validated (ties allowed);
/// throws Error(kIo) on unreadable input and Error(kInvalidArgument) on
/// malformed or invalid content.
PreferenceMatrix read_matrix_csv(std::istream& in);
PreferenceMatrix load_matrix_csv(const std::string& path);

/// 17 significant digits, so values round-trip exactly.
void write_matrix_csv(std::ostream& out, const PreferenceMatrix& matrix);
void save_matrix_csv(const std::string& path, const PreferenceMatrix& matrix);

}  // namespace copeland
