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

#include "copeland/prefmat.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

#include "copeland/error.hpp"

namespace copeland {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string arm_pair(Arm i, Arm j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

std::vector<Arm> argmax_set(std::span<const double> values, double slack) {
  const double best = *std::max_element(values.begin(), values.end());
  std::vector<Arm> out;
  for (Arm i = 0; i < values.size(); ++i) {
    if (values[i] >= best - slack) out.push_back(i);
  }
  return out;
}

}  // namespace

PreferenceMatrix::PreferenceMatrix(std::size_t arms, std::vector<double> row_major)
    : arms_(arms), p_(std::move(row_major)) {
  if (arms_ < 2) {
    throw Error(ErrorCode::kInvalidArgument, "preference matrix needs at least 2 arms");
  }
  if (p_.size() != arms_ * arms_) {
    throw Error(ErrorCode::kInvalidArgument,
                "preference matrix expects " + std::to_string(arms_ * arms_) +
                    " values, got " + std::to_string(p_.size()));
  }
  for (double v : p_) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kInvalidArgument, "preference matrix has a non-finite entry");
    }
  }
}

PreferenceMatrix PreferenceMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  std::vector<double> flat;
  flat.reserve(rows.size() * rows.size());
  for (const auto& r : rows) {
    if (r.size() != rows.size()) {
      throw Error(ErrorCode::kInvalidArgument, "preference matrix rows must have K entries");
    }
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return PreferenceMatrix(rows.size(), std::move(flat));
}

std::string Violation::describe() const {
  switch (kind) {
    case Kind::kRange:
      return "entry outside [0,1] at " + arm_pair(i, j);
    case Kind::kDiagonal:
      return "diagonal entry is not 0.5 at " + arm_pair(i, j);
    case Kind::kComplement:
      return "row/column complement violated at " + arm_pair(i, j);
    case Kind::kTie:
      return "tie (p = 0.5) at " + arm_pair(i, j);
  }
  return "unknown violation";
}

std::vector<Violation> validate(const PreferenceMatrix& m, bool require_no_ties) {
  std::vector<Violation> out;
  const std::size_t k = m.arms();
  for (Arm i = 0; i < k; ++i) {
    for (Arm j = 0; j < k; ++j) {
      if (m(i, j) < 0.0 || m(i, j) > 1.0) out.push_back({Violation::Kind::kRange, i, j});
    }
  }
  for (Arm i = 0; i < k; ++i) {
    if (std::abs(m(i, i) - 0.5) > kProbabilityTolerance) {
      out.push_back({Violation::Kind::kDiagonal, i, i});
    }
  }
  for (Arm i = 0; i < k; ++i) {
    for (Arm j = i + 1; j < k; ++j) {
      if (std::abs(m(i, j) + m(j, i) - 1.0) > kProbabilityTolerance) {
        out.push_back({Violation::Kind::kComplement, i, j});
      }
      if (require_no_ties && (m(i, j) == 0.5 || m(j, i) == 0.5)) {
        out.push_back({Violation::Kind::kTie, i, j});
      }
    }
  }
  return out;
}

void require_valid(const PreferenceMatrix& m, bool require_no_ties) {
  const auto violations = validate(m, require_no_ties);
  if (!violations.empty()) {
    std::string what = "invalid preference matrix: " + violations.front().describe();
    if (violations.size() > 1) {
      what += " (+" + std::to_string(violations.size() - 1) + " more)";
    }
    throw Error(ErrorCode::kInvalidArgument, what);
  }
}

std::vector<int> copeland_scores(const PreferenceMatrix& m) {
  const std::size_t k = m.arms();
  std::vector<int> scores(k, 0);
  for (Arm i = 0; i < k; ++i) {
    for (Arm j = 0; j < k; ++j) {
      if (j != i && m(i, j) > 0.5) ++scores[i];
    }
  }
  return scores;
}

std::vector<double> normalized_copeland_scores(const PreferenceMatrix& m) {
  const auto scores = copeland_scores(m);
  const double denom = static_cast<double>(m.arms() - 1);
  std::vector<double> out(scores.size());
  std::transform(scores.begin(), scores.end(), out.begin(),
                 [denom](int s) { return s / denom; });
  return out;
}

std::vector<Arm> copeland_winners(const PreferenceMatrix& m) {
  const auto scores = copeland_scores(m);
  const int best = *std::max_element(scores.begin(), scores.end());
  std::vector<Arm> out;
  for (Arm i = 0; i < scores.size(); ++i) {
    if (scores[i] == best) out.push_back(i);
  }
  return out;
}

std::vector<Arm> borda_winners(const PreferenceMatrix& m) {
  const std::size_t k = m.arms();
  std::vector<double> sums(k, 0.0);
  for (Arm i = 0; i < k; ++i) {
    for (Arm j = 0; j < k; ++j) {
      if (j != i) sums[i] += m(i, j);
    }
  }
  return argmax_set(sums, 1e-12);
}

std::vector<double> random_walk_distribution(const PreferenceMatrix& m) {
  const std::size_t k = m.arms();
  const double kd = static_cast<double>(k);
  // Row-stochastic transition matrix.
  SquareGrid<double> move(k, 0.0);
  for (Arm i = 0; i < k; ++i) {
    double leave = 0.0;
    for (Arm j = 0; j < k; ++j) {
      if (j == i) continue;
      move(i, j) = m(j, i) / kd;
      leave += move(i, j);
    }
    move(i, i) = 1.0 - leave;
  }

  std::vector<double> pi(k, 1.0 / kd);
  std::vector<double> next(k);
  constexpr int kMaxIterations = 1'000'000;
  for (int it = 0; it < kMaxIterations; ++it) {
    std::fill(next.begin(), next.end(), 0.0);
    for (Arm i = 0; i < k; ++i) {
      for (Arm j = 0; j < k; ++j) next[j] += pi[i] * move(i, j);
    }
    double residual = 0.0;
    for (Arm j = 0; j < k; ++j) residual += std::abs(next[j] - pi[j]);
    pi.swap(next);
    if (residual < 1e-10) return pi;
  }
  throw Error(ErrorCode::kNonConvergence, "random-walk power iteration did not converge");
}

std::vector<Arm> random_walk_winners(const PreferenceMatrix& m) {
  const auto pi = random_walk_distribution(m);
  return argmax_set(pi, 1e-9);
}

std::optional<Arm> condorcet_winner(const PreferenceMatrix& m) {
  const auto scores = copeland_scores(m);
  const int all = static_cast<int>(m.arms()) - 1;
  for (Arm i = 0; i < scores.size(); ++i) {
    if (scores[i] == all) return i;
  }
  return std::nullopt;
}

GapSummary gap_summary(const PreferenceMatrix& m) {
  require_valid(m, /*require_no_ties=*/true);
  const std::size_t k = m.arms();

  GapSummary s;
  s.copeland_scores = copeland_scores(m);
  const int best = *std::max_element(s.copeland_scores.begin(), s.copeland_scores.end());
  s.is_winner.assign(k, false);
  for (Arm i = 0; i < k; ++i) {
    if (s.copeland_scores[i] == best) {
      s.winners.push_back(i);
      s.is_winner[i] = true;
    }
  }
  s.winner_count = s.winners.size();

  s.losses.resize(k);
  s.gap = SquareGrid<double>(k, 0.0);
  s.min_gap = kInf;
  for (Arm i = 0; i < k; ++i) {
    for (Arm j = 0; j < k; ++j) {
      if (j == i) continue;
      s.gap(i, j) = std::abs(m(i, j) - 0.5);
      s.min_gap = std::min(s.min_gap, s.gap(i, j));
      if (m(i, j) < 0.5) s.losses[i].push_back(j);
    }
  }
  s.winner_losses = s.losses[s.winners.front()].size();

  s.pivot.assign(k, std::nullopt);
  s.pivot_gap.assign(k, 0.0);
  s.min_pivot_gap = kInf;
  for (Arm i = 0; i < k; ++i) {
    if (s.is_winner[i]) continue;
    if (s.losses[i].size() <= s.winner_losses) {
      throw Error(ErrorCode::kInconsistent,
                  "non-winner " + std::to_string(i) + " has no more losses than a winner");
    }
    std::vector<Arm> by_gap = s.losses[i];
    std::stable_sort(by_gap.begin(), by_gap.end(),
                     [&](Arm a, Arm b) { return s.gap(i, a) > s.gap(i, b); });
    // losses[i] is ascending, so the first arm at the selected gap is the
    // lowest index realizing it
    const double at = s.gap(i, by_gap[s.winner_losses]);
    const Arm pivot = *std::find_if(s.losses[i].begin(), s.losses[i].end(),
                                    [&](Arm j) { return s.gap(i, j) == at; });
    s.pivot[i] = pivot;
    s.pivot_gap[i] = s.gap(i, pivot);
    s.min_pivot_gap = std::min(s.min_pivot_gap, s.pivot_gap[i]);
  }

  s.adjusted_gap = SquareGrid<double>(k, 0.0);
  for (Arm i = 0; i < k; ++i) {
    for (Arm j = 0; j < k; ++j) {
      if (j == i) continue;
      s.adjusted_gap(i, j) = m(i, j) >= 0.5 ? s.pivot_gap[i] + s.gap(i, j)
                                            : std::max(s.pivot_gap[i], s.gap(i, j));
    }
  }

  double cross = kInf;
  for (Arm w : s.winners) {
    for (Arm j = 0; j < k; ++j) {
      if (!s.is_winner[j]) cross = std::min(cross, s.gap(w, j));
    }
  }
  s.bound_gap = std::min(cross, s.min_pivot_gap);
  return s;
}

ScbQuantities scb_quantities(const PreferenceMatrix& m, double eps) {
  require_valid(m, /*require_no_ties=*/true);
  if (!(eps >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "eps must be >= 0");
  const std::size_t k = m.arms();
  const double floor_gap = 1.0 / static_cast<double>(k - 1);

  ScbQuantities q;
  q.cpld = normalized_copeland_scores(m);
  const double top = *std::max_element(q.cpld.begin(), q.cpld.end());
  q.score_gap.resize(k);
  q.hardness.assign(k, 0.0);
  q.score_gap_eps.resize(k);
  for (Arm i = 0; i < k; ++i) {
    q.score_gap[i] = std::max(top - q.cpld[i], floor_gap);
    for (Arm j = 0; j < k; ++j) {
      if (j == i) continue;
      const double g = std::abs(m(i, j) - 0.5);
      q.hardness[i] += 1.0 / (g * g);
    }
    q.score_gap_eps[i] = std::max(q.score_gap[i], eps * (1.0 - top));
  }
  q.max_hardness = *std::max_element(q.hardness.begin(), q.hardness.end());
  return q;
}

PreferenceMatrix cyclic_copeland_matrix(std::size_t arms, double gamma) {
  if (arms < 4) throw Error(ErrorCode::kInvalidArgument, "cyclic matrix needs K >= 4");
  if (!(gamma > 0.0 && gamma < 0.5)) {
    throw Error(ErrorCode::kInvalidArgument, "gamma must lie in (0, 0.5)");
  }
  SquareGrid<double> p(arms, 0.5);
  auto set_winner = [&](Arm winner, Arm loser) {
    p(winner, loser) = 0.5 + gamma;
    p(loser, winner) = 1.0 - p(winner, loser);
  };
  set_winner(0, 1);
  set_winner(1, 2);
  set_winner(2, 0);
  for (Arm i = 0; i < arms; ++i) {
    for (Arm j = std::max<Arm>(i + 1, 3); j < arms; ++j) set_winner(i, j);
  }
  return PreferenceMatrix(arms, p.cells());
}

PreferenceMatrix random_matrix(std::size_t arms, Rng& rng, double min_margin) {
  if (!(min_margin > 0.0 && min_margin < 0.5)) {
    throw Error(ErrorCode::kInvalidArgument, "min_margin must lie in (0, 0.5)");
  }
  SquareGrid<double> p(arms, 0.5);
  for (Arm i = 0; i < arms; ++i) {
    for (Arm j = i + 1; j < arms; ++j) {
      double v = rng.uniform();
      while (std::abs(v - 0.5) < min_margin) v = rng.uniform();
      p(i, j) = v;
      p(j, i) = 1.0 - v;
    }
  }
  return PreferenceMatrix(arms, p.cells());
}

PreferenceMatrix submatrix(const PreferenceMatrix& m, std::span<const Arm> indices) {
  std::vector<bool> seen(m.arms(), false);
  for (Arm a : indices) {
    if (a >= m.arms()) {
      throw Error(ErrorCode::kInvalidArgument, "submatrix index out of range: " + std::to_string(a));
    }
    if (seen[a]) {
      throw Error(ErrorCode::kInvalidArgument, "duplicate submatrix index: " + std::to_string(a));
    }
    seen[a] = true;
  }
  const std::size_t k = indices.size();
  std::vector<double> flat;
  flat.reserve(k * k);
  for (Arm a : indices) {
    for (Arm b : indices) flat.push_back(m(a, b));
  }
  return PreferenceMatrix(k, std::move(flat));
}

std::size_t count_with_at_most_losses(const PreferenceMatrix& m, std::size_t d) {
  const auto scores = copeland_scores(m);
  const long threshold = static_cast<long>(m.arms()) - 1 - static_cast<long>(d);
  return static_cast<std::size_t>(
      std::count_if(scores.begin(), scores.end(), [&](int s) { return s >= threshold; }));
}

double inverse_score_deficit_sum(const PreferenceMatrix& m) {
  const auto scores = copeland_scores(m);
  const long top = static_cast<long>(m.arms()) - 1;
  double sum = 0.0;
  for (int s : scores) {
    if (s < top) sum += static_cast<double>(top) / static_cast<double>(top - s);
  }
  return sum;
}

double inverse_score_deficit_ceiling(std::size_t arms) {
  const double km1 = static_cast<double>(arms - 1);
  return 5.0 * km1 * (std::ceil(std::log2(km1)) + 1.0);
}

namespace fixtures {

PreferenceMatrix cycle3() {
  return PreferenceMatrix::from_rows({{0.5, 0.6, 0.4}, {0.4, 0.5, 0.6}, {0.6, 0.4, 0.5}});
}

PreferenceMatrix four_arm() {
  return PreferenceMatrix::from_rows({{0.5, 0.6, 0.6, 0.4},
                                      {0.4, 0.5, 0.6, 0.6},
                                      {0.4, 0.4, 0.5, 0.6},
                                      {0.6, 0.4, 0.4, 0.5}});
}

PreferenceMatrix condorcet5() {
  std::vector<std::vector<double>> rows(5, std::vector<double>(5, 0.5));
  for (Arm i = 0; i < 5; ++i) {
    for (Arm j = 0; j < 5; ++j) {
      if (i < j) rows[i][j] = 0.6;
      if (i > j) rows[i][j] = 0.4;
    }
  }
  return PreferenceMatrix::from_rows(rows);
}

std::optional<PreferenceMatrix> by_name(const std::string& name) {
  if (name == "P3CYCLE") return cycle3();
  if (name == "P4") return four_arm();
  if (name == "PCOND5") return condorcet5();
  return std::nullopt;
}

}  // namespace fixtures

}  // namespace copeland
