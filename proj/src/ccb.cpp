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

#include "copeland/ccb.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "copeland/error.hpp"

namespace copeland {

void confidence_matrices(const SquareGrid<std::uint64_t>& wins, std::uint64_t t, double alpha,
                         ConfidenceBounds& out) {
  const std::size_t k = wins.size();
  if (out.upper.size() != k) {
    out.upper = SquareGrid<double>(k, 0.5);
    out.lower = SquareGrid<double>(k, 0.5);
  }
  const double scaled_log = alpha * std::log(static_cast<double>(t));
  for (Arm i = 0; i < k; ++i) {
    out.upper(i, i) = 0.5;
    out.lower(i, i) = 0.5;
    for (Arm j = i + 1; j < k; ++j) {
      const std::uint64_t n = wins(i, j) + wins(j, i);
      if (n == 0) {
        out.upper(i, j) = out.upper(j, i) = 1.0;
        out.lower(i, j) = out.lower(j, i) = 0.0;
        continue;
      }
      const double nd = static_cast<double>(n);
      const double mean = static_cast<double>(wins(i, j)) / nd;
      const double radius = std::sqrt(scaled_log / nd);
      out.upper(i, j) = std::min(1.0, mean + radius);
      out.lower(i, j) = std::max(0.0, mean - radius);
      // Mirror entries are exact complements.
      out.lower(j, i) = 1.0 - out.upper(i, j);
      out.upper(j, i) = 1.0 - out.lower(i, j);
    }
  }
}

ConfidenceBounds confidence_matrices(const SquareGrid<std::uint64_t>& wins, std::uint64_t t,
                                     double alpha) {
  if (t < 1) throw Error(ErrorCode::kInvalidArgument, "confidence step must be >= 1");
  ConfidenceBounds out;
  confidence_matrices(wins, t, alpha, out);
  return out;
}

Arm pick_challenger(const ConfidenceBounds& b, Arm champion, const std::vector<Arm>& pool) {
  bool found = false;
  Arm best = champion;
  double best_upper = 0.0;
  for (Arm j : pool) {
    if (j == champion || b.lower(j, champion) > 0.5) continue;
    const double u = b.upper(j, champion);
    if (!found || u > best_upper || (u == best_upper && j < best)) {
      found = true;
      best = j;
      best_upper = u;
    }
  }
  // The champion itself is always eligible with upper = 0.5.
  if (!found || best_upper < b.upper(champion, champion)) return champion;
  return best;
}

CcbLearner::CcbLearner(std::size_t arms, double alpha)
    : arms_(arms), alpha_(alpha), all_arms_(arms), optimistic_(arms, 0), pessimistic_(arms, 0) {
  for (Arm j = 0; j < arms; ++j) all_arms_[j] = j;
  if (arms < 2) throw Error(ErrorCode::kInvalidArgument, "CCB needs at least 2 arms");
  if (!(alpha > 0.5)) throw Error(ErrorCode::kInvalidArgument, "CCB needs alpha > 0.5");
  reset();
}

void CcbLearner::reset() {
  in_candidates_.assign(arms_, 1);
  shortlists_.assign(arms_, {});
  loss_estimate_ = arms_;
}

std::vector<Arm> CcbLearner::candidates() const {
  std::vector<Arm> out;
  for (Arm i = 0; i < arms_; ++i) {
    if (in_candidates_[i]) out.push_back(i);
  }
  return out;
}

Duel CcbLearner::step(ComparisonOracle& oracle) {
  if (oracle.arms() != arms_) {
    throw Error(ErrorCode::kInvalidArgument, "oracle and learner disagree on the arm count");
  }
  confidence_matrices(oracle.wins(), oracle.steps() + 1, alpha_, bounds_);

  int best_optimistic = 0;
  for (Arm i = 0; i < arms_; ++i) {
    int hi = 0;
    int lo = 0;
    for (Arm k = 0; k < arms_; ++k) {
      if (k == i) continue;
      hi += bounds_.upper(i, k) >= 0.5;
      lo += bounds_.lower(i, k) >= 0.5;
    }
    optimistic_[i] = hi;
    pessimistic_[i] = lo;
    best_optimistic = std::max(best_optimistic, hi);
  }
  std::vector<Arm> top;
  for (Arm i = 0; i < arms_; ++i) {
    if (optimistic_[i] == best_optimistic) top.push_back(i);
  }

  Rng& rng = oracle.rng();
  update_sets(rng, top);
  const Duel duel = choose(rng, std::move(top));
  oracle.compare(duel.first, duel.second);
  return duel;
}

void CcbLearner::update_sets(Rng& rng, const std::vector<Arm>& top) {
  trace_ = {};

  // Reset when a shortlisted opponent turns out to be confidently beaten.
  for (Arm i = 0; i < arms_ && !trace_.reset_disproven; ++i) {
    for (Arm j : shortlists_[i]) {
      if (bounds_.lower(i, j) > 0.5) {
        trace_.reset_disproven = true;
        break;
      }
    }
  }
  if (trace_.reset_disproven) reset();

  // Drop candidates whose optimistic score is below someone's pessimistic one.
  const int best_pessimistic = *std::max_element(pessimistic_.begin(), pessimistic_.end());
  bool any_left = false;
  for (Arm i = 0; i < arms_; ++i) {
    if (!in_candidates_[i]) continue;
    if (optimistic_[i] < best_pessimistic) {
      in_candidates_[i] = 0;
      if (shortlists_[i].size() != loss_estimate_ + 1) {
        shortlists_[i].clear();
        for (Arm k = 0; k < arms_; ++k) {
          if (bounds_.upper(i, k) < 0.5) shortlists_[i].push_back(k);
        }
      }
    } else {
      any_left = true;
    }
  }
  if (!any_left) {
    trace_.reset_emptied = true;
    reset();
  }

  // Promote arms whose score is pinned down; ascending index order.
  for (Arm i : top) {
    if (optimistic_[i] != pessimistic_[i]) continue;
    trace_.promoted = true;
    in_candidates_[i] = 1;
    shortlists_[i].clear();
    loss_estimate_ = arms_ - 1 - static_cast<std::size_t>(optimistic_[i]);
    const std::size_t keep = loss_estimate_ + 1;
    for (Arm j = 0; j < arms_; ++j) {
      if (j == i) continue;
      auto& list = shortlists_[j];
      if (list.size() < keep) {
        list.clear();
      } else if (list.size() > keep) {
        for (std::size_t n = 0; n < keep; ++n) {
          std::swap(list[n], list[n + rng.below(list.size() - n)]);
        }
        list.resize(keep);
        std::sort(list.begin(), list.end());
      }
    }
  }
}

Duel CcbLearner::choose(Rng& rng, std::vector<Arm> top) {
  // Occasionally re-test a shortlisted pair whose interval straddles 0.5.
  if (rng.uniform() < 0.25) {
    std::vector<Duel> open;
    for (Arm i = 0; i < arms_; ++i) {
      for (Arm j : shortlists_[i]) {
        if (bounds_.lower(i, j) <= 0.5 && 0.5 <= bounds_.upper(i, j)) open.push_back({i, j});
      }
    }
    if (!open.empty()) {
      trace_.from_shortlists = true;
      return open[rng.below(open.size())];
    }
  }

  std::vector<Arm> preferred;
  for (Arm i : top) {
    if (in_candidates_[i]) preferred.push_back(i);
  }
  if (!preferred.empty() && rng.uniform() < 2.0 / 3.0) top = std::move(preferred);

  const Arm champion = top[rng.below(top.size())];

  const auto& pool = rng.uniform() < 0.5 ? shortlists_[champion] : all_arms_;
  const Arm challenger = pick_challenger(bounds_, champion, pool);
  if (bounds_.lower(challenger, champion) > 0.5) {
    throw std::logic_error("CCB picked a challenger that is confidently beaten");
  }
  return {champion, challenger};
}

RegretTrace run_ccb(const PreferenceMatrix& matrix, double alpha, std::uint64_t horizon,
                    std::uint64_t seed, double checkpoint_ratio) {
  if (horizon < 1) throw Error(ErrorCode::kInvalidArgument, "horizon must be >= 1");
  ComparisonOracle oracle(matrix, seed, checkpoint_ratio);
  CcbLearner learner(matrix.arms(), alpha);
  for (std::uint64_t t = 0; t < horizon; ++t) learner.step(oracle);
  oracle.close_trace();
  RegretTrace trace;
  trace.algorithm = "ccb";
  trace.seed = seed;
  trace.checkpoints = oracle.checkpoints();
  return trace;
}

}  // namespace copeland
