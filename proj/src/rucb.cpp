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

#include "copeland/rucb.hpp"

#include <algorithm>

#include "copeland/error.hpp"

namespace copeland {

RucbLearner::RucbLearner(std::size_t arms, double alpha)
    : arms_(arms), alpha_(alpha), all_arms_(arms) {
  if (arms < 2) throw Error(ErrorCode::kInvalidArgument, "RUCB needs at least 2 arms");
  if (!(alpha > 0.5)) throw Error(ErrorCode::kInvalidArgument, "RUCB needs alpha > 0.5");
  for (Arm j = 0; j < arms; ++j) all_arms_[j] = j;
}

Duel RucbLearner::step(ComparisonOracle& oracle) {
  if (oracle.arms() != arms_) {
    throw Error(ErrorCode::kInvalidArgument, "oracle and learner disagree on the arm count");
  }
  confidence_matrices(oracle.wins(), oracle.steps() + 1, alpha_, bounds_);
  Rng& rng = oracle.rng();

  candidates_.clear();
  for (Arm i = 0; i < arms_; ++i) {
    bool optimistic = true;
    for (Arm j = 0; j < arms_ && optimistic; ++j) {
      if (j != i && bounds_.upper(i, j) < 0.5) optimistic = false;
    }
    if (optimistic) candidates_.push_back(i);
  }

  if (champion_ && !std::binary_search(candidates_.begin(), candidates_.end(), *champion_)) {
    champion_.reset();
  }

  Arm c = 0;
  if (candidates_.empty()) {
    c = rng.below(arms_);
  } else if (candidates_.size() == 1) {
    champion_ = candidates_.front();
    c = *champion_;
  } else if (champion_ && rng.uniform() < 0.5) {
    c = *champion_;
  } else if (champion_) {
    // Uniform over the other candidates.
    std::size_t pick = rng.below(candidates_.size() - 1);
    for (Arm a : candidates_) {
      if (a == *champion_) continue;
      if (pick-- == 0) {
        c = a;
        break;
      }
    }
  } else {
    c = candidates_[rng.below(candidates_.size())];
  }

  const Arm d = pick_challenger(bounds_, c, all_arms_);
  oracle.compare(c, d);
  return {c, d};
}

RegretTrace run_rucb(const PreferenceMatrix& matrix, double alpha, std::uint64_t horizon,
                     std::uint64_t seed, double checkpoint_ratio) {
  if (horizon < 1) throw Error(ErrorCode::kInvalidArgument, "horizon must be >= 1");
  ComparisonOracle oracle(matrix, seed, checkpoint_ratio);
  RucbLearner learner(matrix.arms(), alpha);
  for (std::uint64_t t = 0; t < horizon; ++t) learner.step(oracle);
  oracle.close_trace();
  RegretTrace trace;
  trace.algorithm = "rucb";
  trace.seed = seed;
  trace.checkpoints = oracle.checkpoints();
  return trace;
}

}  // namespace copeland
