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

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "copeland/prefmat.hpp"

namespace copeland {

/// Bernoulli KL divergence d(p, q), with 0 ln 0 = 0. Returns +infinity when
/// q is 0 or 1 and differs from p.
double kl_divergence(double p, double q);

/// Confidence radius in KL units after t samples: ln(4tK/delta) + 2 ln ln t,
/// with the ln ln t term clamped at 0.
double kl_threshold(std::uint64_t t, std::size_t arms, double delta);

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

/// {q in [0,1] : t d(S/t, q) <= kl_threshold(t)}, endpoints by bisection to
/// 1e-10.
Interval kl_interval(std::uint64_t successes, std::uint64_t t, std::size_t arms, double delta);

/// Draws one 0/1 reward for an arm. An empty result means the caller's
/// budget ran out; the round in progress is then discarded.
using RewardSource = std::function<std::optional<int>(Arm)>;

/// Elimination tournament over K Bernoulli arms with KL confidence sets,
/// returning a (1+eps)-approximate best arm with probability 1-delta.
///
/// Driven one round at a time so that a caller can stop it early and still
/// read a well-defined answer from best().
class KlEliminator {
 public:
  KlEliminator(std::size_t arms, double delta, double eps);

  /// Runs the initial pass or one elimination round. Returns false if the
  /// reward source gave out; state is then left as of the last full round.
  bool advance(const RewardSource& reward);

  /// True once the stopping rule holds.
  bool finished() const noexcept { return finished_; }

  /// Survivor with the highest lower confidence bound (lowest index on
  /// ties). Before any data this is the lowest surviving index.
  Arm best() const;

  std::size_t arms() const noexcept { return arms_; }
  const std::vector<Arm>& survivors() const noexcept { return survivors_; }
  bool survives(Arm a) const { return alive_[a] != 0; }
  std::uint64_t samples(Arm a) const { return samples_[a]; }
  std::uint64_t successes(Arm a) const { return successes_[a]; }
  const Interval& interval(Arm a) const { return intervals_[a]; }
  /// Samples per survivor so far (0 before the initial pass).
  std::uint64_t round() const noexcept { return round_; }

 private:
  bool stopping_rule_holds() const;

  std::size_t arms_;
  double delta_;
  double eps_;
  std::vector<char> alive_;
  std::vector<Arm> survivors_;
  std::vector<std::uint64_t> successes_;
  std::vector<std::uint64_t> samples_;
  std::vector<Interval> intervals_;
  std::uint64_t round_ = 0;
  bool finished_ = false;
};

struct Identification {
  Arm best = 0;
  std::vector<std::uint64_t> samples;  // per arm
  bool completed = false;              // false if the reward source gave out
};

/// Runs a KlEliminator to completion or until the reward source gives out.
Identification identify(const RewardSource& reward, std::size_t arms, double delta, double eps);

}  // namespace copeland
