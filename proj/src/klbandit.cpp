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

#include "copeland/klbandit.hpp"

#include <cmath>
#include <limits>
#include <unordered_map>

#include "copeland/error.hpp"

namespace copeland {

namespace {

constexpr double kBisectionTolerance = 1e-10;

}  // namespace

double kl_divergence(double p, double q) {
  if (p == q) return 0.0;
  if (q <= 0.0 || q >= 1.0) return std::numeric_limits<double>::infinity();
  double d = 0.0;
  if (p > 0.0) d += p * std::log(p / q);
  if (p < 1.0) d += (1.0 - p) * std::log((1.0 - p) / (1.0 - q));
  return d;
}

double kl_threshold(std::uint64_t t, std::size_t arms, double delta) {
  const double td = static_cast<double>(t);
  const double loglog = td > 1.0 ? std::log(std::log(td)) : 0.0;
  return std::log(4.0 * td * static_cast<double>(arms) / delta) + 2.0 * std::max(loglog, 0.0);
}

Interval kl_interval(std::uint64_t successes, std::uint64_t t, std::size_t arms, double delta) {
  if (t == 0 || successes > t) {
    throw Error(ErrorCode::kInvalidArgument, "kl_interval needs 0 <= S <= t and t >= 1");
  }
  const double mean = static_cast<double>(successes) / static_cast<double>(t);
  const double budget = kl_threshold(t, arms, delta) / static_cast<double>(t);
  auto inside = [&](double q) { return kl_divergence(mean, q) <= budget; };

  Interval out{mean, mean};
  // d(mean, .) decreases on [0, mean] and increases on [mean, 1].
  if (inside(0.0)) {
    out.lo = 0.0;
  } else {
    double outer = 0.0;
    double inner = mean;
    while (inner - outer > kBisectionTolerance) {
      const double mid = 0.5 * (outer + inner);
      (inside(mid) ? inner : outer) = mid;
    }
    out.lo = inner;
  }
  if (inside(1.0)) {
    out.hi = 1.0;
  } else {
    double inner = mean;
    double outer = 1.0;
    while (outer - inner > kBisectionTolerance) {
      const double mid = 0.5 * (inner + outer);
      (inside(mid) ? inner : outer) = mid;
    }
    out.hi = inner;
  }
  return out;
}

KlEliminator::KlEliminator(std::size_t arms, double delta, double eps)
    : arms_(arms),
      delta_(delta),
      eps_(eps),
      alive_(arms, 1),
      successes_(arms, 0),
      samples_(arms, 0),
      intervals_(arms) {
  if (arms == 0) throw Error(ErrorCode::kInvalidArgument, "KL elimination needs at least 1 arm");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "delta must lie in (0,1)");
  }
  if (!(eps >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "eps must be >= 0");
  survivors_.resize(arms);
  for (Arm a = 0; a < arms; ++a) survivors_[a] = a;
}

Arm KlEliminator::best() const {
  Arm best = survivors_.front();
  for (Arm a : survivors_) {
    if (intervals_[a].lo > intervals_[best].lo) best = a;
  }
  return best;
}

bool KlEliminator::stopping_rule_holds() const {
  if (survivors_.size() == 1) return true;
  double max_lo = 0.0;
  double max_hi = 0.0;
  for (Arm a : survivors_) {
    max_lo = std::max(max_lo, intervals_[a].lo);
    max_hi = std::max(max_hi, intervals_[a].hi);
  }
  const double denom = 1.0 - max_hi;
  if (denom <= 0.0) return false;
  return (1.0 - max_lo) / denom <= 1.0 + eps_;
}

bool KlEliminator::advance(const RewardSource& reward) {
  if (finished_) return true;

  std::vector<int> draws(survivors_.size());
  for (std::size_t n = 0; n < survivors_.size(); ++n) {
    const auto r = reward(survivors_[n]);
    if (!r) return false;
    draws[n] = *r;
  }
  ++round_;
  for (std::size_t n = 0; n < survivors_.size(); ++n) {
    successes_[survivors_[n]] += static_cast<std::uint64_t>(draws[n] != 0);
    samples_[survivors_[n]] = round_;
  }

  if (round_ == 1) {
    // Initial pass: intervals stay [0,1].
    finished_ = stopping_rule_holds();
    return true;
  }

  std::unordered_map<std::uint64_t, Interval> cache;
  for (Arm a : survivors_) {
    auto it = cache.find(successes_[a]);
    if (it == cache.end()) {
      it = cache.emplace(successes_[a], kl_interval(successes_[a], round_, arms_, delta_)).first;
    }
    intervals_[a] = it->second;
  }

  double max_lo = 0.0;
  for (Arm a : survivors_) max_lo = std::max(max_lo, intervals_[a].lo);
  std::vector<Arm> kept;
  kept.reserve(survivors_.size());
  for (Arm a : survivors_) {
    if (intervals_[a].hi < max_lo) {
      alive_[a] = 0;
    } else {
      kept.push_back(a);
    }
  }
  survivors_ = std::move(kept);
  finished_ = stopping_rule_holds();
  return true;
}

Identification identify(const RewardSource& reward, std::size_t arms, double delta, double eps) {
  KlEliminator elim(arms, delta, eps);
  Identification out;
  while (!elim.finished()) {
    if (!elim.advance(reward)) break;
  }
  out.completed = elim.finished();
  out.best = elim.best();
  out.samples.resize(arms);
  for (Arm a = 0; a < arms; ++a) out.samples[a] = elim.samples(a);
  return out;
}

}  // namespace copeland
