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

#include <algorithm>
#include <cmath>

#include <doctest.h>

#include "copeland/error.hpp"
#include "copeland/klbandit.hpp"
#include "copeland/rng.hpp"
#include "support/reference.hpp"

using namespace copeland;

namespace {

RewardSource bernoulli_arms(const std::vector<double>& means, Rng& rng) {
  return [&rng, means](Arm a) -> std::optional<int> { return rng.bernoulli(means[a]) ? 1 : 0; };
}

}  // namespace

TEST_CASE("Bernoulli divergence") {
  CHECK(kl_divergence(0.5, 0.5) == 0.0);
  CHECK(kl_divergence(0.25, 0.5) == doctest::Approx(0.13081203594113697).epsilon(1e-14));
  CHECK(kl_divergence(0.0, 0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK(std::isinf(kl_divergence(0.3, 0.0)));
  CHECK(std::isinf(kl_divergence(0.3, 1.0)));
  CHECK(kl_divergence(1.0, 1.0) == 0.0);
  Rng rng(2);
  for (int n = 0; n < 200; ++n) {
    const double p = rng.uniform();
    const double q = 0.001 + 0.998 * rng.uniform();
    CHECK(kl_divergence(p, q) == doctest::Approx(reference::kl(p, q)).epsilon(1e-12));
    CHECK(kl_divergence(p, q) >= 0.0);
  }
}

TEST_CASE("threshold clamps the iterated log") {
  CHECK(kl_threshold(2, 2, 0.1) == doctest::Approx(std::log(160.0)));
  CHECK(kl_threshold(100, 2, 0.1) == doctest::Approx(12.041556072277775).epsilon(1e-12));
  // beta(t)/t shrinks
  for (std::uint64_t t = 3; t < 2000; ++t) {
    CHECK(kl_threshold(t + 1, 5, 0.05) / static_cast<double>(t + 1) <
          kl_threshold(t, 5, 0.05) / static_cast<double>(t));
  }
}

TEST_CASE("interval endpoints solve the divergence equation") {
  const Interval iv = kl_interval(50, 100, 2, 0.1);
  CHECK(iv.lo == doctest::Approx(0.26868546813535016).epsilon(1e-9));
  CHECK(iv.hi == doctest::Approx(0.7313145318646499).epsilon(1e-9));
  const double beta = kl_threshold(100, 2, 0.1);
  CHECK(100 * kl_divergence(0.5, iv.lo) == doctest::Approx(beta).epsilon(1e-6));
  CHECK(100 * kl_divergence(0.5, iv.hi) == doctest::Approx(beta).epsilon(1e-6));

  const Interval wide = kl_interval(1, 2, 10, 0.01);
  // two samples at a strict level leave almost nothing excluded
  CHECK(wide.lo < 1e-4);
  CHECK(wide.hi > 1 - 1e-4);
  CHECK(wide.lo == doctest::Approx(1 - wide.hi).epsilon(1e-6));

  Rng rng(6);
  for (int n = 0; n < 300; ++n) {
    const std::uint64_t t = 2 + rng.below(5000);
    const std::uint64_t s = rng.below(t + 1);
    const Interval x = kl_interval(s, t, 5, 0.05);
    const double mean = static_cast<double>(s) / static_cast<double>(t);
    CHECK(x.lo <= mean);
    CHECK(mean <= x.hi);
    const double beta5 = kl_threshold(t, 5, 0.05);
    const double tt = static_cast<double>(t);
    CHECK(x.lo == doctest::Approx(reference::kl_root(mean, tt, beta5, false)).epsilon(1e-8));
    CHECK(x.hi == doctest::Approx(reference::kl_root(mean, tt, beta5, true)).epsilon(1e-8));
  }
  CHECK_THROWS_AS(kl_interval(3, 2, 2, 0.1), Error);
}

TEST_CASE("single arm finishes after the first pass") {
  Rng rng(1);
  const auto r = identify(bernoulli_arms({0.3}, rng), 1, 0.05, 0.0);
  CHECK(r.completed);
  CHECK(r.best == 0);
  CHECK(r.samples[0] == 1);
}

TEST_CASE("elimination bookkeeping") {
  Rng rng(4);
  const std::vector<double> means{0.9, 0.2, 0.5};
  KlEliminator e(3, 0.05, 0.0);
  const auto reward = bernoulli_arms(means, rng);
  CHECK(e.best() == 0);
  std::vector<Arm> seen_dead;
  while (!e.finished()) {
    REQUIRE(e.advance(reward));
    for (Arm a = 0; a < 3; ++a) {
      if (!e.survives(a)) {
        if (std::find(seen_dead.begin(), seen_dead.end(), a) == seen_dead.end()) seen_dead.push_back(a);
        continue;
      }
      const double mean = static_cast<double>(e.successes(a)) / static_cast<double>(e.samples(a));
      CHECK(e.interval(a).lo <= mean);
      CHECK(mean <= e.interval(a).hi);
      CHECK(e.samples(a) == e.round());
    }
    for (Arm a : seen_dead) CHECK_FALSE(e.survives(a));
  }
  for (Arm a : e.survivors()) CHECK(e.interval(e.best()).lo >= e.interval(a).lo);
  CHECK(e.best() == 0);
}

TEST_CASE("a dry reward source leaves the round unapplied") {
  int budget = 7;
  RewardSource src = [&](Arm) -> std::optional<int> {
    if (budget-- <= 0) return std::nullopt;
    return 1;
  };
  KlEliminator e(3, 0.1, 0.0);
  CHECK(e.advance(src));
  CHECK(e.advance(src));
  CHECK_FALSE(e.advance(src));
  CHECK(e.round() == 2);
  CHECK(e.samples(0) == 2);
  const auto r = identify([](Arm) -> std::optional<int> { return std::nullopt; }, 2, 0.1, 0.0);
  CHECK_FALSE(r.completed);
  CHECK(r.best == 0);
}

TEST_CASE("identify picks the best arm on two well separated arms") {
  int correct = 0;
  for (std::uint64_t s = 0; s < 50; ++s) {
    Rng rng(1000 + s);
    if (identify(bernoulli_arms({0.9, 0.1}, rng), 2, 0.05, 0.0).best == 0) ++correct;
  }
  CHECK(correct >= 48);
}

TEST_CASE("a positive eps stops early on near ties") {
  Rng rng(8);
  const auto r = identify(bernoulli_arms({0.9, 0.9}, rng), 2, 0.05, 1.0);
  CHECK(r.completed);
}

TEST_CASE("eliminator argument checks") {
  CHECK_THROWS_AS(KlEliminator(0, 0.1, 0.0), Error);
  CHECK_THROWS_AS(KlEliminator(2, 1.0, 0.0), Error);
  CHECK_THROWS_AS(KlEliminator(2, 0.1, -1.0), Error);
}
