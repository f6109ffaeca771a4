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

// Acceptance run. Prints one PASS/FAIL line per criterion and exits 1 if
// any criterion fails. Takes an optional list of criterion numbers to run.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "copeland/bounds.hpp"
#include "copeland/ccb.hpp"
#include "copeland/harness.hpp"
#include "copeland/klbandit.hpp"
#include "copeland/oracle.hpp"
#include "copeland/prefmat.hpp"
#include "copeland/rng.hpp"
#include "copeland/rucb.hpp"
#include "copeland/scb.hpp"
#include "support/reference.hpp"

using namespace copeland;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

reference::Rows rows_of(const PreferenceMatrix& m) {
  reference::Rows r(m.arms());
  for (Arm i = 0; i < m.arms(); ++i) r[i].assign(m.row(i).begin(), m.row(i).end());
  return r;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2;
}

double mean(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

// 1000 matrices, K in [2, 20], shared by criteria 1 and 2
const std::vector<PreferenceMatrix>& combinatorics_suite() {
  static const std::vector<PreferenceMatrix> suite = [] {
    Rng rng(101);
    std::vector<PreferenceMatrix> out;
    for (int n = 0; n < 1000; ++n) out.push_back(random_matrix(2 + rng.below(19), rng, 0.01));
    return out;
  }();
  return suite;
}

Outcome loss_counting() {
  long violations = 0, checks = 0;
  for (const auto& m : combinatorics_suite()) {
    const auto s = copeland_scores(m);
    const long k = static_cast<long>(m.arms());
    for (long d = 0; d < k; ++d) {
      long n = 0;
      for (int c : s) n += c >= k - 1 - d;
      ++checks;
      if (n > 2 * d + 1) ++violations;
    }
  }
  return {violations == 0, fmt("violations=%ld of %ld (matrix, d) checks", violations, checks)};
}

Outcome deficit_sum() {
  long violations = 0;
  double worst = 0;
  for (const auto& m : combinatorics_suite()) {
    const double sum = inverse_score_deficit_sum(m);
    const double cap = inverse_score_deficit_ceiling(m.arms());
    if (sum > cap) ++violations;
    worst = std::max(worst, sum / cap);
  }
  return {violations == 0, fmt("violations=%ld, largest sum/ceiling=%.4f", violations, worst)};
}

Outcome oracle_equivalence() {
  Rng rng(303);
  long mismatches = 0;
  for (int n = 0; n < 500; ++n) {
    const auto m = random_matrix(2 + rng.below(11), rng, 0.01);
    const double eps = rng.uniform();
    const auto g = gap_summary(m);
    const auto r = reference::gaps(rows_of(m));
    bool same = g.winner_losses == static_cast<std::size_t>(r.lc) && g.min_gap == r.delta_min &&
                g.bound_gap == r.big_delta && g.min_pivot_gap == r.delta_star_min;
    for (Arm i = 0; i < m.arms(); ++i) {
      same = same && g.is_winner[i] == r.winner[i] &&
             g.losses[i].size() == static_cast<std::size_t>(r.losses_count[i]) &&
             g.pivot_gap[i] == r.delta_star[i] &&
             (g.pivot[i] ? static_cast<long>(*g.pivot[i]) : -1L) == r.i_star[i];
      for (Arm j = 0; j < m.arms(); ++j) {
        if (i != j) same = same && g.adjusted_gap(i, j) == r.delta_star_ij[i][j];
      }
    }
    const auto a = scb_quantities(m, eps);
    const auto b = reference::scb(rows_of(m), eps);
    same = same && a.cpld == b.cpld && a.score_gap == b.delta_i && a.hardness == b.h &&
           a.score_gap_eps == b.delta_eps && a.max_hardness == b.h_inf;
    if (!same) ++mismatches;
  }
  return {mismatches == 0, fmt("mismatching matrices=%ld of 500", mismatches)};
}

Outcome coverage() {
  const auto p4 = fixtures::four_arm();
  const double alpha = 0.6, delta = 0.1;
  const std::uint64_t horizon = 10000;
  const int reps = 200;
  const double burn_in = burn_in_time(p4.arms(), alpha, delta);
  // below the burn-in nothing is claimed; t > 100 is tracked as a diagnostic
  const double early = 100;
  int covered = 0, covered_early = 0;
  ConfidenceBounds b;
  for (int r = 0; r < reps; ++r) {
    ComparisonOracle o(p4, replicate_seed(404, static_cast<std::uint64_t>(r)));
    bool ok = true, ok_early = true;
    for (std::uint64_t t = 1; t <= horizon; ++t) {
      const double td = static_cast<double>(t);
      if (td > early) {
        confidence_matrices(o.wins(), t, alpha, b);
        bool all = true;
        for (Arm i = 0; i < 4; ++i)
          for (Arm j = 0; j < 4; ++j)
            if (i != j && !(b.lower(i, j) <= p4(i, j) && p4(i, j) <= b.upper(i, j))) all = false;
        if (!all) {
          ok_early = false;
          if (td > burn_in) ok = false;
        }
      }
      const Arm i = o.rng().below(4);
      Arm j = o.rng().below(3);
      if (j >= i) ++j;
      o.compare(i, j);
    }
    covered += ok;
    covered_early += ok_early;
  }
  const double frac = covered / static_cast<double>(reps);
  const double margin = 1.6448536269514722 * std::sqrt(delta * (1 - delta) / reps);
  const bool vacuous = burn_in >= static_cast<double>(horizon);
  return {frac >= 1 - delta - margin,
          fmt("coverage=%.3f (need >= %.3f), burn-in=%.3g%s; diagnostic coverage for t>100=%.3f",
              frac, 1 - delta - margin, burn_in, vacuous ? " exceeds the horizon, so the claim is vacuous" : "",
              covered_early / static_cast<double>(reps))};
}

// Criterion 5-7 and 11 share these runs.
struct LearnerRuns {
  std::vector<double> ccb_at_1e4, ccb_final, ccb_decade_rate, ccb_winner_share;
  // the same two measures over the last tenth of the steps
  std::vector<double> ccb_tail_rate, ccb_tail_share;
  std::vector<bool> shortlists_ok;
  std::vector<double> rucb_at_1e4, rucb_final;
};

const LearnerRuns& learner_runs() {
  static const LearnerRuns runs = [] {
    LearnerRuns out;
    const auto p4 = fixtures::four_arm();
    const auto g = gap_summary(p4);
    const std::uint64_t horizon = 100000, decade = horizon / 10, tail = horizon - decade;
    for (std::uint64_t s = 0; s < 20; ++s) {
      const std::uint64_t seed = replicate_seed(7, s);
      {
        ComparisonOracle o(p4, seed);
        CcbLearner l(p4.arms(), 0.51);
        double at_decade = 0, at_tail = 0;
        std::uint64_t clean = 0, tail_clean = 0;
        for (std::uint64_t t = 1; t <= horizon; ++t) {
          const Duel d = l.step(o);
          if (t == decade) {
            at_decade = o.cumulative_regret();
            out.ccb_at_1e4.push_back(at_decade);
          }
          if (t == tail) at_tail = o.cumulative_regret();
          const bool winners = g.is_winner[d.first] && g.is_winner[d.second];
          if (t > decade && winners) ++clean;
          if (t > tail && winners) ++tail_clean;
        }
        const double span = static_cast<double>(horizon - decade);
        out.ccb_final.push_back(o.cumulative_regret());
        out.ccb_decade_rate.push_back((o.cumulative_regret() - at_decade) / span);
        out.ccb_winner_share.push_back(static_cast<double>(clean) / span);
        const double tail_span = static_cast<double>(horizon - tail);
        out.ccb_tail_rate.push_back((o.cumulative_regret() - at_tail) / tail_span);
        out.ccb_tail_share.push_back(static_cast<double>(tail_clean) / tail_span);
        bool ok = true;
        for (Arm i = 0; i < p4.arms(); ++i) {
          if (g.is_winner[i]) continue;
          const auto& b = l.shortlists()[i];
          ok = ok && b.size() == g.winner_losses + 1;
          for (Arm j : b) ok = ok && p4(j, i) > 0.5;
        }
        out.shortlists_ok.push_back(ok);
      }
      {
        ComparisonOracle o(p4, seed);
        RucbLearner l(p4.arms(), 0.51);
        for (std::uint64_t t = 1; t <= horizon; ++t) {
          l.step(o);
          if (t == decade) out.rucb_at_1e4.push_back(o.cumulative_regret());
        }
        out.rucb_final.push_back(o.cumulative_regret());
      }
    }
    return out;
  }();
  return runs;
}

Outcome ccb_convergence() {
  const auto& r = learner_runs();
  const double rate = mean(r.ccb_decade_rate), share = mean(r.ccb_winner_share);
  const double tail_rate = mean(r.ccb_tail_rate), tail_share = mean(r.ccb_tail_share);
  return {rate <= 0.02 && share >= 0.9 && tail_rate <= 0.02 && tail_share >= 0.9,
          fmt("steps (1e4,1e5]: regret/step=%.5f winner-only duels=%.4f; last tenth: "
              "regret/step=%.5f winner-only duels=%.4f (need <= 0.02, >= 0.9); "
              "mean final regret=%.1f",
              rate, share, tail_rate, tail_share, mean(r.ccb_final))};
}

Outcome rucb_linear() {
  const auto& r = learner_runs();
  const double early = mean(r.rucb_at_1e4), late = mean(r.rucb_final), ccb = mean(r.ccb_final);
  return {late >= 5 * early && late >= 5 * ccb,
          fmt("rucb R(1e4)=%.1f R(1e5)=%.1f ratio=%.2f; ccb R(1e5)=%.1f ratio=%.2f", early, late,
              late / early, ccb, late / ccb)};
}

Outcome shortlist_structure() {
  const auto& r = learner_runs();
  const auto good = std::count(r.shortlists_ok.begin(), r.shortlists_ok.end(), true);
  const double frac = good / static_cast<double>(r.shortlists_ok.size());
  return {frac >= 0.8, fmt("seeds with exact shortlists=%ld of %zu", static_cast<long>(good),
                           r.shortlists_ok.size())};
}

Outcome pac_identification() {
  // Two tied winners never separate at eps = 0, so each search runs under
  // a duel budget and reports its best lower bound when cut off.
  const std::uint64_t budget = 1000000;
  std::string detail;
  bool pass = true;
  for (const auto& [name, m] : {std::pair{"P4", fixtures::four_arm()},
                                std::pair{"PCOND5", fixtures::condorcet5()}}) {
    const auto g = gap_summary(m);
    int right = 0, completed = 0;
    for (std::uint64_t s = 0; s < 200; ++s) {
      ComparisonOracle o(m, replicate_seed(808, s));
      const auto w = find_copeland_winner(o, 0.05, 0.0, DuelBudget{budget});
      right += g.is_winner[w.arm];
      completed += w.completed;
    }
    pass = pass && right >= 190;
    detail += fmt("%s correct=%d/200 completed=%d; ", name, right, completed);
  }
  detail += fmt("budget=%llu duels", static_cast<unsigned long long>(budget));
  return {pass, detail};
}

Outcome kl_identification() {
  std::string detail;
  bool pass = true;
  const std::vector<std::vector<double>> cases = {{0.9, 0.1}, {0.9, 0.8, 0.7, 0.6, 0.5}};
  for (const auto& means : cases) {
    const std::size_t k = means.size();
    int right = 0;
    std::vector<std::vector<double>> counts(k);
    for (std::uint64_t s = 0; s < 200; ++s) {
      Rng rng(replicate_seed(909, s));
      const RewardSource reward = [&](Arm a) -> std::optional<int> {
        return rng.bernoulli(means[a]) ? 1 : 0;
      };
      const auto id = identify(reward, k, 0.05, 0.0);
      right += id.completed && id.best == 0;
      for (Arm a = 0; a < k; ++a) counts[a].push_back(static_cast<double>(id.samples[a]));
    }
    // gaps grow with the index, so medians must not increase along it
    bool ordered = true;
    std::string med;
    for (Arm a = 1; a < k; ++a) {
      const double m = median(counts[a]);
      if (a > 1 && m > median(counts[a - 1])) ordered = false;
      med += fmt("%s%.0f", a > 1 ? "/" : "", m);
    }
    pass = pass && right >= 190 && ordered;
    detail += fmt("K=%zu correct=%d/200 medians=%s%s; ", k, right, med.c_str(),
                  ordered ? "" : " (not ordered)");
  }
  detail.resize(detail.size() - 2);
  return {pass, detail};
}

double at_step(const RegretTrace& t, std::uint64_t step) {
  for (const auto& c : t.checkpoints)
    if (c.step == step) return c.cumulative_regret;
  throw std::logic_error("no checkpoint at the requested step");
}

Outcome scb_at_scale() {
  const auto m = cyclic_copeland_matrix(50, 0.1);
  const std::uint64_t horizon = 1000000;
  int plateaus = 0, wins = 0;
  std::string rates;
  for (std::uint64_t s = 0; s < 5; ++s) {
    const std::uint64_t seed = replicate_seed(1010, s);
    // ratio 10 puts checkpoints on exact powers of ten
    const auto scb = run_scb(m, horizon, seed, 10.0);
    const auto ccb = run_ccb(m, 0.51, horizon, seed, 10.0);
    const double rate = (scb.final_regret() - at_step(scb, horizon / 10)) / (0.9 * horizon);
    plateaus += rate <= 0.02;
    wins += scb.final_regret() <= ccb.final_regret();
    rates += fmt("%s%.4f", s ? "/" : "", rate);
    std::fprintf(stderr, "  seed %llu: scb=%.0f ccb=%.0f\n", static_cast<unsigned long long>(s),
                 scb.final_regret(), ccb.final_regret());
  }
  return {plateaus == 5 && wins >= 3,
          fmt("scb final-decade regret/step=%s (<= 0.02 each), scb <= ccb in %d of 5 seeds",
              rates.c_str(), wins)};
}

Outcome theory_dominance() {
  const auto& r = learner_runs();
  const double bound = ccb_regret_bound(fixtures::four_arm(), 0.51, 0.1, 1e5);
  int failures = 0;
  for (double x : r.ccb_final) failures += x > bound;
  const double allowed = 0.1 * static_cast<double>(r.ccb_final.size());
  return {failures <= allowed,
          fmt("bound=%.4g, largest observed=%.1f, failures=%d (allowed %.0f)", bound,
              *std::max_element(r.ccb_final.begin(), r.ccb_final.end()), failures, allowed)};
}

Outcome determinism() {
  ExperimentConfig cfg;
  cfg.matrix = parse_matrix_source("P4");
  cfg.algorithms = {{"ccb", 0.51, "ccb"}, {"rucb", 0.51, "rucb"}, {"scb", 0.51, "scb"}};
  cfg.horizon = 20000;
  cfg.replicates = 4;
  cfg.seed = 7;
  auto csv = [&](unsigned threads) {
    std::ostringstream out;
    write_traces_csv(out, run_experiment(cfg, threads));
    return out.str();
  };
  const std::string a = csv(1), b = csv(1), c = csv(3);
  return {a == b && a == c, fmt("%zu bytes; rerun %s, threaded run %s", a.size(),
                               a == b ? "identical" : "differs", a == c ? "identical" : "differs")};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"loss counting", loss_counting},
      {"score deficit sum", deficit_sum},
      {"gap oracle equivalence", oracle_equivalence},
      {"confidence coverage", coverage},
      {"ccb convergence", ccb_convergence},
      {"rucb linear regret", rucb_linear},
      {"ccb shortlists", shortlist_structure},
      {"pac winner search", pac_identification},
      {"kl identification", kl_identification},
      {"scb at scale", scb_at_scale},
      {"theory dominance", theory_dominance},
      {"determinism", determinism},
  };
  std::set<int> only;
  for (int a = 1; a < argc; ++a) only.insert(std::atoi(argv[a]));

  int failed = 0;
  for (std::size_t n = 0; n < criteria.size(); ++n) {
    const int id = static_cast<int>(n + 1);
    if (!only.empty() && !only.count(id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[n].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !o.pass;
    std::printf("%s criterion %2d %-24s %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", id,
                criteria[n].first, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
