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

#include "copeland/bounds.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "copeland/error.hpp"

namespace copeland {

namespace {

void check_alpha_delta(double alpha, double delta) {
  if (!(alpha > 0.5)) throw Error(ErrorCode::kInvalidArgument, "alpha must exceed 0.5");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "delta must lie in (0,1)");
  }
}

double square(double x) { return x * x; }

// Largest row sum of the count ceilings over non-winners (0 if none).
double max_non_winner_row(const GapSummary& gaps, const ComparisonCounts& counts) {
  double best = 0.0;
  const std::size_t k = gaps.copeland_scores.size();
  for (Arm i = 0; i < k; ++i) {
    if (gaps.is_winner[i]) continue;
    double row = 0.0;
    for (Arm j = 0; j < k; ++j) row += counts.per_pair(i, j);
    best = std::max(best, row);
  }
  return best;
}

}  // namespace

double burn_in_time(std::size_t arms, double alpha, double delta) {
  check_alpha_delta(alpha, delta);
  const double k2 = static_cast<double>(arms) * static_cast<double>(arms);
  return std::pow((4.0 * alpha - 1.0) * k2 / ((2.0 * alpha - 1.0) * delta),
                  1.0 / (2.0 * alpha - 1.0));
}

ComparisonCounts comparison_counts(const GapSummary& gaps, double alpha, double t) {
  if (!(t > 1.0)) throw Error(ErrorCode::kInvalidArgument, "comparison counts need t > 1");
  const std::size_t k = gaps.copeland_scores.size();
  const double numerator = 4.0 * alpha * std::log(t);
  ComparisonCounts out{SquareGrid<double>(k, 0.0), 1.0};
  for (Arm i = 0; i < k; ++i) {
    for (Arm j = 0; j < k; ++j) {
      if (i == j) {
        out.per_pair(i, i) = gaps.is_winner[i] ? t : 0.0;
        continue;
      }
      const double g = gaps.adjusted_gap(i, j);
      if (!(g > 0.0)) {
        throw Error(ErrorCode::kInconsistent, "zero adjusted gap off the diagonal");
      }
      out.per_pair(i, j) = numerator / square(g);
      out.total += out.per_pair(i, j);
    }
  }
  return out;
}

ComparisonCounts comparison_counts(const PreferenceMatrix& matrix, double alpha, double t) {
  return comparison_counts(gap_summary(matrix), alpha, t);
}

double settling_time(const GapSummary& gaps, double alpha, double delta) {
  check_alpha_delta(alpha, delta);
  const double k = static_cast<double>(gaps.copeland_scores.size());
  const double lc1 = static_cast<double>(gaps.winner_losses) + 1.0;
  const double fixed = burn_in_time(gaps.copeland_scores.size(), alpha, delta / 2.0) +
                       8.0 * k * k * lc1 * lc1 * std::log(6.0 * k * k / delta) +
                       k * k * std::log(6.0 * k / delta);
  const double slope = 32.0 * alpha * k * lc1 / square(gaps.min_gap);
  if (!std::isfinite(fixed)) {
    throw Error(ErrorCode::kDivergence, "settling time overflows: bound is vacuous at this scale");
  }

  auto rhs = [&](double t) {
    const auto counts = comparison_counts(gaps, alpha, t);
    return fixed + slope * std::log(t) + counts.total + 4.0 * k * max_non_winner_row(gaps, counts);
  };

  // rhs grows like ln t, so iterating from below climbs monotonically to the
  // largest fixed point.
  double t = burn_in_time(gaps.copeland_scores.size(), alpha, delta / 2.0) + 2.0;
  for (int it = 0; it < 10'000; ++it) {
    const double next = rhs(t);
    if (!std::isfinite(next)) break;
    const bool settled = std::abs(next - t) < 1e-9 * std::max(1.0, t);
    t = next;
    if (settled) {
      double T = std::ceil(t);
      if (T < 0x1.0p53) {
        while (T - 1.0 >= fixed && T - 1.0 >= rhs(T - 1.0)) T -= 1.0;
        while (T < rhs(T)) T += 1.0;
      }
      return T;
    }
  }
  throw Error(ErrorCode::kDivergence, "settling-time iteration did not settle");
}

double settling_time(const PreferenceMatrix& matrix, double alpha, double delta) {
  return settling_time(gap_summary(matrix), alpha, delta);
}

CcbBoundTerms ccb_bound_terms(const GapSummary& gaps, double alpha, double delta) {
  check_alpha_delta(alpha, delta);
  const std::size_t k = gaps.copeland_scores.size();
  const double lc1 = static_cast<double>(gaps.winner_losses) + 1.0;

  CcbBoundTerms terms;
  const double settle = settling_time(gaps, alpha, delta / 2.0);
  terms.a1 = burn_in_time(k, alpha, delta / 4.0) + comparison_counts(gaps, alpha, settle).total;

  const double log_term = std::log(2.0 * static_cast<double>(k) / delta);
  for (Arm i = 0; i < k; ++i) {
    if (gaps.is_winner[i]) continue;
    terms.a2 += std::sqrt(lc1) / gaps.pivot_gap[i] * log_term;
    terms.a3 += 2.0 * lc1 / square(gaps.pivot_gap[i]);
  }
  for (Arm w : gaps.winners) {
    for (Arm j = 0; j < k; ++j) {
      if (!gaps.is_winner[j]) terms.a3 += 1.0 / square(gaps.gap(w, j));
    }
  }
  return terms;
}

CcbBoundTerms ccb_bound_terms(const PreferenceMatrix& matrix, double alpha, double delta) {
  return ccb_bound_terms(gap_summary(matrix), alpha, delta);
}

double ccb_regret_bound(const CcbBoundTerms& terms, double horizon) {
  const double log_t = std::log(horizon);
  return terms.a1 + terms.a2 * std::sqrt(log_t) + terms.a3 * log_t;
}

double ccb_regret_bound(const PreferenceMatrix& matrix, double alpha, double delta,
                        double horizon) {
  return ccb_regret_bound(ccb_bound_terms(matrix, alpha, delta), horizon);
}

double ccb_log_coefficient_ceiling(const GapSummary& gaps) {
  const double k = static_cast<double>(gaps.copeland_scores.size());
  const double c = static_cast<double>(gaps.winner_count);
  const double lc = static_cast<double>(gaps.winner_losses);
  return 2.0 * k * (c + lc + 1.0) / square(gaps.bound_gap);
}

double scb_regret_shape(const PreferenceMatrix& matrix, double horizon) {
  const auto q = scb_quantities(matrix, 0.0);
  double sum = 0.0;
  for (std::size_t i = 0; i < q.cpld.size(); ++i) {
    sum += q.hardness[i] * (1.0 - q.cpld[i]) / square(q.score_gap[i]);
  }
  return sum / static_cast<double>(q.cpld.size()) * std::log(horizon);
}

BoundReport bound_report(const PreferenceMatrix& matrix, double alpha, double delta,
                         double horizon) {
  const GapSummary gaps = gap_summary(matrix);
  BoundReport r;
  r.alpha = alpha;
  r.delta = delta;
  r.horizon = horizon;
  r.burn_in = burn_in_time(matrix.arms(), alpha, delta);
  r.counts_total = comparison_counts(gaps, alpha, horizon).total;
  r.settling = settling_time(gaps, alpha, delta);
  r.terms = ccb_bound_terms(gaps, alpha, delta);
  r.ccb_bound = ccb_regret_bound(r.terms, horizon);
  r.scb_shape = scb_regret_shape(matrix, horizon);
  return r;
}

std::string to_json(const BoundReport& r) {
  nlohmann::ordered_json j;
  j["cDelta"] = r.burn_in;
  j["nHatTotal"] = r.counts_total;
  j["tDelta"] = r.settling;
  j["a1"] = r.terms.a1;
  j["a2"] = r.terms.a2;
  j["a3"] = r.terms.a3;
  j["ccbBound"] = r.ccb_bound;
  j["scbShape"] = r.scb_shape;
  j["alpha"] = r.alpha;
  j["delta"] = r.delta;
  j["horizon"] = r.horizon;
  return j.dump(2);
}

}  // namespace copeland
