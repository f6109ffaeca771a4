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

#include <string>

#include "copeland/grid.hpp"
#include "copeland/prefmat.hpp"

namespace copeland {

/// Burn-in time ((4a-1) K^2 / ((2a-1) delta))^(1/(2a-1)) after which every
/// confidence interval of the CCB learner covers its pair with probability
/// 1-delta. Requires alpha > 0.5 and delta in (0,1).
double burn_in_time(std::size_t arms, double alpha, double delta);

struct ComparisonCounts {
  SquareGrid<double> per_pair;  // expected-count ceiling per (champion, challenger)
  double total = 0.0;           // off-diagonal sum + 1
};

/// Ceiling on how often each ordered pair is played up to step t (t > 1):
/// 4 alpha ln t / adjusted_gap_ij^2 off the diagonal, t on a winner's
/// diagonal and 0 on a non-winner's. The value does not depend on the
/// failure probability.
ComparisonCounts comparison_counts(const PreferenceMatrix& matrix, double alpha, double t);
ComparisonCounts comparison_counts(const GapSummary& gaps, double alpha, double t);

/// Time by which every non-winner's shortlist has settled: the smallest T
/// with T >= burn_in(delta/2) + const + slope ln T + counts(T) terms.
/// Returned as a double because realistic alpha close to 0.5 pushes it far
/// beyond 2^64. Throws Error(kDivergence) if it overflows a double.
double settling_time(const PreferenceMatrix& matrix, double alpha, double delta);
double settling_time(const GapSummary& gaps, double alpha, double delta);

/// The three coefficients of the high-probability CCB regret bound
/// a1 + a2 sqrt(ln T) + a3 ln T.
struct CcbBoundTerms {
  double a1 = 0.0;
  double a2 = 0.0;
  double a3 = 0.0;
};

CcbBoundTerms ccb_bound_terms(const PreferenceMatrix& matrix, double alpha, double delta);
CcbBoundTerms ccb_bound_terms(const GapSummary& gaps, double alpha, double delta);

double ccb_regret_bound(const CcbBoundTerms& terms, double horizon);
double ccb_regret_bound(const PreferenceMatrix& matrix, double alpha, double delta, double horizon);

/// The looser closed form 2K(C + L_C + 1)/gap^2 that bounds a3.
double ccb_log_coefficient_ceiling(const GapSummary& gaps);

/// (1/K) sum_i H_i (1 - cpld_i) / score_gap_i^2 * ln T, with no constant.
/// A shape for comparing against SCB curves, not a bound.
double scb_regret_shape(const PreferenceMatrix& matrix, double horizon);

struct BoundReport {
  double alpha = 0.0;
  double delta = 0.0;
  double horizon = 0.0;
  double burn_in = 0.0;       // at delta
  double counts_total = 0.0;  // at horizon
  double settling = 0.0;      // at delta
  CcbBoundTerms terms;
  double ccb_bound = 0.0;     // at horizon
  double scb_shape = 0.0;     // at horizon
};

BoundReport bound_report(const PreferenceMatrix& matrix, double alpha, double delta,
                         double horizon);

/// JSON object with keys cDelta, nHatTotal, tDelta, a1, a2, a3, ccbBound,
/// scbShape, alpha, delta, horizon.
std::string to_json(const BoundReport& report);

}  // namespace copeland
