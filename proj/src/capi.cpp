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

#include "copeland/copeland.h"

#include <cmath>
#include <cstring>
#include <exception>
#include <new>
#include <string>

#include <nlohmann/json.hpp>

#include "copeland/analysis.hpp"
#include "copeland/bounds.hpp"
#include "copeland/error.hpp"
#include "copeland/harness.hpp"
#include "copeland/prefmat.hpp"

struct cb_matrix {
  copeland::PreferenceMatrix value;
};

namespace {

using copeland::ErrorCode;
using json = nlohmann::ordered_json;

thread_local std::string last_error;

cb_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return CB_ERR_INVALID_ARGUMENT;
    case ErrorCode::kInconsistent: return CB_ERR_INCONSISTENT;
    case ErrorCode::kNonConvergence: return CB_ERR_NON_CONVERGENCE;
    case ErrorCode::kDivergence: return CB_ERR_DIVERGENCE;
    case ErrorCode::kIo: return CB_ERR_IO;
    case ErrorCode::kConfig: return CB_ERR_CONFIG;
  }
  return CB_ERR_INTERNAL;
}

cb_status fail(cb_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

template <typename F>
cb_status guarded(F&& body) {
  last_error.clear();
  try {
    return body();
  } catch (const copeland::Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(CB_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(CB_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(CB_ERR_INTERNAL, "unknown error");
  }
}

cb_status emit(const std::string& text, char* buf, size_t capacity, size_t* needed) {
  if (needed) *needed = text.size() + 1;
  if (capacity < text.size() + 1) {
    return fail(CB_ERR_BUFFER_TOO_SMALL, "output buffer too small");
  }
  std::memcpy(buf, text.c_str(), text.size() + 1);
  return CB_OK;
}

// Infinite gaps and bounds are legal results; JSON has no literal for them.
json number(double v) {
  if (std::isfinite(v)) return v;
  return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
}

}  // namespace

extern "C" {

const char* cb_last_error(void) { return last_error.c_str(); }

const char* cb_status_name(cb_status status) {
  switch (status) {
    case CB_OK: return "ok";
    case CB_ERR_INVALID_ARGUMENT: return "invalid argument";
    case CB_ERR_INCONSISTENT: return "inconsistent";
    case CB_ERR_NON_CONVERGENCE: return "non-convergence";
    case CB_ERR_DIVERGENCE: return "divergence";
    case CB_ERR_IO: return "i/o error";
    case CB_ERR_CONFIG: return "config error";
    case CB_ERR_BUFFER_TOO_SMALL: return "buffer too small";
    case CB_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

cb_status cb_matrix_load(const char* source, cb_matrix** out) {
  return guarded([&] {
    if (!source || !out) return fail(CB_ERR_INVALID_ARGUMENT, "null argument");
    auto src = copeland::parse_matrix_source(source);
    *out = new cb_matrix{src.materialize()};
    return CB_OK;
  });
}

cb_status cb_matrix_from_values(size_t arms, const double* values, cb_matrix** out) {
  return guarded([&] {
    if (!values || !out) return fail(CB_ERR_INVALID_ARGUMENT, "null argument");
    copeland::PreferenceMatrix m(arms, std::vector<double>(values, values + arms * arms));
    copeland::require_valid(m, false);
    *out = new cb_matrix{std::move(m)};
    return CB_OK;
  });
}

void cb_matrix_free(cb_matrix* matrix) { delete matrix; }

cb_status cb_matrix_arms(const cb_matrix* matrix, size_t* arms) {
  return guarded([&] {
    if (!matrix || !arms) return fail(CB_ERR_INVALID_ARGUMENT, "null argument");
    *arms = matrix->value.arms();
    return CB_OK;
  });
}

cb_status cb_matrix_value(const cb_matrix* matrix, size_t i, size_t j, double* value) {
  return guarded([&] {
    if (!matrix || !value) return fail(CB_ERR_INVALID_ARGUMENT, "null argument");
    const size_t k = matrix->value.arms();
    if (i >= k || j >= k) return fail(CB_ERR_INVALID_ARGUMENT, "arm index out of range");
    *value = matrix->value(i, j);
    return CB_OK;
  });
}

cb_status cb_matrix_save(const cb_matrix* matrix, const char* path) {
  return guarded([&] {
    if (!matrix || !path) return fail(CB_ERR_INVALID_ARGUMENT, "null argument");
    copeland::save_matrix_csv(path, matrix->value);
    return CB_OK;
  });
}

cb_status cb_matrix_winners(const cb_matrix* matrix, cb_notion notion, size_t* arms,
                            size_t capacity, size_t* count) {
  return guarded([&] {
    if (!matrix || !count || (capacity > 0 && !arms)) {
      return fail(CB_ERR_INVALID_ARGUMENT, "null argument");
    }
    std::vector<copeland::Arm> w;
    switch (notion) {
      case CB_NOTION_COPELAND: w = copeland::copeland_winners(matrix->value); break;
      case CB_NOTION_BORDA: w = copeland::borda_winners(matrix->value); break;
      case CB_NOTION_RANDOM_WALK: w = copeland::random_walk_winners(matrix->value); break;
      default: return fail(CB_ERR_INVALID_ARGUMENT, "unknown winner notion");
    }
    *count = w.size();
    if (w.size() > capacity) return fail(CB_ERR_BUFFER_TOO_SMALL, "winner buffer too small");
    std::copy(w.begin(), w.end(), arms);
    return CB_OK;
  });
}

cb_status cb_matrix_copeland_scores(const cb_matrix* matrix, int* scores) {
  return guarded([&] {
    if (!matrix || !scores) return fail(CB_ERR_INVALID_ARGUMENT, "null argument");
    const auto s = copeland::copeland_scores(matrix->value);
    std::copy(s.begin(), s.end(), scores);
    return CB_OK;
  });
}

cb_status cb_matrix_condorcet(const cb_matrix* matrix, int* found, size_t* arm) {
  return guarded([&] {
    if (!matrix || !found) return fail(CB_ERR_INVALID_ARGUMENT, "null argument");
    const auto w = copeland::condorcet_winner(matrix->value);
    *found = w ? 1 : 0;
    if (w && arm) *arm = *w;
    return CB_OK;
  });
}

cb_status cb_matrix_summary_json(const cb_matrix* matrix, char* buf, size_t capacity,
                                 size_t* needed) {
  return guarded([&] {
    if (!matrix) return fail(CB_ERR_INVALID_ARGUMENT, "null argument");
    const auto& m = matrix->value;
    json j;
    j["arms"] = m.arms();
    j["copelandScores"] = copeland::copeland_scores(m);
    j["copeland"] = copeland::copeland_winners(m);
    j["borda"] = copeland::borda_winners(m);
    j["randomWalk"] = copeland::random_walk_winners(m);
    const auto c = copeland::condorcet_winner(m);
    j["condorcet"] = c ? json(*c) : json(nullptr);
    return emit(j.dump(2), buf, capacity, needed);
  });
}

cb_status cb_bound_report_json(const cb_matrix* matrix, double alpha, double delta,
                               double horizon, char* buf, size_t capacity, size_t* needed) {
  return guarded([&] {
    if (!matrix) return fail(CB_ERR_INVALID_ARGUMENT, "null argument");
    const auto report = copeland::bound_report(matrix->value, alpha, delta, horizon);
    return emit(copeland::to_json(report), buf, capacity, needed);
  });
}

cb_status cb_analyze_json(const cb_matrix* matrix, cb_analysis analysis, size_t k,
                          size_t samples, uint64_t seed, char* buf, size_t capacity,
                          size_t* needed) {
  return guarded([&] {
    if (!matrix) return fail(CB_ERR_INVALID_ARGUMENT, "null argument");
    const auto& m = matrix->value;
    json j;
    j["k"] = k;
    j["samples"] = samples;
    j["seed"] = seed;
    switch (analysis) {
      case CB_ANALYSIS_CONDORCET:
        j["condorcetProbability"] = copeland::condorcet_probability(m, k, samples, seed);
        break;
      case CB_ANALYSIS_STATS: {
        const auto s = copeland::structure_stats(m, k, samples, seed);
        json c = json::object();
        json l = json::object();
        for (const auto& [key, n] : s.winner_count) c[std::to_string(key)] = n;
        for (const auto& [key, n] : s.winner_losses) l[std::to_string(key)] = n;
        j["winnerCount"] = c;
        j["winnerLosses"] = l;
        j["used"] = s.used;
        j["skipped"] = s.skipped;
        break;
      }
      case CB_ANALYSIS_GAPS: {
        const auto g = copeland::gap_ratio(m, k, samples, seed);
        j["meanRatio"] = number(g.mean_ratio);
        j["used"] = g.used;
        j["skipped"] = g.skipped;
        break;
      }
      case CB_ANALYSIS_OVERLAP: {
        const auto subs = copeland::sample_submatrices(m, k, samples, seed);
        const auto t = copeland::winner_overlap(subs);
        json table = json::object();
        for (size_t a = 0; a < 3; ++a) {
          json row = json::object();
          for (size_t b = 0; b < 3; ++b) {
            row[copeland::OverlapTable::kNotions[b]] = t.percent[a][b];
          }
          table[copeland::OverlapTable::kNotions[a]] = row;
        }
        j["percent"] = table;
        j["matrices"] = t.matrices;
        break;
      }
      default:
        return fail(CB_ERR_INVALID_ARGUMENT, "unknown analysis");
    }
    return emit(j.dump(2), buf, capacity, needed);
  });
}

cb_status cb_run_config_file(const char* config_path, const cb_run_options* options) {
  return guarded([&] {
    if (!config_path) return fail(CB_ERR_INVALID_ARGUMENT, "null argument");
    auto cfg = copeland::load_config(config_path);
    unsigned threads = 1;
    std::string output;
    if (options) {
      threads = options->threads;
      if (options->override_seed) cfg.seed = options->seed;
      if (options->output) output = options->output;
    }
    copeland::run_experiment_to_file(cfg, threads, output);
    return CB_OK;
  });
}

}  // extern "C"
