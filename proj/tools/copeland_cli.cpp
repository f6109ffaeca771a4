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

// Command-line front end. Talks to the library only through copeland.h.

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "copeland/copeland.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

int exit_code(cb_status s) {
  switch (s) {
    case CB_OK:
      return kExitOk;
    case CB_ERR_CONFIG:
    case CB_ERR_INVALID_ARGUMENT:
    case CB_ERR_IO:
      return kExitConfig;
    default:
      return kExitRuntime;
  }
}

int report(cb_status s) {
  if (s != CB_OK) std::fprintf(stderr, "copeland: %s: %s\n", cb_status_name(s), cb_last_error());
  return exit_code(s);
}

// Calls a text-producing function twice: once for the size, once for real.
template <typename F>
cb_status print_text(F&& produce) {
  size_t needed = 0;
  cb_status s = produce(nullptr, 0, &needed);
  if (s != CB_ERR_BUFFER_TOO_SMALL) return s;
  std::string buf(needed, '\0');
  s = produce(buf.data(), buf.size(), &needed);
  if (s == CB_OK) std::printf("%s\n", buf.c_str());
  return s;
}

struct MatrixHandle {
  cb_matrix* m = nullptr;
  ~MatrixHandle() { cb_matrix_free(m); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Copeland dueling bandits: simulation, bounds and matrix analysis"};
  app.require_subcommand(1);

  uint64_t seed = 0;
  unsigned threads = 1;
  auto* seed_opt = app.add_option("--seed", seed, "Master seed (overrides the config)");
  app.add_option("--threads", threads, "Worker threads, 0 for all cores")->capture_default_str();

  auto* run = app.add_subcommand("run", "Run an experiment config and write its trace CSV");
  std::string config_path;
  std::string output;
  run->add_option("config", config_path, "JSON config")->required();
  run->add_option("-o,--output", output, "Trace CSV path (overrides the config)");

  auto* analyze = app.add_subcommand("analyze", "Statistics over sampled sub-matrices");
  std::string analysis;
  std::string analyze_source;
  size_t k = 0;
  size_t samples = 1000;
  analyze->add_option("analysis", analysis, "condorcet | stats | gaps | overlap")
      ->required()
      ->check(CLI::IsMember({"condorcet", "stats", "gaps", "overlap"}));
  analyze->add_option("matrix", analyze_source,
                      "Fixture, cyclic:K:gamma, random:K:margin[:seed] or CSV path")
      ->required();
  analyze->add_option("-k,--arms", k, "Arms per sample (default: all)");
  analyze->add_option("-n,--samples", samples, "Number of samples")->capture_default_str();

  auto* bounds = app.add_subcommand("bounds", "Regret-bound report as JSON");
  std::string bounds_source;
  double alpha = 0.51;
  double delta = 0.1;
  double horizon = 1e5;
  bounds->add_option("matrix", bounds_source, "Matrix CSV or fixture")->required();
  bounds->add_option("--alpha", alpha)->capture_default_str();
  bounds->add_option("--delta", delta)->capture_default_str();
  bounds->add_option("--horizon", horizon)->capture_default_str();

  auto* winners = app.add_subcommand("winners", "Scores and winner sets as JSON");
  std::string winners_source;
  winners->add_option("matrix", winners_source, "Matrix CSV or fixture")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  if (*run) {
    cb_run_options opts{threads, *seed_opt ? 1 : 0, seed,
                        output.empty() ? nullptr : output.c_str()};
    return report(cb_run_config_file(config_path.c_str(), &opts));
  }

  MatrixHandle h;
  const std::string& source =
      *analyze ? analyze_source : (*bounds ? bounds_source : winners_source);
  if (cb_status s = cb_matrix_load(source.c_str(), &h.m); s != CB_OK) return report(s);

  if (*analyze) {
    static const std::vector<std::string> names = {"condorcet", "stats", "gaps", "overlap"};
    cb_analysis kind = CB_ANALYSIS_CONDORCET;
    for (size_t n = 0; n < names.size(); ++n) {
      if (names[n] == analysis) kind = static_cast<cb_analysis>(n);
    }
    if (k == 0 && cb_matrix_arms(h.m, &k) != CB_OK) return report(CB_ERR_INTERNAL);
    return report(print_text([&](char* buf, size_t cap, size_t* needed) {
      return cb_analyze_json(h.m, kind, k, samples, seed, buf, cap, needed);
    }));
  }
  if (*bounds) {
    return report(print_text([&](char* buf, size_t cap, size_t* needed) {
      return cb_bound_report_json(h.m, alpha, delta, horizon, buf, cap, needed);
    }));
  }
  return report(print_text([&](char* buf, size_t cap, size_t* needed) {
    return cb_matrix_summary_json(h.m, buf, cap, needed);
  }));
}
