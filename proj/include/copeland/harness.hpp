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

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "copeland/oracle.hpp"
#include "copeland/prefmat.hpp"

namespace copeland {

/// Where an experiment's preference matrix comes from.
struct MatrixSource {
  enum class Kind { kFixture, kFile, kCyclic, kRandom };
  Kind kind = Kind::kFixture;
  std::string name;        // fixture name or file path
  std::size_t arms = 0;    // cyclic / random
  double gamma = 0.1;      // cyclic
  double min_margin = 0.05;  // random
  std::uint64_t seed = 0;    // random

  PreferenceMatrix materialize() const;
  /// Short identifier used in trace metadata, e.g. "P4" or "cyclic(50,0.1)".
  std::string id() const;
};

/// Parses a one-line matrix description: a fixture name, "cyclic:K:gamma",
/// "random:K:min_margin[:seed]", or otherwise a CSV file path.
MatrixSource parse_matrix_source(const std::string& text);

struct AlgorithmSpec {
  std::string name;   // ccb | scb | rucb
  double alpha = 0.51;
  std::string label;  // CSV algorithm column; defaults to name
};

struct ExperimentConfig {
  MatrixSource matrix;
  std::vector<AlgorithmSpec> algorithms;
  std::uint64_t horizon = 0;
  std::size_t replicates = 1;
  std::uint64_t seed = 0;
  double checkpoint_ratio = 1.2;
  std::string output;  // empty: caller decides
};

/// Parses the JSON config (keys matrix, algorithms, horizon, replicates,
/// seed, checkpointRatio, output). Relative file paths are resolved against
/// `base_dir` when it is non-empty. Throws Error(kConfig).
ExperimentConfig parse_config(const std::string& json_text, const std::string& base_dir = {});
ExperimentConfig load_config(const std::string& path);

/// Runs every (algorithm, replicate) pair on up to `threads` workers
/// (0 = hardware concurrency). Replicate r of every algorithm is seeded
/// with replicate_seed(seed, r). The result is sorted by (label, replicate)
/// and does not depend on the thread count.
std::vector<RegretTrace> run_experiment(const ExperimentConfig& config, unsigned threads = 1);

/// Runs one algorithm for one replicate.
RegretTrace run_algorithm(const AlgorithmSpec& spec, const PreferenceMatrix& matrix,
                          std::uint64_t horizon, std::uint64_t seed, double checkpoint_ratio);

inline constexpr const char* kTraceCsvHeader = "algorithm,replicate,step,cumulative_regret";

/// Header line then one row per checkpoint, regret at 12 significant digits,
/// sorted by (algorithm, replicate, step).
void write_traces_csv(std::ostream& out, std::vector<RegretTrace> traces);
/// Inverse of write_traces_csv. Throws Error(kInvalidArgument) with the
/// offending line number on malformed input.
std::vector<RegretTrace> read_traces_csv(std::istream& in);

/// Runs the experiment and writes the CSV to config.output (or
/// `output_override` when non-empty).
void run_experiment_to_file(const ExperimentConfig& config, unsigned threads,
                            const std::string& output_override = {});

}  // namespace copeland
