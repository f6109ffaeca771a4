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

#include "copeland/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>
#include <tuple>

#include <nlohmann/json.hpp>

#include "copeland/ccb.hpp"
#include "copeland/error.hpp"
#include "copeland/rucb.hpp"
#include "copeland/scb.hpp"

namespace copeland {

namespace {

using nlohmann::json;

[[noreturn]] void config_error(const std::string& what) {
  throw Error(ErrorCode::kConfig, "config: " + what);
}

template <typename T>
T get_number(const json& obj, const char* key, T fallback, bool required = false) {
  if (!obj.contains(key)) {
    if (required) config_error(std::string("missing key '") + key + "'");
    return fallback;
  }
  const json& v = obj.at(key);
  if (!v.is_number()) config_error(std::string("key '") + key + "' must be a number");
  if constexpr (std::is_integral_v<T>) {
    if (!v.is_number_integer() || (v.is_number_integer() && v.get<long long>() < 0)) {
      config_error(std::string("key '") + key + "' must be a non-negative integer");
    }
  }
  return v.get<T>();
}

std::string resolve(const std::string& path, const std::string& base_dir) {
  namespace fs = std::filesystem;
  if (base_dir.empty() || fs::path(path).is_absolute()) return path;
  return (fs::path(base_dir) / path).string();
}

MatrixSource parse_matrix(const json& j, const std::string& base_dir) {
  MatrixSource src;
  if (j.is_string()) {
    const auto name = j.get<std::string>();
    if (fixtures::by_name(name)) {
      src.kind = MatrixSource::Kind::kFixture;
      src.name = name;
    } else {
      src.kind = MatrixSource::Kind::kFile;
      src.name = resolve(name, base_dir);
    }
    return src;
  }
  if (!j.is_object() || j.size() != 1) {
    config_error("'matrix' must be a string or an object with one of fixture/file/cyclic/random");
  }
  if (j.contains("fixture")) {
    src.kind = MatrixSource::Kind::kFixture;
    src.name = j.at("fixture").get<std::string>();
    if (!fixtures::by_name(src.name)) config_error("unknown fixture '" + src.name + "'");
  } else if (j.contains("file")) {
    src.kind = MatrixSource::Kind::kFile;
    src.name = resolve(j.at("file").get<std::string>(), base_dir);
  } else if (j.contains("cyclic")) {
    const json& c = j.at("cyclic");
    src.kind = MatrixSource::Kind::kCyclic;
    src.arms = get_number<std::size_t>(c, "K", 0, true);
    src.gamma = get_number<double>(c, "gamma", 0.1);
  } else if (j.contains("random")) {
    const json& r = j.at("random");
    src.kind = MatrixSource::Kind::kRandom;
    src.arms = get_number<std::size_t>(r, "K", 0, true);
    src.min_margin = get_number<double>(r, "minMargin", 0.05);
    src.seed = get_number<std::uint64_t>(r, "seed", 0);
  } else {
    config_error("unknown matrix source");
  }
  return src;
}

AlgorithmSpec parse_algorithm(const json& j) {
  AlgorithmSpec spec;
  if (j.is_string()) {
    spec.name = j.get<std::string>();
  } else if (j.is_object()) {
    if (!j.contains("name") || !j.at("name").is_string()) config_error("algorithm needs a 'name'");
    spec.name = j.at("name").get<std::string>();
    spec.alpha = get_number<double>(j, "alpha", spec.alpha);
    if (j.contains("label")) spec.label = j.at("label").get<std::string>();
  } else {
    config_error("algorithm entries must be strings or objects");
  }
  if (spec.name != "ccb" && spec.name != "scb" && spec.name != "rucb") {
    config_error("unknown algorithm '" + spec.name + "'");
  }
  if (spec.name != "scb" && !(spec.alpha > 0.5)) config_error("alpha must exceed 0.5");
  if (spec.label.empty()) spec.label = spec.name;
  return spec;
}

std::string format_regret(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

PreferenceMatrix MatrixSource::materialize() const {
  switch (kind) {
    case Kind::kFixture: {
      auto m = fixtures::by_name(name);
      if (!m) throw Error(ErrorCode::kConfig, "unknown fixture '" + name + "'");
      return *m;
    }
    case Kind::kFile:
      return load_matrix_csv(name);
    case Kind::kCyclic:
      return cyclic_copeland_matrix(arms, gamma);
    case Kind::kRandom: {
      Rng rng(mix64(seed));
      return random_matrix(arms, rng, min_margin);
    }
  }
  throw Error(ErrorCode::kConfig, "unknown matrix source");
}

std::string MatrixSource::id() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::kFixture:
    case Kind::kFile:
      out << name;
      break;
    case Kind::kCyclic:
      out << "cyclic(" << arms << "," << gamma << ")";
      break;
    case Kind::kRandom:
      out << "random(" << arms << "," << min_margin << "," << seed << ")";
      break;
  }
  return out.str();
}

MatrixSource parse_matrix_source(const std::string& text) {
  MatrixSource src;
  if (fixtures::by_name(text)) {
    src.kind = MatrixSource::Kind::kFixture;
    src.name = text;
    return src;
  }
  auto field = [&](std::vector<std::string>& parts) {
    std::stringstream ss(text);
    std::string f;
    while (std::getline(ss, f, ':')) parts.push_back(f);
  };
  auto number = [&](const std::string& f) {
    char* end = nullptr;
    const double v = std::strtod(f.c_str(), &end);
    if (f.empty() || *end != '\0') {
      throw Error(ErrorCode::kConfig, "bad number '" + f + "' in matrix source '" + text + "'");
    }
    return v;
  };
  auto count = [&](const std::string& f) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(f.c_str(), &end, 10);
    if (f.empty() || *end != '\0' || f[0] == '-') {
      throw Error(ErrorCode::kConfig, "bad integer '" + f + "' in matrix source '" + text + "'");
    }
    return v;
  };
  if (text.rfind("cyclic:", 0) == 0) {
    std::vector<std::string> parts;
    field(parts);
    if (parts.size() != 3) throw Error(ErrorCode::kConfig, "expected cyclic:K:gamma");
    src.kind = MatrixSource::Kind::kCyclic;
    src.arms = count(parts[1]);
    src.gamma = number(parts[2]);
  } else if (text.rfind("random:", 0) == 0) {
    std::vector<std::string> parts;
    field(parts);
    if (parts.size() != 3 && parts.size() != 4) {
      throw Error(ErrorCode::kConfig, "expected random:K:min_margin[:seed]");
    }
    src.kind = MatrixSource::Kind::kRandom;
    src.arms = count(parts[1]);
    src.min_margin = number(parts[2]);
    if (parts.size() == 4) src.seed = count(parts[3]);
  } else {
    src.kind = MatrixSource::Kind::kFile;
    src.name = text;
  }
  return src;
}

ExperimentConfig parse_config(const std::string& text, const std::string& base_dir) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    config_error(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) config_error("top level must be an object");

  try {
    ExperimentConfig cfg;
    if (!j.contains("matrix")) config_error("missing key 'matrix'");
    cfg.matrix = parse_matrix(j.at("matrix"), base_dir);
    if (!j.contains("algorithms") || !j.at("algorithms").is_array() ||
        j.at("algorithms").empty()) {
      config_error("'algorithms' must be a non-empty array");
    }
    for (const auto& a : j.at("algorithms")) cfg.algorithms.push_back(parse_algorithm(a));
    cfg.horizon = get_number<std::uint64_t>(j, "horizon", 0, true);
    cfg.replicates = get_number<std::size_t>(j, "replicates", 1);
    cfg.seed = get_number<std::uint64_t>(j, "seed", 0);
    cfg.checkpoint_ratio = get_number<double>(j, "checkpointRatio", 1.2);
    if (j.contains("output")) {
      if (!j.at("output").is_string()) config_error("'output' must be a string");
      cfg.output = resolve(j.at("output").get<std::string>(), base_dir);
    }
    if (cfg.horizon < 1) config_error("horizon must be >= 1");
    if (cfg.replicates < 1) config_error("replicates must be >= 1");
    if (!(cfg.checkpoint_ratio > 1.0)) config_error("checkpointRatio must exceed 1");
    for (const auto& a : cfg.algorithms) {
      if (a.name == "scb" && cfg.horizon < 4) config_error("scb needs horizon >= 4");
    }
    for (std::size_t x = 0; x < cfg.algorithms.size(); ++x) {
      for (std::size_t y = x + 1; y < cfg.algorithms.size(); ++y) {
        if (cfg.algorithms[x].label == cfg.algorithms[y].label) {
          config_error("duplicate algorithm label '" + cfg.algorithms[x].label + "'");
        }
      }
    }
    return cfg;
  } catch (const json::exception& e) {
    config_error(e.what());
  }
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kConfig, "cannot open config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), std::filesystem::path(path).parent_path().string());
}

RegretTrace run_algorithm(const AlgorithmSpec& spec, const PreferenceMatrix& matrix,
                          std::uint64_t horizon, std::uint64_t seed, double checkpoint_ratio) {
  RegretTrace trace;
  if (spec.name == "ccb") {
    trace = run_ccb(matrix, spec.alpha, horizon, seed, checkpoint_ratio);
  } else if (spec.name == "rucb") {
    trace = run_rucb(matrix, spec.alpha, horizon, seed, checkpoint_ratio);
  } else if (spec.name == "scb") {
    trace = run_scb(matrix, horizon, seed, checkpoint_ratio);
  } else {
    throw Error(ErrorCode::kConfig, "unknown algorithm '" + spec.name + "'");
  }
  trace.algorithm = spec.label.empty() ? spec.name : spec.label;
  return trace;
}

std::vector<RegretTrace> run_experiment(const ExperimentConfig& cfg, unsigned threads) {
  const PreferenceMatrix matrix = cfg.matrix.materialize();
  const std::string matrix_id = cfg.matrix.id();

  const std::size_t jobs = cfg.algorithms.size() * cfg.replicates;
  std::vector<RegretTrace> results(jobs);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (std::size_t job = next++; job < jobs; job = next++) {
      const auto& spec = cfg.algorithms[job / cfg.replicates];
      const std::size_t replicate = job % cfg.replicates;
      try {
        const std::uint64_t seed = replicate_seed(cfg.seed, replicate);
        RegretTrace t = run_algorithm(spec, matrix, cfg.horizon, seed, cfg.checkpoint_ratio);
        t.replicate = replicate;
        t.matrix_id = matrix_id;
        results[job] = std::move(t);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  const auto pool_size = static_cast<unsigned>(std::min<std::size_t>(threads, jobs));
  if (pool_size <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned n = 0; n < pool_size; ++n) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  std::stable_sort(results.begin(), results.end(), [](const auto& a, const auto& b) {
    return std::tie(a.algorithm, a.replicate) < std::tie(b.algorithm, b.replicate);
  });
  return results;
}

void write_traces_csv(std::ostream& out, std::vector<RegretTrace> traces) {
  std::stable_sort(traces.begin(), traces.end(), [](const auto& a, const auto& b) {
    return std::tie(a.algorithm, a.replicate) < std::tie(b.algorithm, b.replicate);
  });
  out << kTraceCsvHeader << '\n';
  for (const auto& t : traces) {
    for (const auto& c : t.checkpoints) {
      out << t.algorithm << ',' << t.replicate << ',' << c.step << ','
          << format_regret(c.cumulative_regret) << '\n';
    }
  }
}

std::vector<RegretTrace> read_traces_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || line != kTraceCsvHeader) {
    throw Error(ErrorCode::kInvalidArgument, "trace CSV line 1: expected header '" +
                                                 std::string(kTraceCsvHeader) + "'");
  }
  std::vector<RegretTrace> traces;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto fail = [&] {
      throw Error(ErrorCode::kInvalidArgument,
                  "trace CSV line " + std::to_string(line_no) + ": malformed row");
    };
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    if (fields.size() != 4 || fields[0].empty()) fail();

    char* end = nullptr;
    const unsigned long long replicate = std::strtoull(fields[1].c_str(), &end, 10);
    if (fields[1].empty() || *end != '\0') fail();
    const unsigned long long step = std::strtoull(fields[2].c_str(), &end, 10);
    if (fields[2].empty() || *end != '\0') fail();
    const double regret = std::strtod(fields[3].c_str(), &end);
    if (fields[3].empty() || *end != '\0') fail();

    if (traces.empty() || traces.back().algorithm != fields[0] ||
        traces.back().replicate != replicate) {
      RegretTrace t;
      t.algorithm = fields[0];
      t.replicate = replicate;
      traces.push_back(std::move(t));
    }
    auto& cps = traces.back().checkpoints;
    if (!cps.empty() && cps.back().step >= step) fail();
    cps.push_back({step, regret});
  }
  return traces;
}

void run_experiment_to_file(const ExperimentConfig& cfg, unsigned threads,
                            const std::string& output_override) {
  const std::string path = output_override.empty() ? cfg.output : output_override;
  if (path.empty()) throw Error(ErrorCode::kConfig, "config: no output path given");
  const auto traces = run_experiment(cfg, threads);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write trace file: " + path);
  write_traces_csv(out, traces);
  if (!out) throw Error(ErrorCode::kIo, "failed writing trace file: " + path);
}

}  // namespace copeland
