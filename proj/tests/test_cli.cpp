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

// Drives the installed command-line tool as a subprocess.

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <doctest.h>

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(COPELAND_CLI_PATH) + " " + args + " 2>&1";
  Result r{-1, {}};
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

struct Scratch {
  fs::path dir = fs::temp_directory_path() / ("copeland_cli_" + std::to_string(::getpid()));
  Scratch() { fs::create_directories(dir); }
  ~Scratch() { fs::remove_all(dir); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(dir / name) << text;
    return (dir / name).string();
  }
};

}  // namespace

TEST_CASE("winners and bounds") {
  Scratch s;
  const auto csv = s.write("p4.csv", "0.5,0.6,0.6,0.4\n0.4,0.5,0.6,0.6\n0.4,0.4,0.5,0.6\n0.6,0.4,0.4,0.5\n");
  auto w = run("winners " + csv);
  CHECK(w.code == 0);
  CHECK(w.out.find("\"copeland\"") != std::string::npos);
  CHECK(w.out.find("\"condorcet\": null") != std::string::npos);

  auto b = run("bounds " + csv + " --alpha 1.5 --delta 0.1 --horizon 100000");
  CHECK(b.code == 0);
  CHECK(b.out.find("\"cDelta\": 20.0") != std::string::npos);
  CHECK(b.out.find("\"a3\"") != std::string::npos);
}

TEST_CASE("analysis subcommands") {
  for (const char* kind : {"condorcet", "stats", "gaps", "overlap"}) {
    auto r = run(std::string("--seed 3 analyze ") + kind + " cyclic:12:0.1 -k 5 -n 50");
    CAPTURE(r.out);
    CHECK(r.code == 0);
    CHECK(r.out.find("\"seed\": 3") != std::string::npos);
  }
  CHECK(run("analyze median P4").code == 1);
}

TEST_CASE("run writes a reproducible trace") {
  Scratch s;
  const auto out1 = (s.dir / "a.csv").string();
  const auto out2 = (s.dir / "b.csv").string();
  const auto cfg = s.write("cfg.json", R"({"matrix":"P4","algorithms":["ccb","rucb"],"horizon":2000,"replicates":2,"seed":7,"output":")" + out1 + R"("})");
  CHECK(run("run " + cfg).code == 0);
  CHECK(run("--threads 2 run " + cfg + " -o " + out2).code == 0);
  CHECK(slurp(out1) == slurp(out2));
  CHECK(slurp(out1).rfind("algorithm,replicate,step,cumulative_regret\n", 0) == 0);
  CHECK(run("--seed 8 run " + cfg + " -o " + out2).code == 0);
  CHECK(slurp(out1) != slurp(out2));
}

TEST_CASE("exit codes") {
  Scratch s;
  CHECK(run("").code == 1);
  CHECK(run("frobnicate").code == 1);
  CHECK(run("winners /nonexistent.csv").code == 1);
  CHECK(run("run /nonexistent.json").code == 1);
  const auto bad = s.write("bad.json", R"({"matrix":"P4","algorithms":["ccb"],"horizon":0})");
  auto r = run("run " + bad);
  CHECK(r.code == 1);
  CHECK(r.out.find("horizon") != std::string::npos);
  const auto garbage = s.write("bad.csv", "0.5,zz\n0.5,0.5\n");
  CHECK(run("winners " + garbage).code == 1);
  // a bound that overflows is a runtime failure
  CHECK(run("bounds P4 --alpha 0.5001 --delta 0.000001").code == 2);
  CHECK(run("--help").code == 0);
}
