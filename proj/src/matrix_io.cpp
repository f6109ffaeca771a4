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

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "copeland/error.hpp"
#include "copeland/prefmat.hpp"

namespace copeland {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_decimal(const std::string& field, std::size_t line) {
  const std::string text = trim(field);
  if (text.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty field on line " + std::to_string(line));
  }
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(text.c_str(), &end);
  if (errno != 0 || end != text.c_str() + text.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "not a number on line " + std::to_string(line) + ": '" + text + "'");
  }
  return v;
}

}  // namespace

PreferenceMatrix read_matrix_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::vector<double> row;
    std::stringstream fields(line);
    std::string field;
    while (std::getline(fields, field, ',')) row.push_back(parse_decimal(field, line_no));
    if (!line.empty() && line.back() == ',') {
      throw Error(ErrorCode::kInvalidArgument, "trailing comma on line " + std::to_string(line_no));
    }
    rows.push_back(std::move(row));
  }
  if (in.bad()) throw Error(ErrorCode::kIo, "failed reading matrix CSV");
  if (rows.empty()) throw Error(ErrorCode::kInvalidArgument, "matrix CSV is empty");
  auto matrix = PreferenceMatrix::from_rows(rows);
  require_valid(matrix, /*require_no_ties=*/false);
  return matrix;
}

PreferenceMatrix load_matrix_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open matrix file: " + path);
  return read_matrix_csv(in);
}

void write_matrix_csv(std::ostream& out, const PreferenceMatrix& m) {
  char buf[32];
  for (Arm i = 0; i < m.arms(); ++i) {
    for (Arm j = 0; j < m.arms(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
      if (j > 0) out << ',';
      out << buf;
    }
    out << '\n';
  }
}

void save_matrix_csv(const std::string& path, const PreferenceMatrix& m) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write matrix file: " + path);
  write_matrix_csv(out, m);
  if (!out) throw Error(ErrorCode::kIo, "failed writing matrix file: " + path);
}

}  // namespace copeland
