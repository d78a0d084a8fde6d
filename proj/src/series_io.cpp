// Copyright 2026 The qdyn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qdyn/series_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "qdyn/errors.hpp"

namespace qdyn {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) {
    const auto b = cell.find_first_not_of(" \t\r");
    const auto e = cell.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? std::string() : cell.substr(b, e - b + 1));
  }
  return out;
}

double to_double(const std::string& s, std::size_t line_no) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("series CSV line " + std::to_string(line_no) + ": cannot parse '" + s + "'");
  }
}

}  // namespace

void write_series_csv(std::ostream& out, const PopulationSeries& s) {
  s.validate();
  const std::size_t n = s.num_sites();
  out << "t_fs";
  for (std::size_t m = 0; m < n; ++m) out << ",p_" << m + 1;
  out << ",ipr";
  if (s.ipr_member_mean) out << ",ipr_member_mean";
  out << '\n';
  for (std::size_t i = 0; i < s.size(); ++i) {
    out << fmt(s.times[i]);
    for (std::size_t m = 0; m < n; ++m) out << ',' << fmt(s.populations[i](m));
    out << ',' << fmt(s.ipr[i]);
    if (s.ipr_member_mean) out << ',' << fmt((*s.ipr_member_mean)[i]);
    out << '\n';
  }
}

void write_series_csv(const std::string& path, const PopulationSeries& s) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open " + path + " for writing");
  write_series_csv(out, s);
}

PopulationSeries read_series_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("series CSV is empty");
  const auto header = split(line);
  if (header.empty() || header[0] != "t_fs") throw ConfigError("series CSV must start with t_fs");
  std::size_t n = 0;
  while (1 + n < header.size() && header[1 + n] == "p_" + std::to_string(n + 1)) ++n;
  if (n == 0) throw ConfigError("series CSV has no population columns");
  if (1 + n >= header.size() || header[1 + n] != "ipr") {
    throw ConfigError("series CSV: expected ipr column after populations");
  }
  const bool member = header.size() == n + 3 && header[n + 2] == "ipr_member_mean";
  if (header.size() != n + 2 && !member) throw ConfigError("series CSV has unexpected columns");

  PopulationSeries s;
  if (member) s.ipr_member_mean.emplace();
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = split(line);
    if (cells.size() != header.size()) {
      throw ConfigError("series CSV line " + std::to_string(line_no) + ": wrong column count");
    }
    s.times.push_back(to_double(cells[0], line_no));
    Eigen::VectorXd p(n);
    for (std::size_t m = 0; m < n; ++m) p(m) = to_double(cells[1 + m], line_no);
    s.populations.push_back(p);
    s.ipr.push_back(to_double(cells[1 + n], line_no));
    if (member) s.ipr_member_mean->push_back(to_double(cells[2 + n], line_no));
  }
  s.validate();
  return s;
}

PopulationSeries read_series_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  return read_series_csv(in);
}

}  // namespace qdyn
