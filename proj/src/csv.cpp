// Copyright 2026 The ctlcheck Authors
//
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

#include "ctlcheck/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ctlcheck {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) {
    // trim surrounding blanks
    std::size_t a = field.find_first_not_of(" \t\r");
    std::size_t b = field.find_last_not_of(" \t\r");
    fields.push_back(a == std::string::npos ? std::string()
                                            : field.substr(a, b - a + 1));
  }
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_field(const std::string& field, const std::string& path,
                   std::size_t line_no, std::size_t column) {
  double v = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end) {
    throw ParseError(path + ":" + std::to_string(line_no) + ": column " +
                     std::to_string(column + 1) + " is not a number: '" +
                     field + "'");
  }
  return v;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::string(buf);
}

RawTrace read_raw_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open trace file '" + path + "'");
  }
  std::string line;
  std::size_t line_no = 0;
  RawTrace trace;

  // header: t,<var1>,<var2>,...
  if (!std::getline(in, line)) {
    throw ParseError(path + ": empty file, expected a 't,<vars>' header");
  }
  ++line_no;
  auto header = split_csv_line(line);
  if (header.size() < 2 || header.front() != "t") {
    throw ParseError(path + ":1: header must be 't,<var1>,...' but is '" +
                     line + "'");
  }
  trace.variables.assign(header.begin() + 1, header.end());

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    auto fields = split_csv_line(line);
    if (fields.size() != header.size()) {
      throw ParseError(path + ":" + std::to_string(line_no) + ": expected " +
                       std::to_string(header.size()) + " fields, got " +
                       std::to_string(fields.size()));
    }
    trace.times.push_back(parse_field(fields[0], path, line_no, 0));
    std::vector<double> row(fields.size() - 1);
    for (std::size_t i = 1; i < fields.size(); ++i) {
      row[i - 1] = parse_field(fields[i], path, line_no, i);
    }
    trace.samples.push_back(std::move(row));
  }
  if (trace.times.empty()) {
    throw InputError(path + ": trace has a header but no samples");
  }
  trace.validate();
  return trace;
}

void write_raw_csv(const RawTrace& trace, const std::string& path) {
  trace.validate();
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot write trace file '" + path + "'");
  }
  out << "t";
  for (const auto& v : trace.variables) out << "," << v;
  out << "\n";
  for (std::size_t i = 0; i < trace.times.size(); ++i) {
    out << format_double(trace.times[i]);
    for (double v : trace.samples[i]) out << "," << format_double(v);
    out << "\n";
  }
  if (!out) {
    throw IoError("failed while writing trace file '" + path + "'");
  }
}

}  // namespace ctlcheck
