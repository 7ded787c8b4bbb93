// Copyright 2026 The etchog Authors
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

#include "etchog/feature_io.h"

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

#include "etchog/errors.h"

namespace etchog {

std::string FormatDouble(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

std::string FeatureHeader(std::size_t length, const HogParams& params) {
  return "ETCHOG v1 len=" + std::to_string(length) +
         " NC=" + std::to_string(params.cell) +
         " N=" + std::to_string(params.bins) +
         " NB=" + std::to_string(params.block) +
         " NO=" + std::to_string(params.overlap);
}

void WriteFeatureFile(std::ostream& out, std::span<const FeatureVector> rows,
                      const HogParams& params) {
  const std::size_t length = rows.empty() ? 0 : rows.front().values.size();
  out << FeatureHeader(length, params) << '\n';
  for (const FeatureVector& row : rows) {
    if (row.values.size() != length) {
      throw InvalidArgument("feature rows have different lengths");
    }
    for (std::size_t i = 0; i < row.values.size(); ++i) {
      if (i) out << ' ';
      out << FormatDouble(row.values[i]);
    }
    out << '\n';
  }
}

FeatureFile ReadFeatureFile(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw FormatError("feature file is empty");
  FeatureFile file;
  unsigned long long length = 0;
  char trailing = 0;
  if (std::sscanf(header.c_str(), "ETCHOG v1 len=%llu NC=%d N=%d NB=%d NO=%d%c",
                  &length, &file.cell, &file.bins, &file.block, &file.overlap,
                  &trailing) != 5) {
    throw FormatError("bad feature file header: " + header);
  }
  file.length = static_cast<std::size_t>(length);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::vector<double> row;
    row.reserve(file.length);
    std::string token;
    while (fields >> token) {
      char* end = nullptr;
      const double v = std::strtod(token.c_str(), &end);
      if (end != token.c_str() + token.size()) {
        throw FormatError("bad feature value: " + token);
      }
      row.push_back(v);
    }
    if (row.size() != file.length) {
      throw FormatError("feature row " + std::to_string(file.rows.size()) +
                        " has " + std::to_string(row.size()) +
                        " values, header says " + std::to_string(file.length));
    }
    file.rows.push_back(std::move(row));
  }
  return file;
}

}  // namespace etchog
