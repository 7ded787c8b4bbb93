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

#ifndef ETCHOG_FEATURE_IO_H_
#define ETCHOG_FEATURE_IO_H_

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "etchog/hog.h"

namespace etchog {

// Text feature file:
//
//   ETCHOG v1 len=<L> NC=<cell> N=<bins> NB=<block> NO=<overlap>
//   <v_0> <v_1> ... <v_{L-1}>        one line per feature vector
//
// Values are written in scientific notation with 17 significant digits,
// which round-trips every double exactly.

struct FeatureFile {
  std::size_t length = 0;
  int cell = 0;
  int bins = 0;
  int block = 0;
  int overlap = 0;
  std::vector<std::vector<double>> rows;
};

std::string FeatureHeader(std::size_t length, const HogParams& params);

void WriteFeatureFile(std::ostream& out, std::span<const FeatureVector> rows,
                      const HogParams& params);

/// Throws FormatError on a bad header or a row of the wrong length.
FeatureFile ReadFeatureFile(std::istream& in);

/// "%.16e" rendering used by every text format in the project.
std::string FormatDouble(double v);

}  // namespace etchog

#endif  // ETCHOG_FEATURE_IO_H_
