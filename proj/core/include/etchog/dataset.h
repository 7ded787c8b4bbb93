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

#ifndef ETCHOG_DATASET_H_
#define ETCHOG_DATASET_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "etchog/image.h"

namespace etchog {

/// Labeled image collection. All images share one size.
struct Dataset {
  std::vector<std::string> class_names;  // ascending
  std::vector<GrayImage> images;
  std::vector<int> labels;               // index into class_names
  std::vector<std::string> item_names;   // "<class>/<file>"

  std::size_t size() const { return images.size(); }
  int width() const { return images.empty() ? 0 : images.front().width(); }
  int height() const { return images.empty() ? 0 : images.front().height(); }
};

struct IngestOptions {
  /// Files whose name contains any of these are skipped. The default drops
  /// the ambient-light frames shipped alongside cropped face databases.
  std::vector<std::string> exclude_substrings = {"Ambient"};
};

/// Reads <dir>/<class>/<*.pgm>, classes and files in lexicographic order.
/// Throws PgmError on unreadable files and DimensionError when image sizes
/// differ.
Dataset IngestDataset(const std::filesystem::path& dir,
                      const IngestOptions& options = {});

struct FixtureOptions {
  int classes = 4;
  int per_class = 16;
  int width = 64;
  int height = 64;
  std::uint64_t seed = 7;
};

/// Synthetic dataset: each class is an oriented stripe texture with its own
/// angle and frequency; every image gets a random phase, angle jitter,
/// a bright blob and additive noise. Deterministic in the options.
Dataset MakeFixture(const FixtureOptions& options = {});

/// Writes <dir>/<class>/<file> as P5 PGM, creating directories.
void WriteDataset(const Dataset& dataset, const std::filesystem::path& dir);

}  // namespace etchog

#endif  // ETCHOG_DATASET_H_
