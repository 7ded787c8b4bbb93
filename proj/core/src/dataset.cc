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

#include "etchog/dataset.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "etchog/errors.h"
#include "etchog/pgm.h"
#include "etchog/prng.h"

namespace etchog {
namespace fs = std::filesystem;
namespace {

bool IsPgm(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return ext == ".pgm";
}

// Uniform in [0, 1) from the top 53 bits.
double Uniform(SplitMix64& rng) {
  return static_cast<double>(rng.Next() >> 11) * 0x1.0p-53;
}

double Normal(SplitMix64& rng) {
  const double u1 = 1.0 - Uniform(rng);
  const double u2 = Uniform(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace

Dataset IngestDataset(const fs::path& dir, const IngestOptions& options) {
  if (!fs::is_directory(dir)) {
    throw InvalidArgument("dataset directory not found: " + dir.string());
  }
  std::vector<fs::path> class_dirs;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_directory()) class_dirs.push_back(entry.path());
  }
  std::sort(class_dirs.begin(), class_dirs.end());

  Dataset data;
  for (const fs::path& class_dir : class_dirs) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(class_dir)) {
      if (!entry.is_regular_file() || !IsPgm(entry.path())) continue;
      const std::string name = entry.path().filename().string();
      const bool excluded = std::any_of(
          options.exclude_substrings.begin(), options.exclude_substrings.end(),
          [&](const std::string& s) {
            return !s.empty() && name.find(s) != std::string::npos;
          });
      if (!excluded) files.push_back(entry.path());
    }
    if (files.empty()) continue;
    std::sort(files.begin(), files.end());
    const int label = static_cast<int>(data.class_names.size());
    data.class_names.push_back(class_dir.filename().string());
    for (const fs::path& file : files) {
      GrayImage image = ReadPgmFile(file);
      if (!data.images.empty() && (image.width() != data.width() ||
                                   image.height() != data.height())) {
        throw DimensionError(file.string() + " is " +
                             std::to_string(image.width()) + "x" +
                             std::to_string(image.height()) +
                             ", collection is " + std::to_string(data.width()) +
                             "x" + std::to_string(data.height()));
      }
      data.images.push_back(std::move(image));
      data.labels.push_back(label);
      data.item_names.push_back(data.class_names.back() + "/" +
                                file.filename().string());
    }
  }
  if (data.images.empty()) {
    throw InvalidArgument("no PGM images under " + dir.string());
  }
  return data;
}

Dataset MakeFixture(const FixtureOptions& o) {
  if (o.classes < 1 || o.per_class < 1) {
    throw InvalidArgument("fixture needs at least one class and one image");
  }
  Dataset data;
  SplitMix64 rng(o.seed);
  const double pi = std::numbers::pi;
  for (int c = 0; c < o.classes; ++c) {
    char name[32];
    std::snprintf(name, sizeof name, "class%02d", c);
    data.class_names.push_back(name);
    const double angle = pi * c / o.classes;
    const double period = 6.0 + 3.0 * (c % 3);
    for (int k = 0; k < o.per_class; ++k) {
      const double jitter = (Uniform(rng) - 0.5) * (pi / 4.0);
      const double phase = Uniform(rng) * 2.0 * pi;
      const double blob_x = Uniform(rng) * o.width;
      const double blob_y = Uniform(rng) * o.height;
      const double blob_r = 4.0 + Uniform(rng) * 8.0;
      const double contrast = 25.0 + Uniform(rng) * 40.0;
      const double ca = std::cos(angle + jitter);
      const double sa = std::sin(angle + jitter);
      GrayImage image(o.width, o.height);
      for (int y = 0; y < o.height; ++y) {
        for (int x = 0; x < o.width; ++x) {
          double v = 128.0 +
                     contrast * std::sin(2.0 * pi * (x * ca + y * sa) / period +
                                         phase);
          const double dx = x - blob_x;
          const double dy = y - blob_y;
          if (dx * dx + dy * dy < blob_r * blob_r) v += 60.0;
          v += 18.0 * Normal(rng);
          image.at(x, y) = static_cast<std::uint8_t>(
              std::clamp(std::lround(v), 0L, 255L));
        }
      }
      char file[48];
      std::snprintf(file, sizeof file, "%s/img%03d.pgm", name, k);
      data.images.push_back(std::move(image));
      data.labels.push_back(c);
      data.item_names.push_back(file);
    }
  }
  return data;
}

void WriteDataset(const Dataset& dataset, const fs::path& dir) {
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    const fs::path path = dir / dataset.item_names[i];
    fs::create_directories(path.parent_path());
    WritePgmFile(path, dataset.images[i]);
  }
}

}  // namespace etchog
