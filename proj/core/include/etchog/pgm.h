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

#ifndef ETCHOG_PGM_H_
#define ETCHOG_PGM_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "etchog/errors.h"
#include "etchog/image.h"

namespace etchog {

class PgmError : public Error {
 public:
  enum class Kind { kMalformedHeader, kUnsupportedMaxval, kTruncated, kIo };

  PgmError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Parses a binary (P5) or ASCII (P2) graymap with maxval 255. Comments
/// ('#' to end of line) are accepted anywhere in the header.
GrayImage LoadPgm(std::span<const std::uint8_t> bytes);

/// Emits "P5\n{width} {height}\n255\n" followed by the raw raster.
std::vector<std::uint8_t> SavePgm(const GrayImage& image);

GrayImage ReadPgmFile(const std::filesystem::path& path);
void WritePgmFile(const std::filesystem::path& path, const GrayImage& image);

}  // namespace etchog

#endif  // ETCHOG_PGM_H_
