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

#include "etchog/pgm.h"

#include <cctype>
#include <fstream>
#include <iterator>
#include <optional>

namespace etchog {
namespace {

using Kind = PgmError::Kind;

class HeaderReader {
 public:
  explicit HeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  void SkipSpaceAndComments() {
    while (pos_ < bytes_.size()) {
      const auto c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(c)) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  // Non-negative decimal integer; nullopt if none present.
  std::optional<long> ReadInt() {
    SkipSpaceAndComments();
    long value = 0;
    std::size_t digits = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > 1'000'000'000L) return std::nullopt;
      ++pos_;
      ++digits;
    }
    if (digits == 0) return std::nullopt;
    return value;
  }

  std::size_t pos() const { return pos_; }
  void advance() { ++pos_; }
  bool at_end() const { return pos_ >= bytes_.size(); }
  std::uint8_t peek() const { return bytes_[pos_]; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

long RequireInt(HeaderReader& r, const char* field) {
  auto v = r.ReadInt();
  if (!v) {
    throw PgmError(Kind::kMalformedHeader,
                   std::string("PGM header: missing or invalid ") + field);
  }
  return *v;
}

}  // namespace

GrayImage LoadPgm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '2')) {
    throw PgmError(Kind::kMalformedHeader, "PGM header: magic must be P5 or P2");
  }
  const bool binary = bytes[1] == '5';
  HeaderReader r(bytes.subspan(2));
  if (!r.at_end() && !std::isspace(r.peek()) && r.peek() != '#') {
    throw PgmError(Kind::kMalformedHeader, "PGM header: junk after magic");
  }
  const long width = RequireInt(r, "width");
  const long height = RequireInt(r, "height");
  const long maxval = RequireInt(r, "maxval");
  if (width < 1 || height < 1) {
    throw PgmError(Kind::kMalformedHeader, "PGM header: zero dimension");
  }
  if (maxval != 255) {
    throw PgmError(Kind::kUnsupportedMaxval,
                   "PGM maxval " + std::to_string(maxval) +
                       " unsupported (only 255)");
  }
  const std::size_t count = static_cast<std::size_t>(width) * height;
  std::vector<std::uint8_t> data;
  data.reserve(count);
  if (binary) {
    // Exactly one whitespace byte separates maxval from the raster.
    if (r.at_end() || !std::isspace(r.peek())) {
      throw PgmError(r.at_end() ? Kind::kTruncated : Kind::kMalformedHeader,
                     "PGM header: expected whitespace after maxval");
    }
    r.advance();
    const std::size_t start = 2 + r.pos();
    if (bytes.size() - start < count) {
      throw PgmError(Kind::kTruncated,
                     "PGM raster truncated: " +
                         std::to_string(bytes.size() - start) + " of " +
                         std::to_string(count) + " bytes");
    }
    data.assign(bytes.begin() + static_cast<std::ptrdiff_t>(start),
                bytes.begin() + static_cast<std::ptrdiff_t>(start + count));
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      r.SkipSpaceAndComments();
      if (r.at_end()) {
        throw PgmError(Kind::kTruncated,
                       "PGM raster truncated: " + std::to_string(i) + " of " +
                           std::to_string(count) + " samples");
      }
      auto v = r.ReadInt();
      if (!v || *v > 255) {
        throw PgmError(Kind::kMalformedHeader,
                       "PGM raster: invalid sample at index " +
                           std::to_string(i));
      }
      data.push_back(static_cast<std::uint8_t>(*v));
    }
  }
  return GrayImage(static_cast<int>(width), static_cast<int>(height),
                   std::move(data));
}

std::vector<std::uint8_t> SavePgm(const GrayImage& image) {
  const std::string header = "P5\n" + std::to_string(image.width()) + " " +
                             std::to_string(image.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), image.pixels().begin(), image.pixels().end());
  return out;
}

GrayImage ReadPgmFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PgmError(Kind::kIo, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  try {
    return LoadPgm(bytes);
  } catch (const PgmError& e) {
    throw PgmError(e.kind(), path.string() + ": " + e.what());
  }
}

void WritePgmFile(const std::filesystem::path& path, const GrayImage& image) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PgmError(Kind::kIo, "cannot write " + path.string());
  const auto bytes = SavePgm(image);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw PgmError(Kind::kIo, "write failed: " + path.string());
}

}  // namespace etchog
