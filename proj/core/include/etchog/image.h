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

#ifndef ETCHOG_IMAGE_H_
#define ETCHOG_IMAGE_H_

#include <cstdint>
#include <span>
#include <vector>

namespace etchog {

// Coordinate convention used throughout the library.
//
// Storage is 0-based and row-major: the pixel in column `x` and row `y`
// lives at data[y * width + x], with row 0 at the top. The 1-based
// coordinate (x, y) used when writing the differential and gradient
// formulas maps to storage index (y - 1) * width + (x - 1).

/// 8-bit grayscale raster.
class GrayImage {
 public:
  /// Constant image. Throws DimensionError unless width, height >= 1.
  GrayImage(int width, int height, std::uint8_t fill = 0);
  /// Takes ownership of a row-major raster of exactly width * height bytes.
  GrayImage(int width, int height, std::vector<std::uint8_t> data);

  int width() const { return width_; }
  int height() const { return height_; }

  std::uint8_t at(int x, int y) const { return data_[Index(x, y)]; }
  std::uint8_t& at(int x, int y) { return data_[Index(x, y)]; }

  std::span<const std::uint8_t> pixels() const { return data_; }
  std::span<std::uint8_t> pixels() { return data_; }

  bool operator==(const GrayImage&) const = default;

 private:
  std::size_t Index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_;
  int height_;
  std::vector<std::uint8_t> data_;
};

/// Position of a block in the block grid, in block units.
struct BlockOrigin {
  int column = 0;
  int row = 0;
  bool operator==(const BlockOrigin&) const = default;
};

/// Square tile of a GrayImage.
struct Block {
  int side = 0;
  std::vector<std::uint8_t> data;  // side * side, row-major
  BlockOrigin origin;

  std::uint8_t at(int x, int y) const {
    return data[static_cast<std::size_t>(y) * side + x];
  }
  std::uint8_t& at(int x, int y) {
    return data[static_cast<std::size_t>(y) * side + x];
  }
  bool operator==(const Block&) const = default;
};

/// Splits `image` into side x side blocks in raster order of their origins.
/// Dimensions must be multiples of `side`; images are never padded.
std::vector<Block> SplitBlocks(const GrayImage& image, int side);

/// Inverse of SplitBlocks: blocks[j] is placed at raster position j of a
/// blocks_x by blocks_y grid. Block origins are not consulted.
GrayImage MergeBlocks(std::span<const Block> blocks, int blocks_x,
                      int blocks_y);

}  // namespace etchog

#endif  // ETCHOG_IMAGE_H_
