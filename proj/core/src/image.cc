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

#include "etchog/image.h"

#include <algorithm>
#include <string>

#include "etchog/errors.h"

namespace etchog {

GrayImage::GrayImage(int width, int height, std::uint8_t fill)
    : width_(width), height_(height) {
  if (width < 1 || height < 1) {
    throw DimensionError("image dimensions must be positive, got " +
                         std::to_string(width) + "x" + std::to_string(height));
  }
  data_.assign(static_cast<std::size_t>(width) * height, fill);
}

GrayImage::GrayImage(int width, int height, std::vector<std::uint8_t> data)
    : width_(width), height_(height), data_(std::move(data)) {
  if (width < 1 || height < 1) {
    throw DimensionError("image dimensions must be positive, got " +
                         std::to_string(width) + "x" + std::to_string(height));
  }
  if (data_.size() != static_cast<std::size_t>(width) * height) {
    throw DimensionError("raster holds " + std::to_string(data_.size()) +
                         " bytes, expected " +
                         std::to_string(static_cast<std::size_t>(width) *
                                        height));
  }
}

std::vector<Block> SplitBlocks(const GrayImage& image, int side) {
  if (side < 1) throw DimensionError("block side must be positive");
  if (image.width() % side != 0 || image.height() % side != 0) {
    throw DimensionError("block side " + std::to_string(side) +
                         " does not divide image " +
                         std::to_string(image.width()) + "x" +
                         std::to_string(image.height()));
  }
  const int blocks_x = image.width() / side;
  const int blocks_y = image.height() / side;
  std::vector<Block> blocks;
  blocks.reserve(static_cast<std::size_t>(blocks_x) * blocks_y);
  for (int by = 0; by < blocks_y; ++by) {
    for (int bx = 0; bx < blocks_x; ++bx) {
      Block block;
      block.side = side;
      block.origin = {bx, by};
      block.data.resize(static_cast<std::size_t>(side) * side);
      for (int y = 0; y < side; ++y) {
        const auto row = image.pixels().subspan(
            static_cast<std::size_t>(by * side + y) * image.width() +
                static_cast<std::size_t>(bx) * side,
            side);
        std::copy(row.begin(), row.end(),
                  block.data.begin() + static_cast<std::ptrdiff_t>(y) * side);
      }
      blocks.push_back(std::move(block));
    }
  }
  return blocks;
}

GrayImage MergeBlocks(std::span<const Block> blocks, int blocks_x,
                      int blocks_y) {
  if (blocks_x < 1 || blocks_y < 1 ||
      blocks.size() != static_cast<std::size_t>(blocks_x) * blocks_y) {
    throw DimensionError("expected " + std::to_string(blocks_x) + "x" +
                         std::to_string(blocks_y) + " blocks, got " +
                         std::to_string(blocks.size()));
  }
  const int side = blocks.front().side;
  for (const Block& b : blocks) {
    if (b.side != side ||
        b.data.size() != static_cast<std::size_t>(side) * side) {
      throw DimensionError("blocks have mixed sizes");
    }
  }
  GrayImage image(blocks_x * side, blocks_y * side);
  for (int by = 0; by < blocks_y; ++by) {
    for (int bx = 0; bx < blocks_x; ++bx) {
      const Block& b = blocks[static_cast<std::size_t>(by) * blocks_x + bx];
      for (int y = 0; y < side; ++y) {
        std::copy_n(b.data.begin() + static_cast<std::ptrdiff_t>(y) * side,
                    side, &image.at(bx * side, by * side + y));
      }
    }
  }
  return image;
}

}  // namespace etchog
