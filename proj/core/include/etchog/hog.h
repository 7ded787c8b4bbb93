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

// Grid-wise histogram-of-oriented-gradients extraction.
//
// The pipeline is:
//   1. The image is cut into grid x grid tiles and each tile is
//      differentiated on its own: central differences inside the tile,
//      one-sided differences on the tile border. Tiles never look at their
//      neighbours, which is what keeps the descriptor stable under block
//      scrambling.
//   2. Per-pixel strength sqrt(dx^2 + dy^2) and unsigned direction in
//      (0, pi] are stitched back into full-size maps.
//   3. Each cell x cell tile of those maps becomes a histogram of `bins`
//      direction bins, votes weighted by strength. Bin k (0-based) covers
//      the open interval (k pi / bins, (k + 1) pi / bins) around the centre
//      (2k + 1) pi / (2 bins). A direction exactly on a bin edge, pi
//      included, splits its vote 50/50 between the two neighbours.
//   4. Cells are grouped into block x block HOG blocks at a stride of
//      (block - overlap) cells.
//   5. Each HOG block is divided by (L2 norm + epsilon) and all blocks are
//      concatenated.
//
// Bins, cells and feature indices are 0-based.

#ifndef ETCHOG_HOG_H_
#define ETCHOG_HOG_H_

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include "etchog/image.h"

namespace etchog {

enum class GridMode {
  kPerGrid,     // differentiate each grid x grid tile independently
  kWholeImage,  // one grid spanning the image; baseline only, does not
                // survive block scrambling
};

struct HogParams {
  int grid = 8;     // differential grid side, pixels
  int cell = 8;     // HOG cell side, pixels
  int bins = 10;    // direction quantization level
  int block = 1;    // HOG block side, cells
  int overlap = 0;  // HOG block overlap, cells
  double epsilon = 1e-6;
  GridMode grid_mode = GridMode::kPerGrid;

  /// Throws InvalidArgument on out-of-range values.
  void Validate() const;
  /// Validate() plus divisibility against an image; throws DimensionError.
  void ValidateFor(int width, int height) const;
};

struct Differentials {
  int width = 0;
  int height = 0;
  std::vector<int> dx;
  std::vector<int> dy;

  int dx_at(int x, int y) const {
    return dx[static_cast<std::size_t>(y) * width + x];
  }
  int dy_at(int x, int y) const {
    return dy[static_cast<std::size_t>(y) * width + x];
  }
};

/// Differentials of a single grid. Needs width, height >= 2.
Differentials ComputeDifferentials(const GrayImage& grid);

/// Per-grid differentials of a whole image, stitched into full-size maps.
Differentials ImageDifferentials(const GrayImage& image,
                                 const HogParams& params);

struct GradientField {
  int width = 0;
  int height = 0;
  std::vector<double> strength;
  std::vector<double> direction;  // (0, pi]
};

/// Unsigned direction of (dx, dy) in (0, pi]. dy == 0 maps to pi, which
/// also covers the zero gradient.
double GradientDirection(int dx, int dy);

GradientField GradientMaps(const Differentials& d);

struct BinVote {
  int bin = 0;
  double fraction = 1.0;
};

/// At most two (bin, fraction) pairs. Edge detection is done with exact
/// integer tests; only pi/2, pi and (when 4 | bins) pi/4, 3pi/4 can be hit
/// by an integer gradient.
class BinVotes {
 public:
  BinVotes() = default;
  explicit BinVotes(BinVote only) : votes_{only, {}}, count_(1) {}
  BinVotes(BinVote a, BinVote b) : votes_{a, b}, count_(2) {}

  const BinVote* begin() const { return votes_.data(); }
  const BinVote* end() const { return votes_.data() + count_; }
  int size() const { return count_; }
  const BinVote& operator[](int i) const { return votes_[i]; }

 private:
  std::array<BinVote, 2> votes_{};
  int count_ = 0;
};

BinVotes VoteBins(int dx, int dy, int bins);

/// cells_y x cells_x histograms, row-major, `bins` values each.
struct CellGrid {
  int cells_x = 0;
  int cells_y = 0;
  int bins = 0;
  std::vector<double> values;

  std::span<const double> cell(int cx, int cy) const {
    return std::span<const double>(values).subspan(
        (static_cast<std::size_t>(cy) * cells_x + cx) * bins, bins);
  }
};

CellGrid CellHistograms(const Differentials& d, int cell, int bins);

/// Shape of a FeatureVector. Concatenation order: HOG blocks row-major,
/// cells inside a block row-major, bins ascending.
struct FeatureLayout {
  int cells_x = 0;
  int cells_y = 0;
  int blocks_x = 0;
  int blocks_y = 0;
  int block = 1;
  int overlap = 0;
  int bins = 0;

  std::size_t block_length() const {
    return static_cast<std::size_t>(bins) * block * block;
  }
  std::size_t size() const {
    return static_cast<std::size_t>(blocks_x) * blocks_y * block_length();
  }
  bool operator==(const FeatureLayout&) const = default;
};

FeatureLayout MakeLayout(int cells_x, int cells_y, int bins, int block,
                         int overlap);
FeatureLayout LayoutFor(int width, int height, const HogParams& params);

struct FeatureVector {
  std::vector<double> values;
  FeatureLayout layout;

  std::span<const double> hog_block(int bx, int by) const {
    return std::span<const double>(values).subspan(
        (static_cast<std::size_t>(by) * layout.blocks_x + bx) *
            layout.block_length(),
        layout.block_length());
  }
};

FeatureVector AssembleAndNormalize(const CellGrid& cells, int block,
                                   int overlap, double epsilon);

FeatureVector Extract(const GrayImage& image, const HogParams& params);

/// One vote in exact arithmetic: fraction is halves / 2.
struct IntegerVote {
  int bin = 0;
  std::int64_t squared_strength = 0;
  int halves = 2;
  auto operator<=>(const IntegerVote&) const = default;
};

using VoteMultiset = std::vector<IntegerVote>;  // kept sorted

/// Per-cell vote multisets, cells in raster order. Zero gradients appear
/// as {bin 0, strength 0, whole}.
std::vector<VoteMultiset> IntegerVoteMultisets(const GrayImage& image,
                                               const HogParams& params);

}  // namespace etchog

#endif  // ETCHOG_HOG_H_
