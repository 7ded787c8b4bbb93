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

#include "etchog/hog.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "etchog/errors.h"
#include "etchog/exact_sum.h"

namespace etchog {
namespace {

// Differentiates the w x h window at (x0, y0) of `image` into `out`, which
// has the image's dimensions. Central differences inside the window,
// one-sided differences on its border.
void DifferentiateWindow(const GrayImage& image, int x0, int y0, int w, int h,
                         Differentials& out) {
  auto p = [&](int x, int y) -> int { return image.at(x0 + x, y0 + y); };
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      int dx;
      if (x == 0) {
        dx = p(1, y) - p(0, y);
      } else if (x == w - 1) {
        dx = p(w - 1, y) - p(w - 2, y);
      } else {
        dx = p(x + 1, y) - p(x - 1, y);
      }
      int dy;
      if (y == 0) {
        dy = p(x, 1) - p(x, 0);
      } else if (y == h - 1) {
        dy = p(x, h - 1) - p(x, h - 2);
      } else {
        dy = p(x, y + 1) - p(x, y - 1);
      }
      const std::size_t i =
          static_cast<std::size_t>(y0 + y) * out.width + (x0 + x);
      out.dx[i] = dx;
      out.dy[i] = dy;
    }
  }
}

Differentials EmptyLike(int width, int height) {
  Differentials d;
  d.width = width;
  d.height = height;
  d.dx.assign(static_cast<std::size_t>(width) * height, 0);
  d.dy.assign(d.dx.size(), 0);
  return d;
}

void Require(bool ok, const std::string& what) {
  if (!ok) throw InvalidArgument("HOG parameters: " + what);
}

}  // namespace

void HogParams::Validate() const {
  if (grid_mode == GridMode::kPerGrid) Require(grid >= 2, "grid must be >= 2");
  Require(cell >= 1, "cell must be >= 1");
  Require(bins >= 2, "bins must be >= 2");
  Require(block >= 1, "block must be >= 1");
  Require(overlap >= 0 && overlap < block, "overlap must be in [0, block)");
  Require(std::isfinite(epsilon) && epsilon > 0, "epsilon must be > 0");
}

void HogParams::ValidateFor(int width, int height) const {
  Validate();
  if (grid_mode == GridMode::kPerGrid &&
      (width % grid != 0 || height % grid != 0)) {
    throw DimensionError("grid " + std::to_string(grid) +
                         " does not divide image " + std::to_string(width) +
                         "x" + std::to_string(height));
  }
  if (grid_mode == GridMode::kWholeImage && (width < 2 || height < 2)) {
    throw DimensionError("whole-image grid needs at least 2x2 pixels");
  }
  if (width % cell != 0 || height % cell != 0) {
    throw DimensionError("cell " + std::to_string(cell) +
                         " does not divide image " + std::to_string(width) +
                         "x" + std::to_string(height));
  }
  const int cells_x = width / cell;
  const int cells_y = height / cell;
  if (block > std::min(cells_x, cells_y)) {
    throw DimensionError("HOG block of " + std::to_string(block) +
                         " cells does not fit a " + std::to_string(cells_x) +
                         "x" + std::to_string(cells_y) + " cell grid");
  }
}

Differentials ComputeDifferentials(const GrayImage& grid) {
  if (grid.width() < 2 || grid.height() < 2) {
    throw InvalidArgument("differential grid must be at least 2x2");
  }
  Differentials d = EmptyLike(grid.width(), grid.height());
  DifferentiateWindow(grid, 0, 0, grid.width(), grid.height(), d);
  return d;
}

Differentials ImageDifferentials(const GrayImage& image,
                                 const HogParams& params) {
  Differentials d = EmptyLike(image.width(), image.height());
  if (params.grid_mode == GridMode::kWholeImage) {
    if (image.width() < 2 || image.height() < 2) {
      throw DimensionError("whole-image grid needs at least 2x2 pixels");
    }
    DifferentiateWindow(image, 0, 0, image.width(), image.height(), d);
    return d;
  }
  const int g = params.grid;
  if (g < 2) throw InvalidArgument("grid must be >= 2");
  if (image.width() % g != 0 || image.height() % g != 0) {
    throw DimensionError("grid " + std::to_string(g) +
                         " does not divide image " +
                         std::to_string(image.width()) + "x" +
                         std::to_string(image.height()));
  }
  for (int y0 = 0; y0 < image.height(); y0 += g) {
    for (int x0 = 0; x0 < image.width(); x0 += g) {
      DifferentiateWindow(image, x0, y0, g, g, d);
    }
  }
  return d;
}

double GradientDirection(int dx, int dy) {
  if (dy == 0) return std::numbers::pi;
  if (dy < 0) {
    dx = -dx;
    dy = -dy;
  }
  return std::atan2(static_cast<double>(dy), static_cast<double>(dx));
}

GradientField GradientMaps(const Differentials& d) {
  GradientField f;
  f.width = d.width;
  f.height = d.height;
  f.strength.resize(d.dx.size());
  f.direction.resize(d.dx.size());
  for (std::size_t i = 0; i < d.dx.size(); ++i) {
    const std::int64_t sq = static_cast<std::int64_t>(d.dx[i]) * d.dx[i] +
                            static_cast<std::int64_t>(d.dy[i]) * d.dy[i];
    f.strength[i] = std::sqrt(static_cast<double>(sq));
    f.direction[i] = GradientDirection(d.dx[i], d.dy[i]);
  }
  return f;
}

BinVotes VoteBins(int dx, int dy, int bins) {
  if (bins < 2) throw InvalidArgument("bins must be >= 2");
  if (dx == 0 && dy == 0) return BinVotes({0, 1.0});
  if (dy < 0) {
    dx = -dx;
    dy = -dy;
  }
  if (dy == 0) return BinVotes({bins - 1, 0.5}, {0, 0.5});  // pi
  if (dx == 0) {                                             // pi/2
    if (bins % 2 == 0) return BinVotes({bins / 2 - 1, 0.5}, {bins / 2, 0.5});
    return BinVotes({bins / 2, 1.0});
  }
  if (dx == dy || dx == -dy) {  // pi/4 or 3pi/4
    const int quarters = dx > 0 ? 1 : 3;
    if (bins % 4 == 0) {
      const int edge = quarters * bins / 4;
      return BinVotes({edge - 1, 0.5}, {edge, 0.5});
    }
    return BinVotes({quarters * bins / 4, 1.0});
  }
  const double theta =
      std::atan2(static_cast<double>(dy), static_cast<double>(dx));
  const int k = static_cast<int>(std::floor(theta * bins / std::numbers::pi));
  return BinVotes({std::clamp(k, 0, bins - 1), 1.0});
}

CellGrid CellHistograms(const Differentials& d, int cell, int bins) {
  if (cell < 1 || d.width % cell != 0 || d.height % cell != 0) {
    throw DimensionError("cell " + std::to_string(cell) +
                         " does not divide gradient map " +
                         std::to_string(d.width) + "x" +
                         std::to_string(d.height));
  }
  if (bins < 2) throw InvalidArgument("bins must be >= 2");
  CellGrid grid;
  grid.cells_x = d.width / cell;
  grid.cells_y = d.height / cell;
  grid.bins = bins;
  grid.values.assign(
      static_cast<std::size_t>(grid.cells_x) * grid.cells_y * bins, 0.0);
  // Bins are exact sums, so a cell whose pixels were rotated or mirrored
  // yields the same bits.
  std::vector<ExactAccumulator> acc(static_cast<std::size_t>(bins));
  for (int cy = 0; cy < grid.cells_y; ++cy) {
    for (int cx = 0; cx < grid.cells_x; ++cx) {
      acc.assign(acc.size(), ExactAccumulator{});
      for (int y = cy * cell; y < (cy + 1) * cell; ++y) {
        for (int x = cx * cell; x < (cx + 1) * cell; ++x) {
          const int gx = d.dx_at(x, y);
          const int gy = d.dy_at(x, y);
          const double strength = std::sqrt(static_cast<double>(
              static_cast<std::int64_t>(gx) * gx +
              static_cast<std::int64_t>(gy) * gy));
          if (strength == 0.0) continue;
          for (const BinVote& v : VoteBins(gx, gy, bins)) {
            acc[static_cast<std::size_t>(v.bin)].Add(strength * v.fraction);
          }
        }
      }
      double* hist = grid.values.data() +
                     (static_cast<std::size_t>(cy) * grid.cells_x + cx) * bins;
      for (int k = 0; k < bins; ++k) {
        hist[k] = acc[static_cast<std::size_t>(k)].Round();
      }
    }
  }
  return grid;
}

FeatureLayout MakeLayout(int cells_x, int cells_y, int bins, int block,
                         int overlap) {
  if (block < 1 || overlap < 0 || overlap >= block) {
    throw InvalidArgument("HOG block " + std::to_string(block) +
                          " with overlap " + std::to_string(overlap) +
                          " is infeasible");
  }
  if (block > cells_x || block > cells_y) {
    throw DimensionError("HOG block of " + std::to_string(block) +
                         " cells does not fit a " + std::to_string(cells_x) +
                         "x" + std::to_string(cells_y) + " cell grid");
  }
  const int stride = block - overlap;
  FeatureLayout layout;
  layout.cells_x = cells_x;
  layout.cells_y = cells_y;
  layout.blocks_x = (cells_x - block) / stride + 1;
  layout.blocks_y = (cells_y - block) / stride + 1;
  layout.block = block;
  layout.overlap = overlap;
  layout.bins = bins;
  return layout;
}

FeatureLayout LayoutFor(int width, int height, const HogParams& params) {
  params.ValidateFor(width, height);
  return MakeLayout(width / params.cell, height / params.cell, params.bins,
                    params.block, params.overlap);
}

FeatureVector AssembleAndNormalize(const CellGrid& cells, int block,
                                   int overlap, double epsilon) {
  if (!(epsilon > 0)) throw InvalidArgument("epsilon must be > 0");
  FeatureVector f;
  f.layout = MakeLayout(cells.cells_x, cells.cells_y, cells.bins, block,
                        overlap);
  f.values.reserve(f.layout.size());
  const int stride = block - overlap;
  std::vector<double> segment;
  segment.reserve(f.layout.block_length());
  for (int by = 0; by < f.layout.blocks_y; ++by) {
    for (int bx = 0; bx < f.layout.blocks_x; ++bx) {
      segment.clear();
      for (int cy = 0; cy < block; ++cy) {
        for (int cx = 0; cx < block; ++cx) {
          const auto h = cells.cell(bx * stride + cx, by * stride + cy);
          segment.insert(segment.end(), h.begin(), h.end());
        }
      }
      const double sum_sq = ExactSum(
          segment.size(), [&](std::size_t i) { return segment[i] * segment[i]; });
      const double denom = std::sqrt(sum_sq) + epsilon;
      for (double v : segment) f.values.push_back(v / denom);
    }
  }
  return f;
}

FeatureVector Extract(const GrayImage& image, const HogParams& params) {
  params.ValidateFor(image.width(), image.height());
  const Differentials d = ImageDifferentials(image, params);
  const CellGrid cells = CellHistograms(d, params.cell, params.bins);
  return AssembleAndNormalize(cells, params.block, params.overlap,
                              params.epsilon);
}

std::vector<VoteMultiset> IntegerVoteMultisets(const GrayImage& image,
                                               const HogParams& params) {
  params.ValidateFor(image.width(), image.height());
  const Differentials d = ImageDifferentials(image, params);
  const int c = params.cell;
  const int cells_x = image.width() / c;
  const int cells_y = image.height() / c;
  std::vector<VoteMultiset> out(static_cast<std::size_t>(cells_x) * cells_y);
  for (int cy = 0; cy < cells_y; ++cy) {
    for (int cx = 0; cx < cells_x; ++cx) {
      VoteMultiset& m = out[static_cast<std::size_t>(cy) * cells_x + cx];
      for (int y = cy * c; y < (cy + 1) * c; ++y) {
        for (int x = cx * c; x < (cx + 1) * c; ++x) {
          const int gx = d.dx_at(x, y);
          const int gy = d.dy_at(x, y);
          const std::int64_t sq = static_cast<std::int64_t>(gx) * gx +
                                  static_cast<std::int64_t>(gy) * gy;
          const BinVotes votes = VoteBins(gx, gy, params.bins);
          for (const BinVote& v : votes) {
            m.push_back({v.bin, sq, votes.size() == 2 ? 1 : 2});
          }
        }
      }
      std::sort(m.begin(), m.end());
    }
  }
  return out;
}

}  // namespace etchog
