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

// Block-scrambling image cipher.
//
// An image is cut into E x E blocks which are then (1) shuffled by a
// permutation derived from K1, (2) each moved by one of the eight
// symmetries of the square derived from K2 and (3) each optionally
// intensity-inverted (p -> 255 - p) by a bit derived from K3.

#ifndef ETCHOG_CIPHER_H_
#define ETCHOG_CIPHER_H_

#include <cstdint>
#include <vector>

#include "etchog/image.h"

namespace etchog {

struct KeySet {
  std::uint64_t k1 = 0;  // block permutation
  std::uint64_t k2 = 0;  // rotation / inversion
  std::uint64_t k3 = 0;  // negative-positive transform
  bool operator==(const KeySet&) const = default;
};

/// Element of the dihedral group of the square. Acts on a block as a
/// counter-clockwise rotation by `rotation` quarter turns followed, when
/// `hflip` is set, by a left-right mirror.
struct Dihedral {
  int rotation = 0;  // 0..3
  bool hflip = false;

  bool IsIdentity() const { return rotation == 0 && !hflip; }
  Dihedral Inverse() const;
  /// The element equivalent to applying `first`, then `*this`.
  Dihedral After(const Dihedral& first) const;

  bool operator==(const Dihedral&) const = default;
};

struct BlockTransform {
  Dihedral geometry;
  bool negate = false;
  bool operator==(const BlockTransform&) const = default;
};

/// Key-derived cipher schedule for an image of `size()` blocks.
/// Output slot j receives input block permutation[j] (0-based), moved by
/// transforms[j].
struct CipherPlan {
  std::vector<int> permutation;
  std::vector<BlockTransform> transforms;

  std::size_t size() const { return permutation.size(); }
  static CipherPlan Identity(std::size_t blocks);
};

struct PlanOptions {
  /// Restrict rotations to 0 and 180 degrees. Needed when the histogram
  /// bin count is odd and quarter turns have no exact bin relabeling.
  bool half_turns_only = false;
};

/// Derives the plan for `blocks` blocks. Draw order is fixed: the K1 stream
/// drives a descending Fisher-Yates shuffle of [0, blocks); then, for each
/// slot in raster order, one K2 draw (bits 0-1 rotation, bit 2 mirror) and
/// one K3 draw (bit 0 negation).
CipherPlan DerivePlan(const KeySet& keys, std::size_t blocks,
                      PlanOptions options = {});

/// Geometric part of a transform. Preserves the pixel multiset.
Block ApplyTransform(const Block& block, Dihedral g);

/// p -> 255 - p on every pixel when `negate` is set.
Block NegateBlock(const Block& block, bool negate);

GrayImage Encrypt(const GrayImage& image, const CipherPlan& plan,
                  int block_side);
GrayImage Decrypt(const GrayImage& image, const CipherPlan& plan,
                  int block_side);

GrayImage Encrypt(const GrayImage& image, const KeySet& keys, int block_side,
                  PlanOptions options = {});
GrayImage Decrypt(const GrayImage& image, const KeySet& keys, int block_side,
                  PlanOptions options = {});

/// Number of blocks an image is cut into; throws DimensionError when
/// `block_side` does not divide both dimensions.
std::size_t BlockCount(int width, int height, int block_side);

}  // namespace etchog

#endif  // ETCHOG_CIPHER_H_
