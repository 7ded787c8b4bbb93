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

#include "etchog/cipher.h"

#include <numeric>
#include <span>
#include <string>

#include "etchog/errors.h"
#include "etchog/prng.h"

namespace etchog {
namespace {

Block RotateQuarterCcw(const Block& in) {
  Block out = in;
  const int e = in.side;
  for (int y = 0; y < e; ++y) {
    for (int x = 0; x < e; ++x) out.at(x, y) = in.at(e - 1 - y, x);
  }
  return out;
}

Block MirrorLeftRight(const Block& in) {
  Block out = in;
  const int e = in.side;
  for (int y = 0; y < e; ++y) {
    for (int x = 0; x < e; ++x) out.at(x, y) = in.at(e - 1 - x, y);
  }
  return out;
}

void CheckPlan(const CipherPlan& plan, std::size_t blocks) {
  if (plan.permutation.size() != blocks || plan.transforms.size() != blocks) {
    throw DimensionError("cipher plan covers " +
                         std::to_string(plan.permutation.size()) +
                         " blocks, image has " + std::to_string(blocks));
  }
}

}  // namespace

Dihedral Dihedral::Inverse() const {
  if (hflip) return *this;  // reflections are involutions
  return {(4 - rotation) % 4, false};
}

Dihedral Dihedral::After(const Dihedral& first) const {
  // Mirror then rotate equals inverse rotation then mirror.
  const int r = first.hflip ? (first.rotation - rotation) : (first.rotation + rotation);
  return {((r % 4) + 4) % 4, first.hflip != hflip};
}

CipherPlan CipherPlan::Identity(std::size_t blocks) {
  CipherPlan plan;
  plan.permutation.resize(blocks);
  std::iota(plan.permutation.begin(), plan.permutation.end(), 0);
  plan.transforms.assign(blocks, BlockTransform{});
  return plan;
}

CipherPlan DerivePlan(const KeySet& keys, std::size_t blocks,
                      PlanOptions options) {
  if (blocks == 0) throw InvalidArgument("cipher plan needs at least one block");
  CipherPlan plan = CipherPlan::Identity(blocks);
  SplitMix64 perm_rng(keys.k1);
  FisherYatesShuffle(std::span<int>(plan.permutation), perm_rng);

  SplitMix64 geometry_rng(keys.k2);
  SplitMix64 negate_rng(keys.k3);
  for (BlockTransform& t : plan.transforms) {
    const std::uint64_t g = geometry_rng.Next();
    t.geometry.rotation = static_cast<int>(g & 3U);
    if (options.half_turns_only) t.geometry.rotation &= 2;
    t.geometry.hflip = ((g >> 2) & 1U) != 0;
    t.negate = (negate_rng.Next() & 1U) != 0;
  }
  return plan;
}

Block ApplyTransform(const Block& block, Dihedral g) {
  Block out = block;
  for (int i = 0; i < g.rotation; ++i) out = RotateQuarterCcw(out);
  if (g.hflip) out = MirrorLeftRight(out);
  return out;
}

Block NegateBlock(const Block& block, bool negate) {
  Block out = block;
  if (negate) {
    for (auto& p : out.data) p = static_cast<std::uint8_t>(255 - p);
  }
  return out;
}

std::size_t BlockCount(int width, int height, int block_side) {
  if (block_side < 1 || width % block_side != 0 || height % block_side != 0) {
    throw DimensionError("block side " + std::to_string(block_side) +
                         " does not divide image " + std::to_string(width) +
                         "x" + std::to_string(height));
  }
  return static_cast<std::size_t>(width / block_side) *
         static_cast<std::size_t>(height / block_side);
}

GrayImage Encrypt(const GrayImage& image, const CipherPlan& plan,
                  int block_side) {
  const auto blocks = SplitBlocks(image, block_side);
  CheckPlan(plan, blocks.size());
  std::vector<Block> out;
  out.reserve(blocks.size());
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    const auto& t = plan.transforms[j];
    out.push_back(NegateBlock(
        ApplyTransform(blocks.at(static_cast<std::size_t>(plan.permutation[j])),
                       t.geometry),
        t.negate));
  }
  return MergeBlocks(out, image.width() / block_side,
                     image.height() / block_side);
}

GrayImage Decrypt(const GrayImage& image, const CipherPlan& plan,
                  int block_side) {
  const auto blocks = SplitBlocks(image, block_side);
  CheckPlan(plan, blocks.size());
  std::vector<Block> out(blocks.size());
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    const auto& t = plan.transforms[j];
    out.at(static_cast<std::size_t>(plan.permutation[j])) = ApplyTransform(
        NegateBlock(blocks[j], t.negate), t.geometry.Inverse());
  }
  return MergeBlocks(out, image.width() / block_side,
                     image.height() / block_side);
}

GrayImage Encrypt(const GrayImage& image, const KeySet& keys, int block_side,
                  PlanOptions options) {
  return Encrypt(image,
                 DerivePlan(keys, BlockCount(image.width(), image.height(),
                                             block_side),
                            options),
                 block_side);
}

GrayImage Decrypt(const GrayImage& image, const KeySet& keys, int block_side,
                  PlanOptions options) {
  return Decrypt(image,
                 DerivePlan(keys, BlockCount(image.width(), image.height(),
                                             block_side),
                            options),
                 block_side);
}

}  // namespace etchog
