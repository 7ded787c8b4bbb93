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

// Key-derived correspondence between features of a plain image and of its
// encryption.
//
// When grid == cell == cipher block side, block == 1 and overlap == 0,
// every HOG cell of the encrypted image is exactly one cipher block, and
// its vote multiset equals the multiset of the source block with bins
// relabeled:
//   negation            identity (directions are unsigned)
//   half turn           identity
//   quarter turn        cyclic shift by bins / 2 (bins must be even)
//   left-right mirror   reversal k -> bins - 1 - k
// The feature vectors therefore agree up to a permutation that depends on
// the keys only.

#ifndef ETCHOG_EQUIVALENCE_H_
#define ETCHOG_EQUIVALENCE_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "etchog/cipher.h"
#include "etchog/hog.h"
#include "etchog/image.h"

namespace etchog {

/// Maps a plain-image bin to the bin it lands in after `g`. Throws
/// InvalidArgument for a quarter turn with an odd bin count.
std::vector<int> BinPermutation(Dihedral g, int bins);
inline std::vector<int> BinPermutation(const BlockTransform& t, int bins) {
  return BinPermutation(t.geometry, bins);
}

/// Bijection on feature indices; see ApplyPermutation for the direction.
class FeaturePermutation {
 public:
  /// Throws InvalidArgument unless `indices` is a permutation of [0, n).
  explicit FeaturePermutation(std::vector<std::size_t> indices);
  static FeaturePermutation Identity(std::size_t n);

  std::size_t operator()(std::size_t i) const { return indices_[i]; }
  std::size_t size() const { return indices_.size(); }
  std::span<const std::size_t> indices() const { return indices_; }
  FeaturePermutation Inverse() const;

 private:
  std::vector<std::size_t> indices_;
};

/// Throws PreconditionError ("equivalence conditions not met: ...") unless
/// grid == cell == block_side, block == 1, overlap == 0 and the grid mode is
/// per-grid.
void CheckEquivalenceConditions(const HogParams& params, int block_side);

/// Permutation p with ApplyPermutation(Extract(plain), p) ==
/// Extract(Encrypt(plain, plan)). Also rejects quarter turns with odd bins.
FeaturePermutation DeriveFeaturePermutation(const CipherPlan& plan, int width,
                                            int height, int block_side,
                                            const HogParams& params);

/// out[p(i)] = in[i].
std::vector<double> ApplyPermutation(std::span<const double> in,
                                     const FeaturePermutation& p);
FeatureVector ApplyPermutation(const FeatureVector& in,
                               const FeaturePermutation& p);

/// Relabels bins through `bin_map`. Zero-strength votes carry no weight
/// and stay on their canonical bin 0.
VoteMultiset RelabelVotes(const VoteMultiset& votes,
                          std::span<const int> bin_map);

/// Largest elementwise |a - b| / max(|a|, |b|); 0 where both are 0.
double MaxRelativeError(std::span<const double> a, std::span<const double> b);

struct EquivalenceReport {
  double max_rel_error = 0.0;
  bool exact_multiset = false;
  double tolerance = 0.0;
  bool pass = false;
};

/// Encrypts `image` with `keys` (block side = params.grid) and checks both
/// the exact vote multisets and the floating-point features.
EquivalenceReport VerifyEquivalence(const GrayImage& image,
                                    const KeySet& keys,
                                    const HogParams& params, double tolerance,
                                    PlanOptions options = {});

/// "EQUIV pass max_rel_err=<e> exact_multiset=<true|false>".
std::string FormatVerdict(const EquivalenceReport& report);

/// For each HOG block of `encrypted`, the smallest relative error against
/// any HOG block of `plain` moved by any dihedral element (cells rearranged
/// inside the block, bins relabeled); returns the worst block. Zero iff
/// `encrypted` is some block/bin rearrangement of `plain`. Quarter turns are
/// skipped for odd bin counts.
double UnexplainedDiscrepancy(const FeatureVector& encrypted,
                              const FeatureVector& plain);

}  // namespace etchog

#endif  // ETCHOG_EQUIVALENCE_H_
