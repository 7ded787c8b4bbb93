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

#include "etchog/equivalence.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "etchog/errors.h"

namespace etchog {
namespace {

constexpr Dihedral kAllSymmetries[] = {
    {0, false}, {1, false}, {2, false}, {3, false},
    {0, true},  {1, true},  {2, true},  {3, true},
};

// Where position (x, y) of a side x side square goes under `g`.
std::pair<int, int> MovePosition(int x, int y, int side, Dihedral g) {
  for (int i = 0; i < g.rotation; ++i) {
    // Quarter turn counter-clockwise: source (sx, sy) lands at (sy, side-1-sx).
    const int nx = y;
    const int ny = side - 1 - x;
    x = nx;
    y = ny;
  }
  if (g.hflip) x = side - 1 - x;
  return {x, y};
}

}  // namespace

std::vector<int> BinPermutation(Dihedral g, int bins) {
  if (bins < 2) throw InvalidArgument("bins must be >= 2");
  if (g.rotation % 2 == 1 && bins % 2 == 1) {
    throw InvalidArgument(
        "quarter-turn relabeling needs an even bin count, got " +
        std::to_string(bins));
  }
  const int shift = (g.rotation % 2 == 1) ? bins / 2 : 0;
  std::vector<int> map(bins);
  for (int k = 0; k < bins; ++k) {
    int to = (k + shift) % bins;
    if (g.hflip) to = bins - 1 - to;
    map[k] = to;
  }
  return map;
}

FeaturePermutation::FeaturePermutation(std::vector<std::size_t> indices)
    : indices_(std::move(indices)) {
  std::vector<bool> seen(indices_.size(), false);
  for (std::size_t v : indices_) {
    if (v >= indices_.size() || seen[v]) {
      throw InvalidArgument("feature permutation is not a bijection");
    }
    seen[v] = true;
  }
}

FeaturePermutation FeaturePermutation::Identity(std::size_t n) {
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  return FeaturePermutation(std::move(idx));
}

FeaturePermutation FeaturePermutation::Inverse() const {
  std::vector<std::size_t> inv(indices_.size());
  for (std::size_t i = 0; i < indices_.size(); ++i) inv[indices_[i]] = i;
  return FeaturePermutation(std::move(inv));
}

void CheckEquivalenceConditions(const HogParams& params, int block_side) {
  std::string why;
  if (params.grid_mode != GridMode::kPerGrid) {
    why = "whole-image differentials";
  } else if (params.grid != block_side || params.cell != block_side) {
    why = "grid=" + std::to_string(params.grid) +
          " cell=" + std::to_string(params.cell) +
          " must both equal block side " + std::to_string(block_side);
  } else if (params.block != 1 || params.overlap != 0) {
    why = "HOG block=" + std::to_string(params.block) +
          " overlap=" + std::to_string(params.overlap) +
          " (need block=1, overlap=0)";
  }
  if (!why.empty()) {
    throw PreconditionError("equivalence conditions not met: " + why);
  }
}

FeaturePermutation DeriveFeaturePermutation(const CipherPlan& plan, int width,
                                            int height, int block_side,
                                            const HogParams& params) {
  CheckEquivalenceConditions(params, block_side);
  const std::size_t blocks = BlockCount(width, height, block_side);
  if (plan.size() != blocks || plan.transforms.size() != blocks) {
    throw DimensionError("cipher plan covers " + std::to_string(plan.size()) +
                         " blocks, image has " + std::to_string(blocks));
  }
  const auto bins = static_cast<std::size_t>(params.bins);
  std::vector<std::size_t> idx(blocks * bins);
  for (std::size_t j = 0; j < blocks; ++j) {
    const Dihedral g = plan.transforms[j].geometry;
    if (g.rotation % 2 == 1 && params.bins % 2 == 1) {
      throw PreconditionError(
          "equivalence conditions not met: quarter-turn block with odd bin "
          "count " + std::to_string(params.bins));
    }
    const auto map = BinPermutation(g, params.bins);
    const auto src = static_cast<std::size_t>(plan.permutation[j]);
    for (std::size_t k = 0; k < bins; ++k) {
      idx[src * bins + k] = j * bins + static_cast<std::size_t>(map[k]);
    }
  }
  return FeaturePermutation(std::move(idx));
}

std::vector<double> ApplyPermutation(std::span<const double> in,
                                     const FeaturePermutation& p) {
  if (in.size() != p.size()) {
    throw DimensionError("feature length " + std::to_string(in.size()) +
                         " does not match permutation length " +
                         std::to_string(p.size()));
  }
  std::vector<double> out(in.size());
  for (std::size_t i = 0; i < in.size(); ++i) out[p(i)] = in[i];
  return out;
}

FeatureVector ApplyPermutation(const FeatureVector& in,
                               const FeaturePermutation& p) {
  return {ApplyPermutation(in.values, p), in.layout};
}

VoteMultiset RelabelVotes(const VoteMultiset& votes,
                          std::span<const int> bin_map) {
  VoteMultiset out;
  out.reserve(votes.size());
  for (IntegerVote v : votes) {
    if (v.squared_strength != 0) v.bin = bin_map[static_cast<std::size_t>(v.bin)];
    out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

double MaxRelativeError(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw DimensionError("vectors of length " + std::to_string(a.size()) +
                         " and " + std::to_string(b.size()));
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double scale = std::max(std::abs(a[i]), std::abs(b[i]));
    if (scale == 0.0) continue;
    worst = std::max(worst, std::abs(a[i] - b[i]) / scale);
  }
  return worst;
}

EquivalenceReport VerifyEquivalence(const GrayImage& image,
                                    const KeySet& keys,
                                    const HogParams& params, double tolerance,
                                    PlanOptions options) {
  const int side = params.grid;
  CheckEquivalenceConditions(params, side);
  params.ValidateFor(image.width(), image.height());
  const CipherPlan plan =
      DerivePlan(keys, BlockCount(image.width(), image.height(), side), options);
  const FeaturePermutation p =
      DeriveFeaturePermutation(plan, image.width(), image.height(), side, params);
  const GrayImage encrypted = Encrypt(image, plan, side);

  EquivalenceReport report;
  report.tolerance = tolerance;
  const FeatureVector plain_features = Extract(image, params);
  const FeatureVector encrypted_features = Extract(encrypted, params);
  report.max_rel_error = MaxRelativeError(
      ApplyPermutation(plain_features.values, p), encrypted_features.values);

  const auto plain_votes = IntegerVoteMultisets(image, params);
  const auto encrypted_votes = IntegerVoteMultisets(encrypted, params);
  report.exact_multiset = true;
  for (std::size_t j = 0; j < plan.size(); ++j) {
    const auto map = BinPermutation(plan.transforms[j], params.bins);
    const auto& source =
        plain_votes[static_cast<std::size_t>(plan.permutation[j])];
    if (RelabelVotes(source, map) != encrypted_votes[j]) {
      report.exact_multiset = false;
      break;
    }
  }
  report.pass = report.exact_multiset && report.max_rel_error <= tolerance;
  return report;
}

std::string FormatVerdict(const EquivalenceReport& r) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "EQUIV %s max_rel_err=%.3e exact_multiset=%s",
                r.pass ? "pass" : "fail", r.max_rel_error,
                r.exact_multiset ? "true" : "false");
  return buf;
}

double UnexplainedDiscrepancy(const FeatureVector& encrypted,
                              const FeatureVector& plain) {
  if (!(encrypted.layout == plain.layout) ||
      encrypted.values.size() != plain.values.size()) {
    throw DimensionError("feature layouts differ");
  }
  const FeatureLayout& l = plain.layout;
  const int side = l.block;
  const auto bins = static_cast<std::size_t>(l.bins);

  // Every dihedral image of every plain HOG block.
  std::vector<std::vector<double>> candidates;
  for (const Dihedral& g : kAllSymmetries) {
    if (g.rotation % 2 == 1 && l.bins % 2 == 1) continue;
    const auto map = BinPermutation(g, l.bins);
    for (int by = 0; by < l.blocks_y; ++by) {
      for (int bx = 0; bx < l.blocks_x; ++bx) {
        const auto src = plain.hog_block(bx, by);
        std::vector<double> moved(src.size());
        for (int cy = 0; cy < side; ++cy) {
          for (int cx = 0; cx < side; ++cx) {
            const auto [tx, ty] = MovePosition(cx, cy, side, g);
            const std::size_t from =
                (static_cast<std::size_t>(cy) * side + cx) * bins;
            const std::size_t to =
                (static_cast<std::size_t>(ty) * side + tx) * bins;
            for (std::size_t k = 0; k < bins; ++k) {
              moved[to + static_cast<std::size_t>(map[k])] = src[from + k];
            }
          }
        }
        candidates.push_back(std::move(moved));
      }
    }
  }

  double worst = 0.0;
  for (int by = 0; by < l.blocks_y; ++by) {
    for (int bx = 0; bx < l.blocks_x; ++bx) {
      const auto target = encrypted.hog_block(bx, by);
      double best = std::numeric_limits<double>::infinity();
      for (const auto& c : candidates) {
        best = std::min(best, MaxRelativeError(target, c));
        if (best == 0.0) break;
      }
      worst = std::max(worst, best);
    }
  }
  return worst;
}

}  // namespace etchog
