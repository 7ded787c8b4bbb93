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

#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <fstream>
#include <random>
#include <sstream>

#include "etchog/cipher.h"
#include "etchog/errors.h"
#include "etchog/prng.h"
#include "test_util.h"

#ifndef ETCHOG_TEST_DATA_DIR
#error "ETCHOG_TEST_DATA_DIR must be defined"
#endif

namespace etchog {
namespace {

constexpr std::array<Dihedral, 8> kGroup = {{
    {0, false}, {1, false}, {2, false}, {3, false},
    {0, true},  {1, true},  {2, true},  {3, true},
}};

Block MakeBlock(int side, std::vector<std::uint8_t> data) {
  Block b;
  b.side = side;
  b.data = std::move(data);
  return b;
}

std::array<int, 256> Histogram(std::span<const std::uint8_t> px) {
  std::array<int, 256> h{};
  for (auto p : px) ++h[p];
  return h;
}

TEST(SplitMix64, ReferenceStream) {
  // Published reference outputs for seed 1234567.
  SplitMix64 rng(1234567);
  EXPECT_EQ(rng.Next(), 6457827717110365317ULL);
  EXPECT_EQ(rng.Next(), 3203168211198807973ULL);
  EXPECT_EQ(rng.Next(), 9817491932198370423ULL);
  EXPECT_EQ(rng.Next(), 4593380528125082431ULL);
  EXPECT_EQ(rng.Next(), 16408922859458223821ULL);
}

TEST(SplitMix64, BelowStaysInRange) {
  SplitMix64 rng(9);
  for (std::uint64_t bound : {1ULL, 2ULL, 3ULL, 7ULL, 1000ULL, (1ULL << 63) + 5}) {
    for (int i = 0; i < 200; ++i) EXPECT_LT(rng.Below(bound), bound);
  }
}

TEST(DerivePlan, SingleBlock) {
  const CipherPlan plan = DerivePlan({1, 2, 3}, 1);
  EXPECT_EQ(plan.permutation, std::vector<int>{0});
  EXPECT_EQ(plan.transforms.size(), 1u);
}

TEST(DerivePlan, ZeroBlocksRejected) {
  EXPECT_THROW(DerivePlan({1, 2, 3}, 0), InvalidArgument);
}

TEST(DerivePlan, MatchesGoldenFile) {
  std::ifstream in(std::string(ETCHOG_TEST_DATA_DIR) + "/golden_plan_504.txt");
  ASSERT_TRUE(in) << "missing golden plan";
  std::string word;
  KeySet keys;
  std::size_t m = 0;
  in >> word >> keys.k1 >> word >> keys.k2 >> word >> keys.k3 >> word >> m;
  ASSERT_EQ(m, 504u);
  in >> word;
  ASSERT_EQ(word, "perm");
  std::vector<int> perm(m);
  for (auto& p : perm) {
    in >> p;
    --p;  // file is 1-based
  }
  std::vector<BlockTransform> transforms(m);
  for (auto& t : transforms) {
    int rot, flip, neg;
    in >> rot >> flip >> neg;
    t = {{rot, flip != 0}, neg != 0};
  }
  ASSERT_TRUE(in);
  const CipherPlan plan = DerivePlan(keys, m);
  EXPECT_EQ(plan.permutation, perm);
  EXPECT_EQ(plan.transforms, transforms);
  // and again: pure function
  const CipherPlan again = DerivePlan(keys, m);
  EXPECT_EQ(again.permutation, plan.permutation);
}

TEST(DerivePlan, PermutationIsBijection) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t m = 1 + rng() % 700;
    auto perm = DerivePlan(testing::RandomKeys(rng), m).permutation;
    std::sort(perm.begin(), perm.end());
    for (std::size_t i = 0; i < m; ++i) ASSERT_EQ(perm[i], static_cast<int>(i));
  }
}

TEST(DerivePlan, NegateFrequencyIsHalf) {
  const CipherPlan plan = DerivePlan({5, 6, 7}, 100000);
  const auto negated = std::count_if(plan.transforms.begin(), plan.transforms.end(),
                                     [](const BlockTransform& t) { return t.negate; });
  const double freq = static_cast<double>(negated) / 100000.0;
  EXPECT_GE(freq, 0.49);
  EXPECT_LE(freq, 0.51);
}

TEST(DerivePlan, HalfTurnsOnly) {
  const CipherPlan plan = DerivePlan({5, 6, 7}, 1000, {.half_turns_only = true});
  for (const auto& t : plan.transforms) EXPECT_EQ(t.geometry.rotation % 2, 0);
}

TEST(ApplyTransform, Identity) {
  std::mt19937_64 rng(2);
  const Block b = testing::RandomBlock(5, rng);
  EXPECT_EQ(ApplyTransform(b, {0, false}), b);
}

TEST(ApplyTransform, HalfTurnOfTwoByTwo) {
  const Block b = MakeBlock(2, {1, 2, 3, 4});
  EXPECT_EQ(ApplyTransform(b, {2, false}).data, (std::vector<std::uint8_t>{4, 3, 2, 1}));
}

TEST(ApplyTransform, QuarterTurnIsCounterClockwise) {
  // 1 2      2 4
  // 3 4  ->  1 3
  const Block b = MakeBlock(2, {1, 2, 3, 4});
  EXPECT_EQ(ApplyTransform(b, {1, false}).data, (std::vector<std::uint8_t>{2, 4, 1, 3}));
  EXPECT_EQ(ApplyTransform(b, {0, true}).data, (std::vector<std::uint8_t>{2, 1, 4, 3}));
}

TEST(ApplyTransform, InverseUndoesEveryElement) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const Block b = testing::RandomBlock(1 + static_cast<int>(rng() % 9), rng);
    for (const Dihedral& g : kGroup) {
      const Block moved = ApplyTransform(b, g);
      EXPECT_EQ(ApplyTransform(moved, g.Inverse()), b);
      auto a = moved.data, c = b.data;
      std::sort(a.begin(), a.end());
      std::sort(c.begin(), c.end());
      EXPECT_EQ(a, c) << "pixel multiset changed";
    }
  }
}

TEST(Dihedral, CompositionMatchesSequentialApplication) {
  std::mt19937_64 rng(6);
  const Block b = testing::RandomBlock(6, rng);
  for (const Dihedral& f : kGroup) {
    for (const Dihedral& g : kGroup) {
      EXPECT_EQ(ApplyTransform(ApplyTransform(b, f), g), ApplyTransform(b, g.After(f)));
    }
  }
}

TEST(NegateBlock, Values) {
  const Block b = MakeBlock(1, {0});
  EXPECT_EQ(NegateBlock(b, true).data[0], 255);
  EXPECT_EQ(NegateBlock(MakeBlock(1, {128}), false).data[0], 128);
  std::mt19937_64 rng(7);
  const Block r = testing::RandomBlock(7, rng);
  EXPECT_EQ(NegateBlock(NegateBlock(r, true), true), r);
}

TEST(Encrypt, IdentityPlan) {
  std::mt19937_64 rng(8);
  const GrayImage img = testing::RandomImage(32, 24, rng);
  const CipherPlan plan = CipherPlan::Identity(12);
  EXPECT_EQ(Encrypt(img, plan, 8), img);
  EXPECT_EQ(Decrypt(img, plan, 8), img);
}

TEST(Encrypt, ConstantImageWithoutNegation) {
  const GrayImage img(64, 64, 77);
  CipherPlan plan = DerivePlan({1, 2, 3}, 64);
  for (auto& t : plan.transforms) t.negate = false;
  EXPECT_EQ(Encrypt(img, plan, 8), img);
}

TEST(Encrypt, HistogramPreservedWithoutNegation) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const GrayImage img = testing::RandomImage(48, 32, rng);
    CipherPlan plan = DerivePlan(testing::RandomKeys(rng), 24);
    for (auto& t : plan.transforms) t.negate = false;
    EXPECT_EQ(Histogram(Encrypt(img, plan, 8).pixels()), Histogram(img.pixels()));
  }
}

TEST(Encrypt, BlockHistogramsMatchSourceUpToReflection) {
  std::mt19937_64 rng(10);
  const GrayImage img = testing::RandomImage(32, 32, rng);
  const CipherPlan plan = DerivePlan(testing::RandomKeys(rng), 16);
  const auto src = SplitBlocks(img, 8);
  const auto enc = SplitBlocks(Encrypt(img, plan, 8), 8);
  for (std::size_t j = 0; j < enc.size(); ++j) {
    const Block& s = src[static_cast<std::size_t>(plan.permutation[j])];
    auto expected = Histogram(s.data);
    if (plan.transforms[j].negate) std::reverse(expected.begin(), expected.end());
    EXPECT_EQ(Histogram(enc[j].data), expected);
  }
}

TEST(Encrypt, NegationInvariantFingerprint) {
  std::mt19937_64 rng(12);
  const GrayImage img = testing::RandomImage(40, 40, rng);
  const CipherPlan plan = DerivePlan(testing::RandomKeys(rng), 25);
  const auto src = SplitBlocks(img, 8);
  const auto enc = SplitBlocks(Encrypt(img, plan, 8), 8);
  auto fingerprint = [](const Block& b) {
    std::vector<int> f;
    for (auto p : b.data) f.push_back(std::min<int>(p, 255 - p));
    std::sort(f.begin(), f.end());
    return f;
  };
  for (std::size_t j = 0; j < enc.size(); ++j) {
    EXPECT_EQ(fingerprint(enc[j]),
              fingerprint(src[static_cast<std::size_t>(plan.permutation[j])]));
  }
}

TEST(Decrypt, RoundTripProperty) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const int e = 2 + static_cast<int>(rng() % 7);
    const GrayImage img = testing::RandomImage(e * (1 + static_cast<int>(rng() % 6)),
                                               e * (1 + static_cast<int>(rng() % 6)), rng);
    const KeySet keys = testing::RandomKeys(rng);
    EXPECT_EQ(Decrypt(Encrypt(img, keys, e), keys, e), img);
  }
}

TEST(Decrypt, WrongPermutationKeyFails) {
  std::mt19937_64 rng(14);
  int mismatches = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const GrayImage img = testing::RandomImage(32, 32, rng);  // 16 blocks
    KeySet keys = testing::RandomKeys(rng);
    const GrayImage enc = Encrypt(img, keys, 8);
    keys.k1 ^= 1;
    if (!(Decrypt(enc, keys, 8) == img)) ++mismatches;
  }
  EXPECT_EQ(mismatches, 20);
}

TEST(Encrypt, DimensionErrors) {
  const GrayImage img(30, 32);
  EXPECT_THROW(Encrypt(img, KeySet{1, 2, 3}, 8), DimensionError);
  EXPECT_THROW(Decrypt(img, KeySet{1, 2, 3}, 8), DimensionError);
  EXPECT_THROW(Encrypt(GrayImage(16, 16), CipherPlan::Identity(3), 8), DimensionError);
}

}  // namespace
}  // namespace etchog
