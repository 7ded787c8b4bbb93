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

// Correctly rounded floating-point summation.
//
// Features of an encrypted image are a permutation of the plain features,
// so every sum taken over them (histogram bins, block norms, kernel dot
// products) has to give the same bits in any order. The sums here are the
// exact mathematical sum of the terms rounded once to the nearest double,
// which is order independent by definition.
//
// Terms are added into a fixed-point accumulator that spans the whole
// double range (2^-1074 .. 2^1024) in 32-bit digits held in 64-bit limbs,
// so additions never round; rounding happens once in Round().

#ifndef ETCHOG_EXACT_SUM_H_
#define ETCHOG_EXACT_SUM_H_

#include <array>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>

namespace etchog {

__extension__ using Uint128 = unsigned __int128;

class ExactAccumulator {
 public:
  void Add(double v) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    const auto biased = static_cast<int>((bits >> 52) & 0x7FF);
    if (biased == 0x7FF) {  // inf or nan: no exact value, propagate as is
      special_ += v;
      has_special_ = true;
      return;
    }
    std::uint64_t mantissa = bits & ((std::uint64_t{1} << 52) - 1);
    int position = 0;  // bit position of the mantissa's lsb above 2^-1074
    if (biased != 0) {
      mantissa |= std::uint64_t{1} << 52;
      position = biased - 1;
    }
    if (mantissa == 0) return;
    if (++adds_ == kAddsPerNormalize) Normalize();
    const auto shifted = static_cast<Uint128>(mantissa)
                         << (position % 32);
    const auto limb = static_cast<std::size_t>(position / 32);
    const auto d0 = static_cast<std::int64_t>(shifted & kDigitMask);
    const auto d1 = static_cast<std::int64_t>((shifted >> 32) & kDigitMask);
    const auto d2 = static_cast<std::int64_t>(shifted >> 64);
    if (bits >> 63) {
      limbs_[limb] -= d0;
      limbs_[limb + 1] -= d1;
      limbs_[limb + 2] -= d2;
    } else {
      limbs_[limb] += d0;
      limbs_[limb + 1] += d1;
      limbs_[limb + 2] += d2;
    }
  }

  /// The accumulated sum rounded to nearest, ties to even.
  double Round() const;

 private:
  static constexpr std::size_t kLimbs = 68;
  static constexpr std::uint64_t kDigitMask = 0xFFFFFFFFULL;
  // Each addition moves a limb by less than 2^32; stay far from int64
  // overflow.
  static constexpr std::uint64_t kAddsPerNormalize = std::uint64_t{1} << 30;

  void Normalize();

  std::array<std::int64_t, kLimbs> limbs_{};
  std::uint64_t adds_ = 0;
  double special_ = 0.0;
  bool has_special_ = false;
};

/// Correctly rounded sum of term(0) .. term(n - 1).
template <typename Term>
double ExactSum(std::size_t n, Term&& term) {
  ExactAccumulator acc;
  for (std::size_t i = 0; i < n; ++i) acc.Add(term(i));
  return acc.Round();
}

inline double ExactSum(std::span<const double> values) {
  ExactAccumulator acc;
  for (double v : values) acc.Add(v);
  return acc.Round();
}

}  // namespace etchog

#endif  // ETCHOG_EXACT_SUM_H_
