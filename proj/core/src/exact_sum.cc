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

#include "etchog/exact_sum.h"

#include <limits>

namespace etchog {
namespace {

constexpr std::int64_t kBase = std::int64_t{1} << 32;

// Carries every limb into [0, 2^32) except the last, which keeps the sign.
template <std::size_t N>
void Carry(std::array<std::int64_t, N>& limbs) {
  for (std::size_t i = 0; i + 1 < N; ++i) {
    const std::int64_t carry = limbs[i] >> 32;  // floor division
    limbs[i] -= carry * kBase;
    limbs[i + 1] += carry;
  }
}

}  // namespace

void ExactAccumulator::Normalize() {
  Carry(limbs_);
  adds_ = 0;
}

double ExactAccumulator::Round() const {
  if (has_special_) return special_;
  auto limbs = limbs_;
  Carry(limbs);
  bool negative = false;
  if (limbs[kLimbs - 1] < 0) {
    negative = true;
    for (auto& l : limbs) l = -l;
    Carry(limbs);
  }

  std::size_t top = kLimbs;
  while (top > 0 && limbs[top - 1] == 0) --top;
  if (top == 0) return 0.0;
  const std::size_t h = top - 1;
  auto digit = [&](std::ptrdiff_t i) -> Uint128 {
    return i < 0 ? 0 : static_cast<Uint128>(limbs[static_cast<std::size_t>(i)]);
  };
  const auto hi = static_cast<std::ptrdiff_t>(h);
  // Most significant set bit, counted from 2^-1074.
  const int msb = static_cast<int>(h) * 32 +
                  (63 - std::countl_zero(static_cast<std::uint64_t>(limbs[h])));

  double magnitude;
  if (msb <= 52) {
    // Below 2^53 quanta of 2^-1074 every value is representable.
    const auto v = static_cast<std::uint64_t>((digit(1) << 32) | digit(0));
    magnitude = std::ldexp(static_cast<double>(v), -1074);
  } else {
    const Uint128 window =
        (digit(hi) << 64) | (digit(hi - 1) << 32) | digit(hi - 2);
    const int base = (static_cast<int>(h) - 2) * 32;  // bit position of window lsb
    const int shift = msb - base - 52;                // >= 12
    std::uint64_t mantissa = static_cast<std::uint64_t>(window >> shift);
    const Uint128 rest = window & ((static_cast<Uint128>(1) << shift) - 1);
    const bool guard = ((rest >> (shift - 1)) & 1) != 0;
    bool sticky = (rest & ((static_cast<Uint128>(1) << (shift - 1)) - 1)) != 0;
    for (std::ptrdiff_t i = 0; !sticky && i < hi - 2; ++i) sticky = limbs[static_cast<std::size_t>(i)] != 0;
    int exponent = base + shift - 1074;
    if (guard && (sticky || (mantissa & 1))) {
      ++mantissa;
      if (mantissa == (std::uint64_t{1} << 53)) {
        mantissa >>= 1;
        ++exponent;
      }
    }
    magnitude = std::ldexp(static_cast<double>(mantissa), exponent);
  }
  return negative ? -magnitude : magnitude;
}

}  // namespace etchog
