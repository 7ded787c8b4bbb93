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

#ifndef ETCHOG_PRNG_H_
#define ETCHOG_PRNG_H_

#include <cstdint>
#include <span>
#include <utility>

namespace etchog {

/// SplitMix64 generator. The output stream is part of the on-disk contract
/// (cipher plans and dataset splits are reproduced from keys and seeds), so
/// the constants below must never change.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t Next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [0, bound) by rejection of the top partial range.
  /// `bound` must be non-zero.
  std::uint64_t Below(std::uint64_t bound);

  // UniformRandomBitGenerator surface, for use with <random> in tests.
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()() { return Next(); }

 private:
  std::uint64_t state_;
};

/// In-place Fisher-Yates shuffle, descending: for i = n-1 .. 1 swap
/// element i with element Below(i + 1).
template <typename T>
void FisherYatesShuffle(std::span<T> items, SplitMix64& rng) {
  for (std::size_t i = items.size(); i-- > 1;) {
    const auto j = static_cast<std::size_t>(rng.Below(i + 1));
    std::swap(items[i], items[j]);
  }
}

}  // namespace etchog

#endif  // ETCHOG_PRNG_H_
