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

#ifndef ETCHOG_TESTS_TEST_UTIL_H_
#define ETCHOG_TESTS_TEST_UTIL_H_

#include <cstdint>
#include <random>
#include <vector>

#include "etchog/cipher.h"
#include "etchog/image.h"

namespace etchog::testing {

inline GrayImage RandomImage(int width, int height, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pixel(0, 255);
  std::vector<std::uint8_t> data(static_cast<std::size_t>(width) * height);
  for (auto& p : data) p = static_cast<std::uint8_t>(pixel(rng));
  return GrayImage(width, height, std::move(data));
}

inline Block RandomBlock(int side, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pixel(0, 255);
  Block b;
  b.side = side;
  b.data.resize(static_cast<std::size_t>(side) * side);
  for (auto& p : b.data) p = static_cast<std::uint8_t>(pixel(rng));
  return b;
}

inline KeySet RandomKeys(std::mt19937_64& rng) {
  return {rng(), rng(), rng()};
}

}  // namespace etchog::testing

#endif  // ETCHOG_TESTS_TEST_UTIL_H_
