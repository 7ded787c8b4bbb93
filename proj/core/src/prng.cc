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

#include "etchog/prng.h"

namespace etchog {

std::uint64_t SplitMix64::Below(std::uint64_t bound) {
  // 2^64 mod bound, computed without 128-bit arithmetic.
  const std::uint64_t rem = (0 - bound) % bound;
  if (rem == 0) return Next() % bound;
  const std::uint64_t limit = 0 - rem;  // 2^64 - rem
  std::uint64_t v;
  do {
    v = Next();
  } while (v >= limit);
  return v % bound;
}

}  // namespace etchog
