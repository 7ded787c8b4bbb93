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


#include <benchmark/benchmark.h>

#include <random>

#include "etchog/cipher.h"

namespace {

etchog::GrayImage Noise(int w, int h) {
  std::mt19937_64 rng(1);
  std::vector<std::uint8_t> px(static_cast<std::size_t>(w) * h);
  for (auto& p : px) p = static_cast<std::uint8_t>(rng());
  return etchog::GrayImage(w, h, std::move(px));
}

void BM_DerivePlan(benchmark::State& state) {
  const etchog::KeySet keys{11, 22, 33};
  for (auto _ : state) {
    benchmark::DoNotOptimize(etchog::DerivePlan(keys, state.range(0)));
  }
}
BENCHMARK(BM_DerivePlan)->Arg(64)->Arg(504);

void BM_Encrypt(benchmark::State& state) {
  const int e = static_cast<int>(state.range(0));
  const etchog::GrayImage img = Noise(168, 192);
  const auto plan = etchog::DerivePlan({11, 22, 33}, etchog::BlockCount(168, 192, e));
  for (auto _ : state) {
    benchmark::DoNotOptimize(etchog::Encrypt(img, plan, e));
  }
  state.SetBytesProcessed(state.iterations() * 168 * 192);
}
BENCHMARK(BM_Encrypt)->Arg(8)->Arg(24);

}  // namespace
