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

// Verification-style scoring: threshold sweeps over genuine and impostor
// scores and the equal error rate.

#ifndef ETCHOG_EVAL_H_
#define ETCHOG_EVAL_H_

#include <cstdint>
#include <span>
#include <vector>

namespace etchog {

struct ScoreSet {
  std::vector<double> genuine;
  std::vector<double> impostor;
};

struct OperatingPoint {
  double threshold = 0.0;
  double far = 0.0;  // fraction of impostor scores >= threshold
  double frr = 0.0;  // fraction of genuine scores < threshold
};

/// One point per distinct score plus -inf / +inf sentinels, thresholds
/// ascending. Throws InvalidArgument on an empty side or NaN score.
std::vector<OperatingPoint> FarFrrCurve(const ScoreSet& scores);

/// FAR = FRR crossing of a curve, linearly interpolated between the two
/// sweep points that bracket it.
double Eer(std::span<const OperatingPoint> curve);
double Eer(const ScoreSet& scores);

/// For each query the score of its true class model is genuine and every
/// other class score is an impostor. `scores[q][c]` is the score of class
/// index c on query q; `truth[q]` is the true class index.
ScoreSet BuildScoreSet(std::span<const std::vector<double>> scores,
                       std::span<const int> truth);

struct DatasetSplit {
  std::vector<std::size_t> train;  // ascending item indices
  std::vector<std::size_t> test;
};

/// Per class (ascending label order, one SplitMix64 stream seeded with
/// `seed`) the class's items are Fisher-Yates shuffled and the first
/// `per_class_train` go to train. Every class needs more items than that.
DatasetSplit SplitDataset(std::span<const int> labels, std::uint64_t seed,
                          int per_class_train);

}  // namespace etchog

#endif  // ETCHOG_EVAL_H_
