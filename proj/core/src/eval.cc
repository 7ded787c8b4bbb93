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

#include "etchog/eval.h"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <map>
#include <string>

#include "etchog/errors.h"
#include "etchog/prng.h"

namespace etchog {

std::vector<OperatingPoint> FarFrrCurve(const ScoreSet& scores) {
  if (scores.genuine.empty() || scores.impostor.empty()) {
    throw InvalidArgument("FAR/FRR sweep needs genuine and impostor scores");
  }
  auto genuine = scores.genuine;
  auto impostor = scores.impostor;
  for (double v : genuine) {
    if (std::isnan(v)) throw InvalidArgument("NaN genuine score");
  }
  for (double v : impostor) {
    if (std::isnan(v)) throw InvalidArgument("NaN impostor score");
  }
  std::sort(genuine.begin(), genuine.end());
  std::sort(impostor.begin(), impostor.end());

  std::vector<double> thresholds;
  thresholds.reserve(genuine.size() + impostor.size() + 2);
  thresholds.push_back(-std::numeric_limits<double>::infinity());
  std::merge(genuine.begin(), genuine.end(), impostor.begin(), impostor.end(),
             std::back_inserter(thresholds));
  thresholds.push_back(std::numeric_limits<double>::infinity());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()),
                   thresholds.end());

  const auto ng = static_cast<double>(genuine.size());
  const auto ni = static_cast<double>(impostor.size());
  std::vector<OperatingPoint> curve;
  curve.reserve(thresholds.size());
  for (double t : thresholds) {
    const auto rejected_genuine =
        std::lower_bound(genuine.begin(), genuine.end(), t) - genuine.begin();
    const auto rejected_impostor =
        std::lower_bound(impostor.begin(), impostor.end(), t) - impostor.begin();
    curve.push_back({t, (ni - static_cast<double>(rejected_impostor)) / ni,
                     static_cast<double>(rejected_genuine) / ng});
  }
  return curve;
}

double Eer(std::span<const OperatingPoint> curve) {
  if (curve.empty()) throw InvalidArgument("empty FAR/FRR curve");
  const auto gap = [](const OperatingPoint& p) { return p.far - p.frr; };
  if (gap(curve.front()) <= 0) {
    return (curve.front().far + curve.front().frr) / 2.0;
  }
  for (std::size_t i = 1; i < curve.size(); ++i) {
    const double d = gap(curve[i]);
    if (d == 0) return curve[i].far;
    if (d < 0) {
      const OperatingPoint& a = curve[i - 1];
      const OperatingPoint& b = curve[i];
      const double lambda = gap(a) / (gap(a) - d);
      return a.far + lambda * (b.far - a.far);
    }
  }
  return (curve.back().far + curve.back().frr) / 2.0;
}

double Eer(const ScoreSet& scores) { return Eer(FarFrrCurve(scores)); }

ScoreSet BuildScoreSet(std::span<const std::vector<double>> scores,
                       std::span<const int> truth) {
  if (scores.size() != truth.size()) {
    throw InvalidArgument("score rows and truth labels disagree in size");
  }
  ScoreSet set;
  for (std::size_t q = 0; q < scores.size(); ++q) {
    const auto& row = scores[q];
    if (truth[q] < 0 || static_cast<std::size_t>(truth[q]) >= row.size()) {
      throw InvalidArgument("true class index out of range");
    }
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (static_cast<int>(c) == truth[q]) {
        set.genuine.push_back(row[c]);
      } else {
        set.impostor.push_back(row[c]);
      }
    }
  }
  return set;
}

DatasetSplit SplitDataset(std::span<const int> labels, std::uint64_t seed,
                          int per_class_train) {
  if (per_class_train < 0) throw InvalidArgument("negative train count");
  std::map<int, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < labels.size(); ++i) by_class[labels[i]].push_back(i);

  SplitMix64 rng(seed);
  DatasetSplit split;
  for (auto& [label, items] : by_class) {
    if (items.size() < static_cast<std::size_t>(per_class_train) + 1) {
      throw InvalidArgument("class " + std::to_string(label) + " has " +
                            std::to_string(items.size()) +
                            " items, needs at least " +
                            std::to_string(per_class_train + 1));
    }
    FisherYatesShuffle(std::span<std::size_t>(items), rng);
    const auto cut = items.begin() + per_class_train;
    split.train.insert(split.train.end(), items.begin(), cut);
    split.test.insert(split.test.end(), cut, items.end());
  }
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

}  // namespace etchog
