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

// End-to-end classification experiment: optional encryption, grid-wise HOG
// features, one-vs-rest SVMs and EER, over a sweep of HOG block settings.

#ifndef ETCHOG_EXPERIMENT_H_
#define ETCHOG_EXPERIMENT_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "etchog/cipher.h"
#include "etchog/config.h"
#include "etchog/dataset.h"
#include "etchog/hog.h"
#include "etchog/svm.h"

namespace etchog {

struct SweepCell {
  int block = 1;
  int overlap = 0;
  bool operator==(const SweepCell&) const = default;
};

/// Parses "1:0,2:0,2:1". An empty string is an empty sweep.
std::vector<SweepCell> ParseSweep(const std::string& text);

struct ExperimentConfig {
  std::string dataset_dir;  // empty: $ETCHOG_DATASET, then the fixture
  int block_side = 8;       // cipher block E
  HogParams hog;            // block/overlap are taken from each sweep cell
  std::vector<KernelKind> kernels = {KernelKind::kLinear,
                                     KernelKind::kGaussian};
  double gamma = 0.0;  // <= 0: 1 / feature length
  TrainConfig svm;
  KeySet keys{0x243F6A8885A308D3ULL, 0x13198A2E03707344ULL,
              0xA4093822299F31D0ULL};
  PlanOptions plan;
  std::uint64_t split_seed = 1;
  int train_per_class = 0;  // <= 0: half of the smallest class
  std::vector<SweepCell> sweep = {{1, 0}};
  std::vector<bool> arms = {false, true};  // encrypted?
  bool verify = true;  // check equivalence on every image when it applies
  std::string features_dir;  // write feature files here when non-empty
  bool verbose = false;

  /// Throws InvalidArgument on an infeasible sweep cell or parameter.
  void Validate() const;
};

/// Builds a config from "key = value" entries; unknown keys are rejected.
/// Keys: dataset e eprime nc n nb no eps grid k1 k2 k3 seed svm_seed c gamma
/// kernel max_passes kkt_tol sweep train_per_class arms half_turns verify
/// features_dir verbose.
ExperimentConfig ExperimentConfigFromMap(const ConfigMap& map);

/// Loads cfg.dataset_dir, else $ETCHOG_DATASET, else the default fixture.
Dataset ResolveDataset(const ExperimentConfig& cfg);

bool EquivalenceConditionsHold(const HogParams& params, int block_side);

struct CellResult {
  SweepCell cell;
  KernelSpec kernel;
  bool encrypted = false;
  bool equivalent = false;  // equivalence conditions hold for this cell
  double eer = 0.0;
  std::string error;        // non-empty if the cell aborted
  std::vector<std::vector<double>> scores;  // [test query][class]
  double max_kkt_residual = 0.0;
  bool converged = true;
};

struct ExperimentResult {
  std::vector<CellResult> rows;
  std::vector<std::size_t> test_items;  // dataset indices of the queries
  std::vector<std::string> verdicts;    // "<item> EQUIV ..." lines
  std::size_t verify_failures = 0;
  double worst_verify_error = 0.0;
};

ExperimentResult RunExperiment(const ExperimentConfig& cfg,
                               const Dataset& dataset);

/// "condition,NB,NO,kernel,encrypted,eer" plus one row per result row.
std::string ResultsCsv(const ExperimentResult& result);

/// Feature extraction for a whole dataset, optionally encrypted first.
std::vector<Sample> ExtractAll(const Dataset& dataset, const HogParams& params,
                               const CipherPlan* plan, int block_side);

}  // namespace etchog

#endif  // ETCHOG_EXPERIMENT_H_
