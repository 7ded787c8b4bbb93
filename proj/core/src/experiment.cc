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

#include "etchog/experiment.h"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>

#include "etchog/equivalence.h"
#include "etchog/errors.h"
#include "etchog/eval.h"
#include "etchog/feature_io.h"

namespace etchog {
namespace {

std::vector<std::string> SplitList(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<Sample> Select(const std::vector<Sample>& all,
                           const std::vector<std::size_t>& idx) {
  std::vector<Sample> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(all[i]);
  return out;
}

std::string CellName(const SweepCell& c, bool encrypted) {
  return "NB=" + std::to_string(c.block) + " NO=" + std::to_string(c.overlap) +
         (encrypted ? " encrypted" : " plain");
}

}  // namespace

std::vector<SweepCell> ParseSweep(const std::string& text) {
  std::vector<SweepCell> cells;
  for (const std::string& item : SplitList(text)) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      throw InvalidArgument("sweep cell '" + item + "' is not NB:NO");
    }
    cells.push_back({ParseInt(item.substr(0, colon)),
                     ParseInt(item.substr(colon + 1))});
  }
  return cells;
}

void ExperimentConfig::Validate() const {
  if (block_side < 1) throw InvalidArgument("block side must be >= 1");
  HogParams probe = hog;
  probe.block = 1;
  probe.overlap = 0;
  probe.Validate();
  for (const SweepCell& c : sweep) {
    if (c.block < 1 || c.overlap < 0 || c.overlap >= c.block) {
      throw InvalidArgument("sweep cell NB=" + std::to_string(c.block) +
                            " NO=" + std::to_string(c.overlap) +
                            " needs 0 <= NO < NB");
    }
  }
  if (kernels.empty()) throw InvalidArgument("no kernels configured");
  if (arms.empty()) throw InvalidArgument("no arms configured");
  svm.Validate();
}

ExperimentConfig ExperimentConfigFromMap(const ConfigMap& map) {
  ExperimentConfig cfg;
  bool sweep_given = false;
  int nb = 1, no = 0;
  for (const auto& [key, value] : map) {
    if (key == "dataset") cfg.dataset_dir = value;
    else if (key == "e") cfg.block_side = ParseInt(value);
    else if (key == "eprime") cfg.hog.grid = ParseInt(value);
    else if (key == "nc") cfg.hog.cell = ParseInt(value);
    else if (key == "n") cfg.hog.bins = ParseInt(value);
    else if (key == "nb") nb = ParseInt(value);
    else if (key == "no") no = ParseInt(value);
    else if (key == "eps") cfg.hog.epsilon = ParseDouble(value);
    else if (key == "grid") {
      if (value == "per-grid") cfg.hog.grid_mode = GridMode::kPerGrid;
      else if (value == "whole") cfg.hog.grid_mode = GridMode::kWholeImage;
      else throw InvalidArgument("grid must be 'per-grid' or 'whole'");
    }
    else if (key == "k1") cfg.keys.k1 = ParseU64(value);
    else if (key == "k2") cfg.keys.k2 = ParseU64(value);
    else if (key == "k3") cfg.keys.k3 = ParseU64(value);
    else if (key == "seed") cfg.split_seed = ParseU64(value);
    else if (key == "svm_seed") cfg.svm.seed = ParseU64(value);
    else if (key == "c") cfg.svm.c = ParseDouble(value);
    else if (key == "gamma") cfg.gamma = ParseDouble(value);
    else if (key == "kernel") {
      cfg.kernels.clear();
      for (const auto& k : SplitList(value)) cfg.kernels.push_back(ParseKernelKind(k));
    }
    else if (key == "max_passes") cfg.svm.max_passes = ParseInt(value);
    else if (key == "kkt_tol") cfg.svm.kkt_tol = ParseDouble(value);
    else if (key == "sweep") {
      cfg.sweep = ParseSweep(value);
      sweep_given = true;
    }
    else if (key == "train_per_class") cfg.train_per_class = ParseInt(value);
    else if (key == "arms") {
      cfg.arms.clear();
      for (const auto& a : SplitList(value)) {
        if (a == "plain") cfg.arms.push_back(false);
        else if (a == "encrypted") cfg.arms.push_back(true);
        else throw InvalidArgument("arm must be 'plain' or 'encrypted'");
      }
    }
    else if (key == "half_turns") cfg.plan.half_turns_only = ParseBool(value);
    else if (key == "verify") cfg.verify = ParseBool(value);
    else if (key == "features_dir") cfg.features_dir = value;
    else if (key == "verbose") cfg.verbose = ParseBool(value);
    else if (key == "out" || key == "verdicts") continue;  // output paths, CLI-level
    else throw InvalidArgument("unknown config key '" + key + "'");
  }
  if (!sweep_given) cfg.sweep = {{nb, no}};
  return cfg;
}

Dataset ResolveDataset(const ExperimentConfig& cfg) {
  std::string dir = cfg.dataset_dir;
  if (dir.empty()) {
    if (const char* env = std::getenv("ETCHOG_DATASET")) dir = env;
  }
  if (dir.empty()) return MakeFixture();
  return IngestDataset(dir);
}

bool EquivalenceConditionsHold(const HogParams& params, int block_side) {
  try {
    CheckEquivalenceConditions(params, block_side);
    return true;
  } catch (const PreconditionError&) {
    return false;
  }
}

std::vector<Sample> ExtractAll(const Dataset& dataset, const HogParams& params,
                               const CipherPlan* plan, int block_side) {
  std::vector<Sample> out;
  out.reserve(dataset.size());
  for (const GrayImage& image : dataset.images) {
    if (plan != nullptr) {
      out.push_back(Extract(Encrypt(image, *plan, block_side), params).values);
    } else {
      out.push_back(Extract(image, params).values);
    }
  }
  return out;
}

ExperimentResult RunExperiment(const ExperimentConfig& cfg,
                               const Dataset& dataset) {
  cfg.Validate();
  if (dataset.size() == 0) throw InvalidArgument("empty dataset");
  auto log = [&](const std::string& msg) {
    if (cfg.verbose) std::clog << "[etchog] " << msg << '\n';
  };

  int per_class = cfg.train_per_class;
  if (per_class <= 0) {
    std::map<int, int> counts;
    for (int l : dataset.labels) ++counts[l];
    int smallest = std::numeric_limits<int>::max();
    for (const auto& kv : counts) smallest = std::min(smallest, kv.second);
    per_class = std::max(1, smallest / 2);
  }
  const DatasetSplit split =
      SplitDataset(dataset.labels, cfg.split_seed, per_class);
  ExperimentResult result;
  result.test_items = split.test;

  std::vector<int> train_labels;
  for (std::size_t i : split.train) train_labels.push_back(dataset.labels[i]);

  std::string plan_error;
  CipherPlan plan;
  if (std::find(cfg.arms.begin(), cfg.arms.end(), true) != cfg.arms.end()) {
    try {
      plan = DerivePlan(cfg.keys,
                        BlockCount(dataset.width(), dataset.height(),
                                   cfg.block_side),
                        cfg.plan);
    } catch (const Error& e) {
      plan_error = e.what();
    }
  }

  for (const SweepCell& cell : cfg.sweep) {
    HogParams params = cfg.hog;
    params.block = cell.block;
    params.overlap = cell.overlap;
    const bool equivalent = EquivalenceConditionsHold(params, cfg.block_side);

    // rows[kernel][arm]
    std::vector<std::vector<CellResult>> rows(
        cfg.kernels.size(), std::vector<CellResult>(cfg.arms.size()));
    for (std::size_t k = 0; k < cfg.kernels.size(); ++k) {
      for (std::size_t a = 0; a < cfg.arms.size(); ++a) {
        CellResult& r = rows[k][a];
        r.cell = cell;
        r.kernel.kind = cfg.kernels[k];
        r.encrypted = cfg.arms[a];
        r.equivalent = equivalent;
      }
    }
    auto fail_arm = [&](std::size_t a, const std::string& why) {
      std::cerr << "[etchog] " << CellName(cell, cfg.arms[a])
                << " aborted: " << why << '\n';
      for (auto& per_kernel : rows) {
        per_kernel[a].error = why;
        per_kernel[a].eer = std::numeric_limits<double>::quiet_NaN();
      }
    };

    bool cell_ok = true;
    try {
      params.ValidateFor(dataset.width(), dataset.height());
    } catch (const Error& e) {
      for (std::size_t a = 0; a < cfg.arms.size(); ++a) fail_arm(a, e.what());
      cell_ok = false;
    }

    if (cell_ok && equivalent && cfg.verify && plan_error.empty() &&
        std::find(cfg.arms.begin(), cfg.arms.end(), true) != cfg.arms.end()) {
      for (std::size_t i = 0; i < dataset.size(); ++i) {
        std::string line = dataset.item_names[i] + " ";
        try {
          const EquivalenceReport rep = VerifyEquivalence(
              dataset.images[i], cfg.keys, params, 1e-9, cfg.plan);
          line += FormatVerdict(rep);
          if (!rep.pass) ++result.verify_failures;
          result.worst_verify_error =
              std::max(result.worst_verify_error, rep.max_rel_error);
        } catch (const Error& e) {
          line += std::string("EQUIV error ") + e.what();
          ++result.verify_failures;
        }
        result.verdicts.push_back(std::move(line));
      }
      log(CellName(cell, true) + ": verified " + std::to_string(dataset.size()) +
          " images, " + std::to_string(result.verify_failures) + " failures");
    }

    for (std::size_t a = 0; cell_ok && a < cfg.arms.size(); ++a) {
      const bool encrypted = cfg.arms[a];
      if (encrypted && !plan_error.empty()) {
        fail_arm(a, plan_error);
        continue;
      }
      std::vector<Sample> features;
      try {
        features = ExtractAll(dataset, params, encrypted ? &plan : nullptr,
                              cfg.block_side);
      } catch (const Error& e) {
        fail_arm(a, e.what());
        continue;
      }
      log(CellName(cell, encrypted) + ": extracted " +
          std::to_string(features.size()) + " feature vectors of length " +
          std::to_string(features.front().size()));

      if (!cfg.features_dir.empty()) {
        std::filesystem::create_directories(cfg.features_dir);
        const auto path = std::filesystem::path(cfg.features_dir) /
                          ("features_NB" + std::to_string(cell.block) + "_NO" +
                           std::to_string(cell.overlap) +
                           (encrypted ? "_encrypted.txt" : "_plain.txt"));
        std::ofstream out(path);
        std::vector<FeatureVector> rows_out;
        rows_out.reserve(features.size());
        for (const auto& f : features) rows_out.push_back({f, {}});
        WriteFeatureFile(out, rows_out, params);
      }

      const auto train = Select(features, split.train);
      const auto test = Select(features, split.test);
      for (std::size_t k = 0; k < cfg.kernels.size(); ++k) {
        CellResult& r = rows[k][a];
        try {
          r.kernel = cfg.kernels[k] == KernelKind::kLinear
                         ? KernelSpec::Linear()
                         : KernelSpec::Gaussian(
                               cfg.gamma > 0 ? cfg.gamma
                                             : 1.0 / static_cast<double>(
                                                         features.front().size()));
          const MultiModel model =
              TrainOneVsRest(train, train_labels, cfg.svm, r.kernel);
          for (std::size_t c = 0; c < model.num_classes(); ++c) {
            r.max_kkt_residual =
                std::max(r.max_kkt_residual, model.max_kkt_residuals[c]);
            r.converged = r.converged && model.converged[c];
          }
          std::vector<int> truth;
          for (std::size_t q = 0; q < test.size(); ++q) {
            r.scores.push_back(Scores(model, test[q]));
            const int label = dataset.labels[split.test[q]];
            truth.push_back(static_cast<int>(
                std::find(model.classes.begin(), model.classes.end(), label) -
                model.classes.begin()));
          }
          r.eer = Eer(BuildScoreSet(r.scores, truth));
          log(CellName(cell, encrypted) + " " + KernelName(r.kernel.kind) +
              ": EER " + std::to_string(r.eer));
        } catch (const Error& e) {
          std::cerr << "[etchog] " << CellName(cell, encrypted) << " "
                    << KernelName(cfg.kernels[k]) << " aborted: " << e.what()
                    << '\n';
          r.error = e.what();
          r.eer = std::numeric_limits<double>::quiet_NaN();
        }
      }
    }
    for (auto& per_kernel : rows) {
      for (auto& r : per_kernel) result.rows.push_back(std::move(r));
    }
  }
  return result;
}

std::string ResultsCsv(const ExperimentResult& result) {
  std::string csv = "condition,NB,NO,kernel,encrypted,eer\n";
  for (const CellResult& r : result.rows) {
    char eer[40];
    if (r.error.empty()) {
      std::snprintf(eer, sizeof eer, "%.17g", r.eer);
    } else {
      std::snprintf(eer, sizeof eer, "nan");
    }
    csv += std::string(r.equivalent ? "equivalent" : "general") + "," +
           std::to_string(r.cell.block) + "," + std::to_string(r.cell.overlap) +
           "," + KernelName(r.kernel.kind) + "," +
           (r.encrypted ? "true" : "false") + "," + eer + "\n";
  }
  return csv;
}

}  // namespace etchog
