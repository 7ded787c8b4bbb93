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

// etchog: command-line front end.
//
//   etchog encrypt    --in a.pgm --out b.pgm [--e 8 --k1 .. --k2 .. --k3 ..]
//   etchog decrypt    --in b.pgm --out a.pgm [same keys]
//   etchog hog        --in a.pgm [--in b.pgm ...] --out features.txt [--encrypt]
//   etchog verify     --in a.pgm ... | --dataset DIR  [--tol 1e-9]
//   etchog train      [--dataset DIR] [--encrypt] --model m.txt
//   etchog eval       [--dataset DIR] [--encrypt] --model m.txt [--curve c.csv]
//   etchog experiment [--config FILE] [--out results.csv] [--verdicts v.txt]
//   etchog fixture    --out DIR [--classes 4 --per-class 16 --size 64]
//
// Every subcommand accepts --config FILE (flat "key = value"); flags given
// on the command line override the file. Exit status: 0 success, 2 an
// equivalence check failed, 1 any other error.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "etchog/cipher.h"
#include "etchog/config.h"
#include "etchog/dataset.h"
#include "etchog/equivalence.h"
#include "etchog/errors.h"
#include "etchog/eval.h"
#include "etchog/experiment.h"
#include "etchog/feature_io.h"
#include "etchog/hog.h"
#include "etchog/pgm.h"
#include "etchog/svm.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitVerifyFailed = 2;

using etchog::ConfigMap;

// Flags that map one-to-one onto config keys.
struct ConfigFlag {
  const char* flag;
  const char* key;
  const char* help;
};

constexpr ConfigFlag kConfigFlags[] = {
    {"--dataset", "dataset", "Dataset directory (<class>/<image>.pgm)"},
    {"--e", "e", "Cipher block side E"},
    {"--eprime", "eprime", "Differential grid side"},
    {"--nc", "nc", "HOG cell side"},
    {"--n", "n", "Direction bins"},
    {"--nb", "nb", "HOG block side, cells"},
    {"--no", "no", "HOG block overlap, cells"},
    {"--eps", "eps", "Block normalization epsilon"},
    {"--k1", "k1", "Permutation key"},
    {"--k2", "k2", "Rotation/inversion key"},
    {"--k3", "k3", "Negative-positive key"},
    {"--seed", "seed", "Train/test split seed"},
    {"--c", "c", "SVM box constraint C"},
    {"--gamma", "gamma", "Gaussian kernel gamma (default 1/feature length)"},
    {"--kernel", "kernel", "linear | gaussian (comma list for experiment)"},
    {"--sweep", "sweep", "NB:NO list, e.g. 1:0,2:0,2:1"},
    {"--train-per-class", "train_per_class", "Training images per class"},
    {"--arms", "arms", "plain,encrypted"},
    {"--features-dir", "features_dir", "Write feature files here"},
};

struct CommonOptions {
  std::string config_path;
  std::map<std::string, std::string> flags;  // key -> value as typed
  bool half_turns = false;
  bool verbose = false;
};

void AddCommonOptions(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--config", o.config_path, "Flat key = value config file")
      ->check(CLI::ExistingFile);
  for (const ConfigFlag& f : kConfigFlags) {
    cmd->add_option_function<std::string>(
        f.flag, [&o, key = std::string(f.key)](const std::string& v) { o.flags[key] = v; },
        f.help);
  }
  cmd->add_flag("--half-turns", o.half_turns,
                "Restrict block rotations to 0/180 degrees (odd bin counts)");
  cmd->add_flag("-v,--verbose", o.verbose, "Progress on stderr");
}

ConfigMap MergedConfig(const CommonOptions& o) {
  ConfigMap map;
  if (!o.config_path.empty()) map = etchog::ReadConfigFile(o.config_path);
  for (const auto& [k, v] : o.flags) map[k] = v;
  if (o.half_turns) map["half_turns"] = "true";
  if (o.verbose) map["verbose"] = "true";
  return map;
}

std::string Lookup(const ConfigMap& map, const std::string& key) {
  auto it = map.find(key);
  return it == map.end() ? std::string() : it->second;
}

etchog::HogParams CellParams(const etchog::ExperimentConfig& cfg) {
  etchog::HogParams params = cfg.hog;
  params.block = cfg.sweep.empty() ? 1 : cfg.sweep.front().block;
  params.overlap = cfg.sweep.empty() ? 0 : cfg.sweep.front().overlap;
  return params;
}

etchog::KernelSpec ResolveKernel(const etchog::ExperimentConfig& cfg,
                                 std::size_t feature_length) {
  if (cfg.kernels.front() == etchog::KernelKind::kLinear) {
    return etchog::KernelSpec::Linear();
  }
  return etchog::KernelSpec::Gaussian(
      cfg.gamma > 0 ? cfg.gamma : 1.0 / static_cast<double>(feature_length));
}

void OpenOrThrow(std::ofstream& out, const std::string& path) {
  out.open(path);
  if (!out) throw etchog::InvalidArgument("cannot write " + path);
}

// --- encrypt / decrypt ------------------------------------------------------

int RunCipher(const CommonOptions& common, const std::string& in,
              const std::string& out, bool decrypt) {
  const auto cfg = etchog::ExperimentConfigFromMap(MergedConfig(common));
  const etchog::GrayImage image = etchog::ReadPgmFile(in);
  const etchog::GrayImage result =
      decrypt ? etchog::Decrypt(image, cfg.keys, cfg.block_side, cfg.plan)
              : etchog::Encrypt(image, cfg.keys, cfg.block_side, cfg.plan);
  etchog::WritePgmFile(out, result);
  return kExitOk;
}

// --- hog --------------------------------------------------------------------

int RunHog(const CommonOptions& common, const std::vector<std::string>& inputs,
           const std::string& out, bool encrypt) {
  const auto cfg = etchog::ExperimentConfigFromMap(MergedConfig(common));
  const etchog::HogParams params = CellParams(cfg);
  std::vector<etchog::FeatureVector> rows;
  for (const std::string& path : inputs) {
    etchog::GrayImage image = etchog::ReadPgmFile(path);
    if (encrypt) image = etchog::Encrypt(image, cfg.keys, cfg.block_side, cfg.plan);
    rows.push_back(etchog::Extract(image, params));
  }
  if (out.empty() || out == "-") {
    etchog::WriteFeatureFile(std::cout, rows, params);
  } else {
    std::ofstream file;
    OpenOrThrow(file, out);
    etchog::WriteFeatureFile(file, rows, params);
  }
  return kExitOk;
}

// --- verify -----------------------------------------------------------------

int RunVerify(const CommonOptions& common, const std::vector<std::string>& inputs,
              double tol, const std::string& verdicts_path) {
  const ConfigMap map = MergedConfig(common);
  const auto cfg = etchog::ExperimentConfigFromMap(map);
  etchog::HogParams params = CellParams(cfg);

  std::vector<std::pair<std::string, etchog::GrayImage>> images;
  if (!inputs.empty()) {
    for (const auto& p : inputs) images.emplace_back(p, etchog::ReadPgmFile(p));
  } else {
    etchog::Dataset d = etchog::ResolveDataset(cfg);
    for (std::size_t i = 0; i < d.size(); ++i) {
      images.emplace_back(d.item_names[i], std::move(d.images[i]));
    }
  }

  std::ofstream file;
  if (!verdicts_path.empty()) OpenOrThrow(file, verdicts_path);
  std::ostream& out = verdicts_path.empty() ? std::cout : file;
  std::size_t failures = 0;
  for (const auto& [name, image] : images) {
    const auto report =
        etchog::VerifyEquivalence(image, cfg.keys, params, tol, cfg.plan);
    if (!report.pass) ++failures;
    out << name << ' ' << etchog::FormatVerdict(report) << '\n';
  }
  if (failures > 0) {
    std::cerr << "etchog: " << failures << " of " << images.size()
              << " images failed the equivalence check\n";
    return kExitVerifyFailed;
  }
  return kExitOk;
}

// --- train / eval -----------------------------------------------------------

struct SplitFeatures {
  std::vector<etchog::Sample> train, test;
  std::vector<int> train_labels, test_labels;
};

SplitFeatures PrepareSplit(const etchog::ExperimentConfig& cfg, bool encrypt) {
  const etchog::Dataset d = etchog::ResolveDataset(cfg);
  const etchog::HogParams params = CellParams(cfg);
  std::optional<etchog::CipherPlan> plan;
  if (encrypt) {
    plan = etchog::DerivePlan(
        cfg.keys, etchog::BlockCount(d.width(), d.height(), cfg.block_side), cfg.plan);
  }
  const auto features =
      etchog::ExtractAll(d, params, plan ? &*plan : nullptr, cfg.block_side);

  int per_class = cfg.train_per_class;
  if (per_class <= 0) {
    std::map<int, int> counts;
    for (int l : d.labels) ++counts[l];
    int smallest = counts.begin()->second;
    for (const auto& kv : counts) smallest = std::min(smallest, kv.second);
    per_class = std::max(1, smallest / 2);
  }
  const auto split = etchog::SplitDataset(d.labels, cfg.split_seed, per_class);
  SplitFeatures s;
  for (auto i : split.train) {
    s.train.push_back(features[i]);
    s.train_labels.push_back(d.labels[i]);
  }
  for (auto i : split.test) {
    s.test.push_back(features[i]);
    s.test_labels.push_back(d.labels[i]);
  }
  return s;
}

int RunTrain(const CommonOptions& common, bool encrypt, const std::string& model_path) {
  const auto cfg = etchog::ExperimentConfigFromMap(MergedConfig(common));
  const SplitFeatures s = PrepareSplit(cfg, encrypt);
  const auto kernel = ResolveKernel(cfg, s.train.front().size());
  const auto model = etchog::TrainOneVsRest(s.train, s.train_labels, cfg.svm, kernel);
  std::ofstream file;
  OpenOrThrow(file, model_path);
  etchog::WriteModel(file, model);
  std::cerr << "etchog: trained " << model.num_classes() << " class models, "
            << model.vectors.size() << " support vectors\n";
  return kExitOk;
}

int RunEval(const CommonOptions& common, bool encrypt, const std::string& model_path,
            const std::string& curve_path) {
  const auto cfg = etchog::ExperimentConfigFromMap(MergedConfig(common));
  std::ifstream in(model_path);
  if (!in) throw etchog::InvalidArgument("cannot open model " + model_path);
  const auto model = etchog::ReadModel(in);
  const SplitFeatures s = PrepareSplit(cfg, encrypt);

  std::vector<std::vector<double>> scores;
  std::vector<int> truth;
  for (std::size_t q = 0; q < s.test.size(); ++q) {
    scores.push_back(etchog::Scores(model, s.test[q]));
    const auto it = std::find(model.classes.begin(), model.classes.end(), s.test_labels[q]);
    if (it == model.classes.end()) {
      throw etchog::InvalidArgument("test label " + std::to_string(s.test_labels[q]) +
                                    " unknown to the model");
    }
    truth.push_back(static_cast<int>(it - model.classes.begin()));
  }
  const auto curve = etchog::FarFrrCurve(etchog::BuildScoreSet(scores, truth));
  if (!curve_path.empty()) {
    std::ofstream file;
    OpenOrThrow(file, curve_path);
    file << "threshold,far,frr\n";
    for (const auto& p : curve) {
      file << etchog::FormatDouble(p.threshold) << ',' << etchog::FormatDouble(p.far)
           << ',' << etchog::FormatDouble(p.frr) << '\n';
    }
  }
  std::printf("eer=%.17g queries=%zu\n", etchog::Eer(curve), s.test.size());
  return kExitOk;
}

// --- experiment -------------------------------------------------------------

int RunExperimentCommand(const CommonOptions& common, std::string out_path,
                         std::string verdicts_path) {
  const ConfigMap map = MergedConfig(common);
  if (out_path.empty()) out_path = Lookup(map, "out");
  if (verdicts_path.empty()) verdicts_path = Lookup(map, "verdicts");
  const auto cfg = etchog::ExperimentConfigFromMap(map);
  const auto dataset = etchog::ResolveDataset(cfg);
  const auto result = etchog::RunExperiment(cfg, dataset);

  const std::string csv = etchog::ResultsCsv(result);
  if (out_path.empty() || out_path == "-") {
    std::cout << csv;
  } else {
    std::ofstream file;
    OpenOrThrow(file, out_path);
    file << csv;
  }
  if (!verdicts_path.empty()) {
    std::ofstream file;
    OpenOrThrow(file, verdicts_path);
    for (const auto& v : result.verdicts) file << v << '\n';
  }
  if (result.verify_failures > 0) {
    std::cerr << "etchog: " << result.verify_failures
              << " images failed the equivalence check\n";
    return kExitVerifyFailed;
  }
  for (const auto& row : result.rows) {
    if (!row.error.empty()) return kExitError;
  }
  return kExitOk;
}

// --- fixture ----------------------------------------------------------------

int RunFixture(const etchog::FixtureOptions& options, const std::string& out) {
  const auto d = etchog::MakeFixture(options);
  etchog::WriteDataset(d, out);
  std::cerr << "etchog: wrote " << d.size() << " images in "
            << d.class_names.size() << " classes to " << out << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Block-scrambling image cipher with grid-wise HOG features"};
  app.require_subcommand(1);

  CommonOptions common;
  std::string in, out, model, curve, verdicts;
  std::vector<std::string> inputs;
  bool encrypt = false;
  double tol = 1e-9;
  etchog::FixtureOptions fixture;
  int fixture_size = 64;

  auto* enc = app.add_subcommand("encrypt", "Encrypt a PGM image");
  auto* dec = app.add_subcommand("decrypt", "Decrypt a PGM image");
  for (auto* cmd : {enc, dec}) {
    AddCommonOptions(cmd, common);
    cmd->add_option("--in", in, "Input PGM")->required()->check(CLI::ExistingFile);
    cmd->add_option("--out", out, "Output PGM")->required();
  }

  auto* hog = app.add_subcommand("hog", "Extract grid-wise HOG features");
  AddCommonOptions(hog, common);
  hog->add_option("--in", inputs, "Input PGM (repeatable)")->required()->check(CLI::ExistingFile);
  hog->add_option("--out", out, "Feature file (default stdout)");
  hog->add_flag("--encrypt", encrypt, "Encrypt each image before extraction");

  auto* verify = app.add_subcommand("verify", "Check plain/encrypted feature equivalence");
  AddCommonOptions(verify, common);
  verify->add_option("--in", inputs, "Input PGM (repeatable); default: the dataset")
      ->check(CLI::ExistingFile);
  verify->add_option("--tol", tol, "Relative tolerance")->check(CLI::PositiveNumber);
  verify->add_option("--verdicts", verdicts, "Write verdict lines here (default stdout)");

  auto* train = app.add_subcommand("train", "Train one-vs-rest SVMs on the training split");
  AddCommonOptions(train, common);
  train->add_flag("--encrypt", encrypt, "Encrypt images before extraction");
  train->add_option("--model", model, "Output model file")->required();

  auto* eval = app.add_subcommand("eval", "Score the test split and report the EER");
  AddCommonOptions(eval, common);
  eval->add_flag("--encrypt", encrypt, "Encrypt images before extraction");
  eval->add_option("--model", model, "Model file")->required()->check(CLI::ExistingFile);
  eval->add_option("--curve", curve, "Write the FAR/FRR curve as CSV");

  auto* experiment = app.add_subcommand("experiment", "Run the plain/encrypted sweep");
  AddCommonOptions(experiment, common);
  experiment->add_option("--out", out, "Results CSV (default stdout)");
  experiment->add_option("--verdicts", verdicts, "Equivalence verdict lines");

  auto* fix = app.add_subcommand("fixture", "Write the synthetic dataset as PGM files");
  fix->add_option("--out", out, "Output directory")->required();
  fix->add_option("--classes", fixture.classes, "Classes")->check(CLI::PositiveNumber);
  fix->add_option("--per-class", fixture.per_class, "Images per class")->check(CLI::PositiveNumber);
  fix->add_option("--size", fixture_size, "Image side, pixels")->check(CLI::PositiveNumber);
  fix->add_option("--seed", fixture.seed, "Generator seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*enc) return RunCipher(common, in, out, false);
    if (*dec) return RunCipher(common, in, out, true);
    if (*hog) return RunHog(common, inputs, out, encrypt);
    if (*verify) return RunVerify(common, inputs, tol, verdicts);
    if (*train) return RunTrain(common, encrypt, model);
    if (*eval) return RunEval(common, encrypt, model, curve);
    if (*experiment) return RunExperimentCommand(common, out, verdicts);
    if (*fix) {
      fixture.width = fixture.height = fixture_size;
      return RunFixture(fixture, out);
    }
  } catch (const std::exception& e) {
    std::cerr << "etchog: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
