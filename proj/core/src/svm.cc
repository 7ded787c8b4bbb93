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

#include "etchog/svm.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "etchog/errors.h"
#include "etchog/exact_sum.h"
#include "etchog/prng.h"

namespace etchog {
namespace {

constexpr double kTau = 1e-12;

// Relative slack when classifying an alpha as sitting on a bound.
bool AtUpper(double alpha, double c) { return alpha >= c * (1.0 - 1e-12); }
bool AtLower(double alpha, double c) { return alpha <= c * 1e-12; }

struct Solution {
  std::vector<double> alpha;
  std::vector<double> gradient;
  double rho = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

void CheckSamples(std::span<const Sample> x) {
  if (x.empty()) throw InvalidArgument("empty training set");
  const std::size_t dim = x.front().size();
  for (const Sample& s : x) {
    if (s.size() != dim) {
      throw InvalidArgument("training samples have different lengths");
    }
    for (double v : s) {
      if (!std::isfinite(v)) throw InvalidArgument("non-finite feature value");
    }
  }
}

double ComputeRho(std::span<const int> y, const std::vector<double>& alpha,
                  const std::vector<double>& g, double c) {
  double ub = std::numeric_limits<double>::infinity();
  double lb = -std::numeric_limits<double>::infinity();
  double sum_free = 0.0;
  std::size_t free = 0;
  for (std::size_t t = 0; t < alpha.size(); ++t) {
    const double yg = y[t] * g[t];
    if (AtUpper(alpha[t], c)) {
      if (y[t] == -1) ub = std::min(ub, yg); else lb = std::max(lb, yg);
    } else if (AtLower(alpha[t], c)) {
      if (y[t] == +1) ub = std::min(ub, yg); else lb = std::max(lb, yg);
    } else {
      ++free;
      sum_free += yg;
    }
  }
  if (free > 0) return sum_free / static_cast<double>(free);
  return (ub + lb) / 2.0;
}

Solution Solve(const KernelMatrix& gram, std::span<const int> y,
               const TrainConfig& cfg) {
  const std::size_t n = gram.size();
  const double c = cfg.c;
  Solution s;
  s.alpha.assign(n, 0.0);
  s.gradient.assign(n, -1.0);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  SplitMix64 rng(cfg.seed);
  FisherYatesShuffle(std::span<std::size_t>(order), rng);

  std::vector<double> row_i_buf, row_j_buf;
  const std::size_t budget =
      static_cast<std::size_t>(std::max(cfg.max_passes, 1)) * std::max<std::size_t>(n, 1);
  auto& a = s.alpha;
  auto& g = s.gradient;

  while (true) {
    std::size_t i = n, j = n;
    double up = -std::numeric_limits<double>::infinity();
    double low = std::numeric_limits<double>::infinity();
    for (std::size_t t : order) {
      const double v = -y[t] * g[t];
      const bool in_up = (y[t] == +1) ? !AtUpper(a[t], c) : !AtLower(a[t], c);
      const bool in_low = (y[t] == +1) ? !AtLower(a[t], c) : !AtUpper(a[t], c);
      if (in_up && v > up) { up = v; i = t; }
      if (in_low && v < low) { low = v; j = t; }
    }
    if (i == n || j == n || up - low < cfg.kkt_tol) {
      s.converged = true;
      break;
    }
    if (s.iterations >= budget) break;
    ++s.iterations;

    const auto ki = gram.Row(i, row_i_buf);
    const auto kj = gram.Row(j, row_j_buf);
    const double old_ai = a[i];
    const double old_aj = a[j];
    if (y[i] != y[j]) {
      double quad = ki[i] + kj[j] + 2.0 * (-ki[j]);
      if (quad <= 0) quad = kTau;
      const double delta = (-g[i] - g[j]) / quad;
      const double diff = a[i] - a[j];
      a[i] += delta;
      a[j] += delta;
      if (diff > 0) {
        if (a[j] < 0) { a[j] = 0; a[i] = diff; }
      } else {
        if (a[i] < 0) { a[i] = 0; a[j] = -diff; }
      }
      if (diff > 0) {
        if (a[i] > c) { a[i] = c; a[j] = c - diff; }
      } else {
        if (a[j] > c) { a[j] = c; a[i] = c + diff; }
      }
    } else {
      double quad = ki[i] + kj[j] - 2.0 * ki[j];
      if (quad <= 0) quad = kTau;
      const double delta = (g[i] - g[j]) / quad;
      const double sum = a[i] + a[j];
      a[i] -= delta;
      a[j] += delta;
      if (sum > c) {
        if (a[i] > c) { a[i] = c; a[j] = sum - c; }
      } else {
        if (a[j] < 0) { a[j] = 0; a[i] = sum; }
      }
      if (sum > c) {
        if (a[j] > c) { a[j] = c; a[i] = sum - c; }
      } else {
        if (a[i] < 0) { a[i] = 0; a[j] = sum; }
      }
    }
    const double dai = a[i] - old_ai;
    const double daj = a[j] - old_aj;
    for (std::size_t t = 0; t < n; ++t) {
      g[t] += y[t] * (y[i] * ki[t] * dai + y[j] * kj[t] * daj);
    }
  }
  s.rho = ComputeRho(y, a, g, c);
  return s;
}

double ResidualFor(double alpha, double margin, double c) {
  // margin = y f(x) - 1
  if (AtLower(alpha, c)) return std::max(0.0, -margin);
  if (AtUpper(alpha, c)) return std::max(0.0, margin);
  return std::abs(margin);
}

}  // namespace

void KernelSpec::Validate() const {
  if (kind == KernelKind::kGaussian && !(gamma > 0 && std::isfinite(gamma))) {
    throw InvalidArgument("gaussian kernel needs gamma > 0");
  }
}

std::string KernelName(KernelKind kind) {
  return kind == KernelKind::kLinear ? "linear" : "gaussian";
}

KernelKind ParseKernelKind(const std::string& name) {
  if (name == "linear") return KernelKind::kLinear;
  if (name == "gaussian") return KernelKind::kGaussian;
  throw InvalidArgument("unknown kernel '" + name + "'");
}

double KernelEval(const KernelSpec& spec, std::span<const double> a,
                  std::span<const double> b) {
  if (a.size() != b.size()) {
    throw InvalidArgument("kernel arguments have lengths " +
                          std::to_string(a.size()) + " and " +
                          std::to_string(b.size()));
  }
  if (spec.kind == KernelKind::kLinear) {
    return ExactSum(a.size(), [&](std::size_t i) { return a[i] * b[i]; });
  }
  const double acc = ExactSum(a.size(), [&](std::size_t i) {
    const double d = a[i] - b[i];
    return d * d;
  });
  return std::exp(-spec.gamma * acc);
}

void TrainConfig::Validate() const {
  if (!(c > 0 && std::isfinite(c))) throw InvalidArgument("C must be > 0");
  if (!(kkt_tol > 0)) throw InvalidArgument("kkt_tol must be > 0");
  if (max_passes < 1) throw InvalidArgument("max_passes must be >= 1");
}

KernelMatrix::KernelMatrix(std::span<const Sample> samples, KernelSpec spec,
                           std::size_t cache_limit)
    : samples_(samples), spec_(spec) {
  spec_.Validate();
  const std::size_t n = samples_.size();
  if (n <= cache_limit) {
    full_.resize(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        const double k = KernelEval(spec_, samples_[i], samples_[j]);
        full_[i * n + j] = k;
        full_[j * n + i] = k;
      }
    }
  }
}

double KernelMatrix::operator()(std::size_t i, std::size_t j) const {
  if (!full_.empty()) return full_[i * samples_.size() + j];
  return KernelEval(spec_, samples_[i], samples_[j]);
}

std::span<const double> KernelMatrix::Row(std::size_t i,
                                          std::vector<double>& scratch) const {
  const std::size_t n = samples_.size();
  if (!full_.empty()) return std::span<const double>(full_).subspan(i * n, n);
  scratch.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    scratch[j] = KernelEval(spec_, samples_[i], samples_[j]);
  }
  return scratch;
}

SvmModel TrainBinarySmo(std::span<const Sample> x, std::span<const int> y,
                        const TrainConfig& config, const KernelSpec& kernel) {
  CheckSamples(x);
  const KernelMatrix gram(x, kernel);
  return TrainBinarySmo(gram, x, y, config);
}

SvmModel TrainBinarySmo(const KernelMatrix& gram, std::span<const Sample> x,
                        std::span<const int> y, const TrainConfig& config) {
  config.Validate();
  CheckSamples(x);
  if (y.size() != x.size() || gram.size() != x.size()) {
    throw InvalidArgument("labels, samples and kernel matrix disagree in size");
  }
  bool pos = false, neg = false;
  for (int label : y) {
    if (label == 1) pos = true;
    else if (label == -1) neg = true;
    else throw InvalidArgument("binary labels must be -1 or +1");
  }
  if (!pos || !neg) throw InvalidArgument("training set holds a single class");

  const Solution s = Solve(gram, y, config);
  SvmModel model;
  model.kernel = gram.spec();
  model.bias = -s.rho;
  model.iterations = s.iterations;
  model.converged = s.converged;
  double objective = 0.0;
  for (std::size_t t = 0; t < x.size(); ++t) {
    objective += -0.5 * s.alpha[t] * (s.gradient[t] - 1.0);
    const double margin = s.gradient[t] - y[t] * s.rho;
    model.max_kkt_residual = std::max(
        model.max_kkt_residual, ResidualFor(s.alpha[t], margin, config.c));
    if (s.alpha[t] > 0) {
      model.support_indices.push_back(t);
      model.support_vectors.push_back(x[t]);
      model.coefficients.push_back(s.alpha[t] * y[t]);
    }
  }
  model.dual_objective = objective;
  return model;
}

double Decision(const SvmModel& model, std::span<const double> x) {
  double f = model.bias;
  for (std::size_t i = 0; i < model.support_vectors.size(); ++i) {
    f += model.coefficients[i] *
         KernelEval(model.kernel, model.support_vectors[i], x);
  }
  return f;
}

double KktResidual(const SvmModel& model, std::span<const Sample> x,
                   std::span<const int> y, double c) {
  std::vector<double> alpha(x.size(), 0.0);
  for (std::size_t k = 0; k < model.support_indices.size(); ++k) {
    alpha.at(model.support_indices[k]) = std::abs(model.coefficients[k]);
  }
  double worst = 0.0;
  for (std::size_t t = 0; t < x.size(); ++t) {
    const double margin = y[t] * Decision(model, x[t]) - 1.0;
    worst = std::max(worst, ResidualFor(alpha[t], margin, c));
  }
  return worst;
}

SvmModel MultiModel::Binary(std::size_t class_index) const {
  SvmModel m;
  m.kernel = kernel;
  m.bias = biases.at(class_index);
  const auto& coef = coefficients.at(class_index);
  for (std::size_t v = 0; v < vectors.size(); ++v) {
    if (coef[v] == 0.0) continue;
    m.support_vectors.push_back(vectors[v]);
    m.coefficients.push_back(coef[v]);
    if (v < vector_indices.size()) m.support_indices.push_back(vector_indices[v]);
  }
  if (class_index < max_kkt_residuals.size()) {
    m.max_kkt_residual = max_kkt_residuals[class_index];
  }
  if (class_index < converged.size()) m.converged = converged[class_index];
  return m;
}

MultiModel TrainOneVsRest(std::span<const Sample> x, std::span<const int> labels,
                          const TrainConfig& config, const KernelSpec& kernel) {
  config.Validate();
  CheckSamples(x);
  if (labels.size() != x.size()) {
    throw InvalidArgument("labels and samples disagree in size");
  }
  const std::set<int> distinct(labels.begin(), labels.end());
  if (distinct.size() < 2) {
    throw InvalidArgument("one-vs-rest needs at least two classes");
  }
  const KernelMatrix gram(x, kernel);

  MultiModel multi;
  multi.kernel = kernel;
  multi.classes.assign(distinct.begin(), distinct.end());
  std::vector<std::vector<double>> dense;  // [class][training point]
  std::vector<int> y(x.size());
  for (int cls : multi.classes) {
    for (std::size_t t = 0; t < x.size(); ++t) y[t] = labels[t] == cls ? 1 : -1;
    const SvmModel m = TrainBinarySmo(gram, x, y, config);
    std::vector<double> coef(x.size(), 0.0);
    for (std::size_t k = 0; k < m.support_indices.size(); ++k) {
      coef[m.support_indices[k]] = m.coefficients[k];
    }
    dense.push_back(std::move(coef));
    multi.biases.push_back(m.bias);
    multi.max_kkt_residuals.push_back(m.max_kkt_residual);
    multi.converged.push_back(m.converged);
  }
  multi.coefficients.resize(multi.classes.size());
  for (std::size_t t = 0; t < x.size(); ++t) {
    bool used = false;
    for (const auto& coef : dense) used = used || coef[t] != 0.0;
    if (!used) continue;
    multi.vectors.push_back(x[t]);
    multi.vector_indices.push_back(t);
    for (std::size_t c = 0; c < dense.size(); ++c) {
      multi.coefficients[c].push_back(dense[c][t]);
    }
  }
  return multi;
}

std::vector<double> Scores(const MultiModel& model, std::span<const double> x) {
  std::vector<double> s = model.biases;
  for (std::size_t v = 0; v < model.vectors.size(); ++v) {
    const double k = KernelEval(model.kernel, model.vectors[v], x);
    for (std::size_t c = 0; c < s.size(); ++c) {
      s[c] += model.coefficients[c][v] * k;
    }
  }
  return s;
}

int Predict(const MultiModel& model, std::span<const double> x) {
  const auto s = Scores(model, x);
  return model.classes[static_cast<std::size_t>(
      std::max_element(s.begin(), s.end()) - s.begin())];
}

}  // namespace etchog
