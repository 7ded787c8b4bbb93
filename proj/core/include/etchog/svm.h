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

// Soft-margin support vector machines trained by sequential minimal
// optimization, with linear and Gaussian kernels and a one-vs-rest
// multiclass wrapper.
//
// The solver minimizes 1/2 a^T Q a - e^T a subject to 0 <= a_i <= C and
// y^T a = 0, where Q_ij = y_i y_j K(x_i, x_j). Each step picks the maximal
// violating pair
//   i = argmax { -y_t G_t : t in I_up },  j = argmin { -y_t G_t : t in I_low }
// and solves the two-variable subproblem analytically. It stops once
// max - min < kkt_tol, which bounds every per-point KKT residual by kkt_tol.

#ifndef ETCHOG_SVM_H_
#define ETCHOG_SVM_H_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace etchog {

using Sample = std::vector<double>;

enum class KernelKind { kLinear, kGaussian };

struct KernelSpec {
  KernelKind kind = KernelKind::kLinear;
  double gamma = 0.0;  // Gaussian only

  static KernelSpec Linear() { return {KernelKind::kLinear, 0.0}; }
  static KernelSpec Gaussian(double gamma) {
    return {KernelKind::kGaussian, gamma};
  }
  void Validate() const;
  bool operator==(const KernelSpec&) const = default;
};

/// "linear" or "gaussian".
std::string KernelName(KernelKind kind);
/// Inverse of KernelName; throws InvalidArgument.
KernelKind ParseKernelKind(const std::string& name);

/// linear: a.b; gaussian: exp(-gamma |a - b|^2).
double KernelEval(const KernelSpec& spec, std::span<const double> a,
                  std::span<const double> b);

struct TrainConfig {
  double c = 1.0;
  double kkt_tol = 1e-3;
  int max_passes = 1000;  // iteration budget is max_passes * n
  std::uint64_t seed = 0;  // scan order used to break selection ties
  void Validate() const;
};

/// Gram matrix of a training set. Fully cached up to `cache_limit` points,
/// otherwise rows are recomputed on demand.
class KernelMatrix {
 public:
  static constexpr std::size_t kDefaultCacheLimit = 4096;

  KernelMatrix(std::span<const Sample> samples, KernelSpec spec,
               std::size_t cache_limit = kDefaultCacheLimit);

  std::size_t size() const { return samples_.size(); }
  const KernelSpec& spec() const { return spec_; }
  bool cached() const { return !full_.empty() || samples_.empty(); }

  double operator()(std::size_t i, std::size_t j) const;
  /// Row i, either from the cache or recomputed into `scratch`.
  std::span<const double> Row(std::size_t i, std::vector<double>& scratch) const;

 private:
  std::span<const Sample> samples_;
  KernelSpec spec_;
  std::vector<double> full_;
  std::vector<double> diagonal_;
};

struct SvmModel {
  KernelSpec kernel;
  std::vector<Sample> support_vectors;
  std::vector<double> coefficients;  // alpha_i * y_i, one per support vector
  double bias = 0.0;

  // Training diagnostics; not persisted.
  std::vector<std::size_t> support_indices;  // into the training set
  std::size_t iterations = 0;
  bool converged = true;
  double dual_objective = 0.0;  // sum a - 1/2 a^T Q a at the solution
  double max_kkt_residual = 0.0;
};

/// Labels must be -1 or +1 with both present; features finite and of a
/// common length. Throws InvalidArgument otherwise.
SvmModel TrainBinarySmo(std::span<const Sample> x, std::span<const int> y,
                        const TrainConfig& config, const KernelSpec& kernel);
SvmModel TrainBinarySmo(const KernelMatrix& gram, std::span<const Sample> x,
                        std::span<const int> y, const TrainConfig& config);

/// sum_i coefficients_i K(sv_i, x) + bias.
double Decision(const SvmModel& model, std::span<const double> x);

/// Largest KKT residual of `model` over a training set, measured in units
/// of y f(x) - 1; alphas are recovered from support_indices.
double KktResidual(const SvmModel& model, std::span<const Sample> x,
                   std::span<const int> y, double c);

/// One-vs-rest ensemble sharing a single pool of support vectors.
struct MultiModel {
  KernelSpec kernel;
  std::vector<int> classes;
  std::vector<Sample> vectors;                    // union of support vectors
  std::vector<std::vector<double>> coefficients;  // [class][vector]
  std::vector<double> biases;                     // [class]

  // Diagnostics only; not persisted.
  std::vector<std::size_t> vector_indices;  // into the training set

  std::vector<double> max_kkt_residuals;  // [class]
  std::vector<bool> converged;            // [class]

  std::size_t num_classes() const { return classes.size(); }
  SvmModel Binary(std::size_t class_index) const;
};

/// Needs at least two distinct labels.
MultiModel TrainOneVsRest(std::span<const Sample> x, std::span<const int> labels,
                          const TrainConfig& config, const KernelSpec& kernel);

/// Decision value of every class model, in `classes` order.
std::vector<double> Scores(const MultiModel& model, std::span<const double> x);
int Predict(const MultiModel& model, std::span<const double> x);

// Model file ("ETCSVM v1"):
//
//   ETCSVM v1 classes=<K>
//   kernel linear | kernel gaussian gamma=<g>
//   b <b_1> ... <b_K>
//   labels <l_1> ... <l_K>
//   sv <n> dim <d>
//   <alpha_1> ... <alpha_K> <x_1> ... <x_d>      n lines
//
// Alphas are the signed coefficients alpha_i * y_i. A binary model is the
// K = 1 case with label 1.
void WriteModel(std::ostream& out, const MultiModel& model);
void WriteModel(std::ostream& out, const SvmModel& model);
MultiModel ReadModel(std::istream& in);

}  // namespace etchog

#endif  // ETCHOG_SVM_H_
