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

#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

#include "etchog/errors.h"
#include "etchog/feature_io.h"
#include "etchog/svm.h"

namespace etchog {
namespace {

std::istringstream NextLine(std::istream& in, const char* what) {
  std::string line;
  if (!std::getline(in, line)) {
    throw FormatError(std::string("model file truncated before ") + what);
  }
  return std::istringstream(line);
}

void ExpectWord(std::istringstream& fields, const std::string& word) {
  std::string w;
  if (!(fields >> w) || w != word) {
    throw FormatError("model file: expected '" + word + "'");
  }
}

bool ReadDouble(std::istringstream& fields, double& out) {
  std::string token;
  if (!(fields >> token)) return false;
  char* end = nullptr;
  out = std::strtod(token.c_str(), &end);
  return end == token.c_str() + token.size();
}

}  // namespace

void WriteModel(std::ostream& out, const MultiModel& model) {
  const std::size_t k = model.classes.size();
  out << "ETCSVM v1 classes=" << k << '\n';
  out << "kernel " << KernelName(model.kernel.kind);
  if (model.kernel.kind == KernelKind::kGaussian) {
    out << " gamma=" << FormatDouble(model.kernel.gamma);
  }
  out << '\n';
  out << 'b';
  for (double b : model.biases) out << ' ' << FormatDouble(b);
  out << "\nlabels";
  for (int l : model.classes) out << ' ' << l;
  const std::size_t dim = model.vectors.empty() ? 0 : model.vectors.front().size();
  out << "\nsv " << model.vectors.size() << " dim " << dim << '\n';
  for (std::size_t v = 0; v < model.vectors.size(); ++v) {
    for (std::size_t c = 0; c < k; ++c) {
      if (c) out << ' ';
      out << FormatDouble(model.coefficients[c][v]);
    }
    for (double x : model.vectors[v]) out << ' ' << FormatDouble(x);
    out << '\n';
  }
}

void WriteModel(std::ostream& out, const SvmModel& model) {
  MultiModel m;
  m.kernel = model.kernel;
  m.classes = {1};
  m.vectors = model.support_vectors;
  m.coefficients = {model.coefficients};
  m.biases = {model.bias};
  WriteModel(out, m);
}

MultiModel ReadModel(std::istream& in) {
  MultiModel m;
  std::size_t k = 0;
  {
    auto f = NextLine(in, "header");
    ExpectWord(f, "ETCSVM");
    ExpectWord(f, "v1");
    std::string classes;
    if (!(f >> classes) || classes.rfind("classes=", 0) != 0) {
      throw FormatError("model file: bad header");
    }
    try {
      k = std::stoul(classes.substr(8));
    } catch (const std::exception&) {
      throw FormatError("model file: bad class count");
    }
    if (k == 0) throw FormatError("model file: zero classes");
  }
  {
    auto f = NextLine(in, "kernel line");
    ExpectWord(f, "kernel");
    std::string kind;
    f >> kind;
    try {
      m.kernel.kind = ParseKernelKind(kind);
    } catch (const InvalidArgument& e) {
      throw FormatError(std::string("model file: ") + e.what());
    }
    if (m.kernel.kind == KernelKind::kGaussian) {
      std::string gamma;
      if (!(f >> gamma) || gamma.rfind("gamma=", 0) != 0) {
        throw FormatError("model file: gaussian kernel without gamma");
      }
      m.kernel.gamma = std::strtod(gamma.c_str() + 6, nullptr);
    }
  }
  {
    auto f = NextLine(in, "bias line");
    ExpectWord(f, "b");
    m.biases.resize(k);
    for (auto& b : m.biases) {
      if (!ReadDouble(f, b)) throw FormatError("model file: short bias line");
    }
  }
  {
    auto f = NextLine(in, "labels line");
    ExpectWord(f, "labels");
    m.classes.resize(k);
    for (auto& l : m.classes) {
      if (!(f >> l)) throw FormatError("model file: short labels line");
    }
  }
  std::size_t count = 0, dim = 0;
  {
    auto f = NextLine(in, "sv line");
    ExpectWord(f, "sv");
    f >> count;
    ExpectWord(f, "dim");
    if (!(f >> dim)) throw FormatError("model file: bad sv line");
  }
  m.coefficients.assign(k, {});
  for (std::size_t v = 0; v < count; ++v) {
    auto f = NextLine(in, "support vector");
    for (std::size_t c = 0; c < k; ++c) {
      double a;
      if (!ReadDouble(f, a)) throw FormatError("model file: short support vector line");
      m.coefficients[c].push_back(a);
    }
    Sample x(dim);
    for (auto& value : x) {
      if (!ReadDouble(f, value)) throw FormatError("model file: short support vector line");
    }
    m.vectors.push_back(std::move(x));
  }
  return m;
}

}  // namespace etchog
