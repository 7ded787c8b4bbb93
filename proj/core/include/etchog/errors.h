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

#ifndef ETCHOG_ERRORS_H_
#define ETCHOG_ERRORS_H_

#include <stdexcept>
#include <string>

namespace etchog {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Image or grid dimensions incompatible with the requested tiling.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Invalid parameter values (out of range, inconsistent, non-finite).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The conditions under which encrypted and plain features are related by
/// a key-derived permutation do not hold for the given parameters.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Malformed serialized data (feature files, model files, config files).
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace etchog

#endif  // ETCHOG_ERRORS_H_
