//
// Copyright 2026 The puffercal Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef PUFFERCAL_ERRORS_HPP
#define PUFFERCAL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace puffercal {

// Bad argument or precondition violation. The CLI maps this to exit code 1.
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// Malformed or insufficient input data (CSV rows, model files, secret
// resolution). CLI exit code 2.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// A numerical routine failed to meet its own tolerance (non-convergence,
// quadrature error above threshold). Signals a numerics bug or a pathological
// instance, not bad user input. CLI exit code 3.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace puffercal

#endif  // PUFFERCAL_ERRORS_HPP
