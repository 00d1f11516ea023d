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

#ifndef PUFFERCAL_MECHANISM_HPP
#define PUFFERCAL_MECHANISM_HPP

#include <cstdint>
#include <vector>

#include "puffercal/errors.hpp"
#include "puffercal/gmm.hpp"

namespace puffercal {

// Zero-mean Laplace noise with scale b: density (1/2b) exp(-|z|/b),
// variance 2 b^2.
struct LaplaceNoise {
  double b = 1.0;

  LaplaceNoise() = default;
  explicit LaplaceNoise(double scale) : b(scale) {
    if (!(b > 0.0) || !std::isfinite(b)) {
      throw DomainError("LaplaceNoise: scale must be > 0");
    }
  }
};

double laplace_pdf(const LaplaceNoise& noise, double z);

// n i.i.d. draws by inverse CDF. Deterministic in (seed, n); the uniforms
// come straight off a mt19937_64 stream, so sequences are reproducible
// across platforms.
std::vector<double> laplace_sample(const LaplaceNoise& noise,
                                   std::uint64_t seed, std::size_t n);

// Exact density of Y = X + N for X distributed as the mixture prior and
// N Laplace: a weighted sum of closed-form Gaussian (x) Laplace convolutions
// evaluated through the scaled complementary error function (no overflow for
// any sigma/b ratio). Point-mass components contribute a shifted Laplace
// density. Throws DomainError on non-finite y.
double noised_density(const Gmm1D& prior, const LaplaceNoise& noise, double y);

}  // namespace puffercal

#endif  // PUFFERCAL_MECHANISM_HPP
