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

#include "puffercal/mechanism.hpp"

#include <cmath>
#include <random>

#include "puffercal/specfun.hpp"

namespace puffercal {

double laplace_pdf(const LaplaceNoise& noise, double z) {
  return 0.5 / noise.b * std::exp(-std::abs(z) / noise.b);
}

std::vector<double> laplace_sample(const LaplaceNoise& noise,
                                   std::uint64_t seed, std::size_t n) {
  std::mt19937_64 rng(seed);
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    // u strictly inside (0,1): offset the 53-bit integer by half a ulp.
    const double u =
        (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
    const double v = u - 0.5;
    const double sign = (v < 0.0) ? -1.0 : 1.0;
    out.push_back(-noise.b * sign * std::log1p(-2.0 * std::abs(v)));
  }
  return out;
}

namespace {

using constants::kSqrtTwo;

// Density of G(mu, sigma^2) + Laplace(b) at y, sigma > 0. Writing
// z = y - mu, the two exponential half-integrals give
//   p(y) = (1/4b) e^{sigma^2/2b^2} [ e^{-z/b} erfc(wA) + e^{z/b} erfc(wB) ],
//   wA = sigma/(sqrt2 b) - z/(sqrt2 sigma),  wB = sigma/(sqrt2 b) + z/(sqrt2 sigma).
// The prefactor overflows long before the product does, so each term is
// evaluated through erfc_scaled: for w >= 0 the term collapses to
// erfcx(w) e^{-z^2/(2 sigma^2)}, and for w < 0 the identity
// erfc(w) = 2 - erfc(-w) splits off a pure exponential whose exponent is
// then provably negative.
double gauss_laplace_density(double z, double sigma, double b) {
  const double gauss = std::exp(-0.5 * (z / sigma) * (z / sigma));
  const double shared = sigma / (kSqrtTwo * b);
  const double skew = z / (kSqrtTwo * sigma);
  const double wa = shared - skew;
  const double wb = shared + skew;
  double term_a, term_b;
  if (wa >= 0.0) {
    term_a = erfc_scaled(wa) * gauss;
  } else {
    // z > sigma^2/b here, so the exponent is below -sigma^2/(2b^2) <= 0.
    term_a = 2.0 * std::exp(0.5 * (sigma / b) * (sigma / b) - z / b) -
             erfc_scaled(-wa) * gauss;
  }
  if (wb >= 0.0) {
    term_b = erfc_scaled(wb) * gauss;
  } else {
    term_b = 2.0 * std::exp(0.5 * (sigma / b) * (sigma / b) + z / b) -
             erfc_scaled(-wb) * gauss;
  }
  const double density = (term_a + term_b) / (4.0 * b);
  return density > 0.0 ? density : 0.0;  // clamp roundoff in the far tail
}

}  // namespace

double noised_density(const Gmm1D& prior, const LaplaceNoise& noise,
                      double y) {
  if (!std::isfinite(y)) {
    throw DomainError("noised_density: y must be finite");
  }
  if (prior.empty()) throw DomainError("noised_density: empty prior");
  double density = 0.0;
  for (const auto& c : prior.components()) {
    if (c.component.sigma == 0.0) {
      density += c.weight * laplace_pdf(noise, y - c.component.mu);
    } else {
      density += c.weight * gauss_laplace_density(y - c.component.mu,
                                                  c.component.sigma, noise.b);
    }
  }
  return density;
}

}  // namespace puffercal
