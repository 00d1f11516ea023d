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

#ifndef PUFFERCAL_GAUSSIAN_HPP
#define PUFFERCAL_GAUSSIAN_HPP

#include <cmath>

#include "puffercal/errors.hpp"
#include "puffercal/specfun.hpp"

namespace puffercal {

// Univariate normal, parameterized by standard deviation (every calibration
// formula consumes |sigma_i - sigma_j| directly). sigma = 0 denotes a point
// mass; point masses are legal for calibration but have no pdf.
struct Gaussian1D {
  double mu = 0.0;
  double sigma = 1.0;

  Gaussian1D() = default;
  Gaussian1D(double mu_, double sigma_) : mu(mu_), sigma(sigma_) {
    if (!std::isfinite(mu) || !std::isfinite(sigma) || sigma < 0.0) {
      throw DomainError("Gaussian1D: mu must be finite and sigma >= 0");
    }
  }

  friend bool operator==(const Gaussian1D& a, const Gaussian1D& b) {
    return a.mu == b.mu && a.sigma == b.sigma;
  }
};

inline double gaussian_pdf(const Gaussian1D& g, double x) {
  if (g.sigma <= 0.0) {
    throw DomainError("gaussian_pdf: point mass has no density");
  }
  const double z = (x - g.mu) / g.sigma;
  return constants::kInvSqrtTwoPi / g.sigma * std::exp(-0.5 * z * z);
}

// The optimal deterministic coupling between two univariate normals:
// the affine map x -> mu_dst + (sigma_dst/sigma_src)(x - mu_src), which
// pushes the source law exactly onto the target law.
struct MongeMap {
  Gaussian1D source;
  Gaussian1D target;
  double slope = 1.0;
  double intercept = 0.0;

  double operator()(double x) const { return intercept + slope * x; }
};

inline MongeMap monge_map(const Gaussian1D& src, const Gaussian1D& dst) {
  if (!(src.sigma > 0.0)) {
    throw DomainError(
        "monge_map: source is a point mass; no map exists (use the "
        "translation rule when both sigmas are zero)");
  }
  MongeMap map;
  map.source = src;
  map.target = dst;
  map.slope = dst.sigma / src.sigma;
  map.intercept = dst.mu - src.mu * map.slope;
  return map;
}

// Squared 2-Wasserstein distance between univariate normals:
// (mu_a - mu_b)^2 + (sigma_a - sigma_b)^2.
inline double w2_squared(const Gaussian1D& a, const Gaussian1D& b) {
  const double dmu = a.mu - b.mu;
  const double dsigma = a.sigma - b.sigma;
  return dmu * dmu + dsigma * dsigma;
}

}  // namespace puffercal

#endif  // PUFFERCAL_GAUSSIAN_HPP
