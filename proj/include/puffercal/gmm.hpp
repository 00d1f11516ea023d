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

#ifndef PUFFERCAL_GMM_HPP
#define PUFFERCAL_GMM_HPP

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "puffercal/gaussian.hpp"

namespace puffercal {

struct GmmComponent {
  double weight = 1.0;
  Gaussian1D component;
};

// Weighted mixture of univariate normals; the adversary belief for one
// secret. A plain Gaussian is the single-component case. Weights are
// nonnegative and sum to 1 within 1e-9 (checked on construction).
class Gmm1D {
 public:
  Gmm1D() = default;
  explicit Gmm1D(std::vector<GmmComponent> components);
  static Gmm1D single(const Gaussian1D& g);

  const std::vector<GmmComponent>& components() const { return components_; }
  int size() const { return static_cast<int>(components_.size()); }
  bool empty() const { return components_.empty(); }

  // Component-parameter bounds, used to size audit integration windows.
  double max_sigma() const;
  double min_mu() const;
  double max_mu() const;

 private:
  std::vector<GmmComponent> components_;
};

// Mixture density at x. Point-mass components (sigma = 0) have no density:
// throws DomainError; point masses are calibration-only.
double gmm_pdf(const Gmm1D& model, double x);

// One adversary's model: a prior per secret label.
struct PriorBelief {
  std::string label;
  std::map<std::string, Gmm1D> priors;
};

// EM fit of a k-component mixture, best of `restarts` runs by final
// log-likelihood. Deterministic in (samples, k, seed, restarts) and invariant
// under permutation of the samples (input is sorted internally). Components
// of the result are ordered by ascending mean. Initialization is
// k-means++-style seeding on the samples; iterations stop when the relative
// log-likelihood change drops below 1e-8 or after 500 rounds. Every fitted
// sigma is floored at 1e-6 times the sample range.
//
// Throws DataError when fewer than 2k samples are given, or when every
// restart collapses to the floor on all components (degenerate data).
// If `loglik_trace` is non-null it receives the per-iteration log-likelihood
// sequence of the winning run.
Gmm1D fit_em(std::span<const double> samples, int k, std::uint64_t seed,
             int restarts, std::vector<double>* loglik_trace = nullptr);

}  // namespace puffercal

#endif  // PUFFERCAL_GMM_HPP
