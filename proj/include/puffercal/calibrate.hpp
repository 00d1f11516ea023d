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

#ifndef PUFFERCAL_CALIBRATE_HPP
#define PUFFERCAL_CALIBRATE_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "puffercal/gmm.hpp"
#include "puffercal/specfun.hpp"
#include "puffercal/transport.hpp"

namespace puffercal {

// An ordered pair of distinct secrets that must be statistically
// indistinguishable in the released data.
struct DiscriminativePair {
  std::string secret_i;
  std::string secret_j;
};

// (epsilon, delta) target plus the tau computation route. delta = 0 is only
// meaningful for translation-structure rules; the Gaussian/mixture bounds
// need delta > 0 because tau*(delta) diverges as delta -> 0.
struct PrivacyBudget {
  double epsilon = 1.0;
  double delta = 0.0;
  TauMethod tau_method = TauMethod::LambertFixedPoint;

  void validate() const;
};

// Which rule produced a noise scale.
enum class CalibrationRule {
  Gaussian,       // per-pair |dmu| + |dsigma| tau*(delta)
  Translation,    // per-pair |dmu| (shift-only priors; delta = 0)
  GaussianMixture,// transport-weighted sum over component pairs
  SumPresence,    // K-user summation query, presence secrets
  SumValue,       // K-user summation query, value secrets (delta = 0)
};

const char* calibration_rule_name(CalibrationRule rule);

// One evaluated (adversary, pair) term of the calibration max.
struct PairBreakdown {
  std::string adversary;
  DiscriminativePair pair;
  double mean_term = 0.0;   // |dmu|, weighted sum of |dmu|, or |mu_k|
  double sigma_term = 0.0;  // the factor multiplying tau in the maximand
  double maximand = 0.0;    // mean_term + tau * sigma_term
};

struct CalibrationResult {
  double b = 0.0;  // Laplace scale, data units; b = maximand / epsilon
  double epsilon = 1.0;
  double delta = 0.0;
  TauMethod tau_method = TauMethod::LambertFixedPoint;
  double tau = 0.0;  // 0 for rules that never consume tau
  CalibrationRule rule = CalibrationRule::Gaussian;
  double maximand = 0.0;
  std::string argmax_adversary;
  DiscriminativePair argmax_pair;
  std::vector<PairBreakdown> breakdown;
  // Transport plan behind the argmax term (mixture rule only). Different
  // optimal plans can yield different maximands; reporting the plan used
  // makes the b reproducible from the report.
  std::optional<TransportPlan> argmax_plan;
};

// Independent users contributing to a summation query.
struct PopulationUser {
  std::string id;
  double mu = 0.0;
  double sigma = 0.0;
};

struct UserPopulation {
  std::vector<PopulationUser> users;
};

// Gaussian-prior rule:
//   b = (1/eps) max over (belief, pair) of |mu_i - mu_j| + |sigma_i - sigma_j| tau*(delta).
// Every prior must be single-component. delta = 0 is accepted only when every
// pair is a pure shift (sigma_i = sigma_j), in which case this reduces to the
// translation rule.
CalibrationResult calibrate_gaussian(std::span<const PriorBelief> beliefs,
                                     std::span<const DiscriminativePair> pairs,
                                     const PrivacyBudget& budget);

// Translation rule (delta = 0): priors in every pair differ only by a shift.
// For single Gaussians that means equal sigmas; for mixtures, the shared
// structure (same size, same weights, same sigmas componentwise), giving
//   b = (1/eps) max sum_m alpha_m |mu_im - mu_jm|.
// Throws DataError when some pair lacks the translation structure.
CalibrationResult calibrate_translation(std::span<const PriorBelief> beliefs,
                                        std::span<const DiscriminativePair> pairs,
                                        double epsilon);

// Mixture rule: solve the component transport plan per pair, then
//   b = (1/eps) max sum_{ml} w*_ml (|mu_im - mu_jl| + tau*(delta) |sigma_im - sigma_jl|).
CalibrationResult calibrate_gmm(std::span<const PriorBelief> beliefs,
                                std::span<const DiscriminativePair> pairs,
                                const PrivacyBudget& budget);

// Presence secrets in a K-user summation query:
//   b = (1/eps) max_k |mu_k| + dsigma_k tau*(delta),
//   dsigma_k = sqrt(S) - sqrt(S - sigma_k^2) with S the total variance.
CalibrationResult calibrate_sum_presence(const UserPopulation& population,
                                         const PrivacyBudget& budget);

// Value secrets: b = |a - a'| / eps, at delta = 0.
CalibrationResult calibrate_sum_value(double a, double a_prime,
                                      double epsilon);

// Identical-user bound as a function of the population size:
//   bound(K) = (1/eps)(|mu| + (sqrt(K) - sqrt(K-1)) sigma tau*(delta)),
// for K = 1..k_max. Strictly decreasing in K with limit |mu|/eps.
std::vector<std::pair<int, double>> sum_bound_curve(double mu, double sigma,
                                                    const PrivacyBudget& budget,
                                                    int k_max);

}  // namespace puffercal

#endif  // PUFFERCAL_CALIBRATE_HPP
