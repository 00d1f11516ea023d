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

#include "puffercal/calibrate.hpp"

#include <algorithm>
#include <cmath>

#include "puffercal/errors.hpp"

namespace puffercal {

void PrivacyBudget::validate() const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw DomainError("PrivacyBudget: epsilon must be > 0");
  }
  if (!(delta >= 0.0 && delta < 1.0)) {
    throw DomainError("PrivacyBudget: delta must lie in [0, 1)");
  }
}

const char* calibration_rule_name(CalibrationRule rule) {
  switch (rule) {
    case CalibrationRule::Gaussian:
      return "gaussian";
    case CalibrationRule::Translation:
      return "translation";
    case CalibrationRule::GaussianMixture:
      return "gmm";
    case CalibrationRule::SumPresence:
      return "sum-presence";
    case CalibrationRule::SumValue:
      return "sum-value";
  }
  return "unknown";
}

namespace {

const Gmm1D& resolve_prior(const PriorBelief& belief,
                           const std::string& secret) {
  auto it = belief.priors.find(secret);
  if (it == belief.priors.end()) {
    throw DataError("belief '" + belief.label +
                    "' has no prior for secret '" + secret + "'");
  }
  return it->second;
}

const Gaussian1D& single_component(const PriorBelief& belief,
                                   const std::string& secret) {
  const Gmm1D& prior = resolve_prior(belief, secret);
  if (prior.size() != 1) {
    throw DomainError("calibrate_gaussian: prior for secret '" + secret +
                      "' in belief '" + belief.label +
                      "' has " + std::to_string(prior.size()) +
                      " components; use calibrate_gmm");
  }
  return prior.components()[0].component;
}

void require_pairs(std::span<const DiscriminativePair> pairs) {
  if (pairs.empty()) throw DomainError("no discriminative pairs given");
  for (const auto& p : pairs) {
    if (p.secret_i == p.secret_j) {
      throw DomainError("discriminative pair must contain distinct secrets");
    }
  }
}

// Shared structure check for the translation rule on mixtures: same size,
// same weights, same sigmas componentwise (ingestion-level tolerance).
bool translation_structure(const Gmm1D& a, const Gmm1D& b) {
  if (a.size() != b.size()) return false;
  for (int m = 0; m < a.size(); ++m) {
    const auto& ca = a.components()[m];
    const auto& cb = b.components()[m];
    if (std::abs(ca.weight - cb.weight) > 1e-9) return false;
    if (std::abs(ca.component.sigma - cb.component.sigma) > 1e-9) return false;
  }
  return true;
}

CalibrationResult finalize(CalibrationResult result) {
  result.b = result.maximand / result.epsilon;
  return result;
}

}  // namespace

CalibrationResult calibrate_gaussian(std::span<const PriorBelief> beliefs,
                                     std::span<const DiscriminativePair> pairs,
                                     const PrivacyBudget& budget) {
  budget.validate();
  require_pairs(pairs);
  if (beliefs.empty()) throw DomainError("no prior beliefs given");

  bool all_translation = true;
  for (const auto& belief : beliefs) {
    for (const auto& pair : pairs) {
      const Gaussian1D& gi = single_component(belief, pair.secret_i);
      const Gaussian1D& gj = single_component(belief, pair.secret_j);
      if (gi.sigma != gj.sigma) all_translation = false;
    }
  }
  if (budget.delta == 0.0 && !all_translation) {
    throw DomainError(
        "calibrate_gaussian: delta = 0 requires equal sigmas in every pair "
        "(tau*(delta) diverges as delta -> 0)");
  }

  // When every pair is a pure shift the translation rule applies and is the
  // tighter statement (no tau term, delta achieved is 0).
  const double tau =
      all_translation ? 0.0 : tau_star(budget.delta, budget.tau_method);

  CalibrationResult result;
  result.epsilon = budget.epsilon;
  result.delta = all_translation ? 0.0 : budget.delta;
  result.tau_method = budget.tau_method;
  result.tau = tau;
  result.rule = all_translation ? CalibrationRule::Translation
                                : CalibrationRule::Gaussian;
  result.maximand = -1.0;
  for (const auto& belief : beliefs) {
    for (const auto& pair : pairs) {
      const Gaussian1D& gi = single_component(belief, pair.secret_i);
      const Gaussian1D& gj = single_component(belief, pair.secret_j);
      PairBreakdown term;
      term.adversary = belief.label;
      term.pair = pair;
      term.mean_term = std::abs(gi.mu - gj.mu);
      term.sigma_term = std::abs(gi.sigma - gj.sigma);
      term.maximand = term.mean_term + tau * term.sigma_term;
      if (term.maximand > result.maximand) {
        result.maximand = term.maximand;
        result.argmax_adversary = belief.label;
        result.argmax_pair = pair;
      }
      result.breakdown.push_back(std::move(term));
    }
  }
  return finalize(std::move(result));
}

CalibrationResult calibrate_translation(std::span<const PriorBelief> beliefs,
                                        std::span<const DiscriminativePair> pairs,
                                        double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw DomainError("calibrate_translation: epsilon must be > 0");
  }
  require_pairs(pairs);
  if (beliefs.empty()) throw DomainError("no prior beliefs given");

  CalibrationResult result;
  result.epsilon = epsilon;
  result.delta = 0.0;
  result.tau = 0.0;
  result.rule = CalibrationRule::Translation;
  result.maximand = -1.0;
  for (const auto& belief : beliefs) {
    for (const auto& pair : pairs) {
      const Gmm1D& pi = resolve_prior(belief, pair.secret_i);
      const Gmm1D& pj = resolve_prior(belief, pair.secret_j);
      if (!translation_structure(pi, pj)) {
        throw DataError(
            "calibrate_translation: priors for pair ('" + pair.secret_i +
            "', '" + pair.secret_j +
            "') are not shifts of one another; use the Gaussian or mixture "
            "rule");
      }
      PairBreakdown term;
      term.adversary = belief.label;
      term.pair = pair;
      for (int m = 0; m < pi.size(); ++m) {
        term.mean_term += pi.components()[m].weight *
                          std::abs(pi.components()[m].component.mu -
                                   pj.components()[m].component.mu);
      }
      term.maximand = term.mean_term;
      if (term.maximand > result.maximand) {
        result.maximand = term.maximand;
        result.argmax_adversary = belief.label;
        result.argmax_pair = pair;
      }
      result.breakdown.push_back(std::move(term));
    }
  }
  return finalize(std::move(result));
}

CalibrationResult calibrate_gmm(std::span<const PriorBelief> beliefs,
                                std::span<const DiscriminativePair> pairs,
                                const PrivacyBudget& budget) {
  budget.validate();
  require_pairs(pairs);
  if (beliefs.empty()) throw DomainError("no prior beliefs given");
  if (budget.delta == 0.0) {
    throw DomainError(
        "calibrate_gmm: delta must be > 0 (use calibrate_translation for "
        "shared-structure mixtures)");
  }
  const double tau = tau_star(budget.delta, budget.tau_method);

  CalibrationResult result;
  result.epsilon = budget.epsilon;
  result.delta = budget.delta;
  result.tau_method = budget.tau_method;
  result.tau = tau;
  result.rule = CalibrationRule::GaussianMixture;
  result.maximand = -1.0;
  for (const auto& belief : beliefs) {
    for (const auto& pair : pairs) {
      const Gmm1D& pi = resolve_prior(belief, pair.secret_i);
      const Gmm1D& pj = resolve_prior(belief, pair.secret_j);
      TransportPlan plan = solve_transport(pi, pj);
      PairBreakdown term;
      term.adversary = belief.label;
      term.pair = pair;
      double maximand = 0.0;
      for (const auto& cell : plan_cost_terms(plan, pi, pj)) {
        maximand += cell.weight * (cell.abs_dmu + tau * cell.abs_dsigma);
        term.mean_term += cell.weight * cell.abs_dmu;
        term.sigma_term += cell.weight * cell.abs_dsigma;
      }
      term.maximand = maximand;
      if (term.maximand > result.maximand) {
        result.maximand = term.maximand;
        result.argmax_adversary = belief.label;
        result.argmax_pair = pair;
        result.argmax_plan = std::move(plan);
      }
      result.breakdown.push_back(std::move(term));
    }
  }
  return finalize(std::move(result));
}

CalibrationResult calibrate_sum_presence(const UserPopulation& population,
                                         const PrivacyBudget& budget) {
  budget.validate();
  if (population.users.empty()) {
    throw DataError("calibrate_sum_presence: empty population");
  }
  if (budget.delta == 0.0) {
    throw DomainError("calibrate_sum_presence: delta must be > 0");
  }
  for (const auto& user : population.users) {
    if (!std::isfinite(user.mu) || !std::isfinite(user.sigma) ||
        user.sigma < 0.0) {
      throw DataError("calibrate_sum_presence: bad user parameters for '" +
                      user.id + "'");
    }
  }
  const double tau = tau_star(budget.delta, budget.tau_method);

  double total_var = 0.0;
  for (const auto& user : population.users) {
    total_var += user.sigma * user.sigma;
  }

  CalibrationResult result;
  result.epsilon = budget.epsilon;
  result.delta = budget.delta;
  result.tau_method = budget.tau_method;
  result.tau = tau;
  result.rule = CalibrationRule::SumPresence;
  result.maximand = -1.0;
  const double sqrt_total = std::sqrt(total_var);
  for (const auto& user : population.users) {
    const double rest = std::max(total_var - user.sigma * user.sigma, 0.0);
    const double dsigma = sqrt_total - std::sqrt(rest);
    PairBreakdown term;
    term.adversary = "population";
    term.pair = DiscriminativePair{"present:" + user.id, "absent:" + user.id};
    term.mean_term = std::abs(user.mu);
    term.sigma_term = dsigma;
    term.maximand = term.mean_term + tau * dsigma;
    if (term.maximand > result.maximand) {
      result.maximand = term.maximand;
      result.argmax_adversary = term.adversary;
      result.argmax_pair = term.pair;
    }
    result.breakdown.push_back(std::move(term));
  }
  return finalize(std::move(result));
}

CalibrationResult calibrate_sum_value(double a, double a_prime,
                                      double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw DomainError("calibrate_sum_value: epsilon must be > 0");
  }
  if (!std::isfinite(a) || !std::isfinite(a_prime)) {
    throw DomainError("calibrate_sum_value: values must be finite");
  }
  CalibrationResult result;
  result.epsilon = epsilon;
  result.delta = 0.0;
  result.tau = 0.0;
  result.rule = CalibrationRule::SumValue;
  PairBreakdown term;
  term.adversary = "population";
  term.pair = DiscriminativePair{"value:" + std::to_string(a),
                                 "value:" + std::to_string(a_prime)};
  term.mean_term = std::abs(a - a_prime);
  term.maximand = term.mean_term;
  result.maximand = term.maximand;
  result.argmax_adversary = term.adversary;
  result.argmax_pair = term.pair;
  result.breakdown.push_back(std::move(term));
  return finalize(std::move(result));
}

std::vector<std::pair<int, double>> sum_bound_curve(double mu, double sigma,
                                                    const PrivacyBudget& budget,
                                                    int k_max) {
  budget.validate();
  if (budget.delta == 0.0) {
    throw DomainError("sum_bound_curve: delta must be > 0");
  }
  if (k_max < 1) throw DomainError("sum_bound_curve: k_max must be >= 1");
  if (sigma < 0.0) throw DomainError("sum_bound_curve: sigma must be >= 0");
  const double tau = tau_star(budget.delta, budget.tau_method);
  std::vector<std::pair<int, double>> curve;
  curve.reserve(k_max);
  for (int k = 1; k <= k_max; ++k) {
    // sqrt(K) - sqrt(K-1) in its cancellation-free form.
    const double gap = 1.0 / (std::sqrt(static_cast<double>(k)) +
                              std::sqrt(static_cast<double>(k - 1)));
    curve.emplace_back(k, (std::abs(mu) + gap * sigma * tau) / budget.epsilon);
  }
  return curve;
}

}  // namespace puffercal
