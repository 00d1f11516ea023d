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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "puffercal/calibrate.hpp"
#include "puffercal/errors.hpp"

using namespace puffercal;

namespace {

PriorBelief gaussian_belief(const std::string& label, double mu_i,
                            double sigma_i, double mu_j, double sigma_j) {
  PriorBelief belief;
  belief.label = label;
  belief.priors["si"] = Gmm1D::single(Gaussian1D(mu_i, sigma_i));
  belief.priors["sj"] = Gmm1D::single(Gaussian1D(mu_j, sigma_j));
  return belief;
}

const std::vector<DiscriminativePair> kPair = {{"si", "sj"}};

}  // namespace

TEST_CASE("calibrate_gaussian on the reference pair") {
  const auto beliefs = std::vector<PriorBelief>{
      gaussian_belief("rho", 10.0, 2.0, 12.0, 3.0)};
  const PrivacyBudget budget{1.0, 0.3, TauMethod::LambertFixedPoint};
  const CalibrationResult r = calibrate_gaussian(beliefs, kPair, budget);
  const double tau = tau_star(0.3, TauMethod::LambertFixedPoint);
  CHECK(r.b == doctest::Approx(2.0 + tau).epsilon(1e-12));
  CHECK(r.rule == CalibrationRule::Gaussian);
  CHECK(r.argmax_adversary == "rho");
  CHECK(r.argmax_pair.secret_i == "si");
  CHECK(r.b * r.epsilon == doctest::Approx(r.maximand).epsilon(1e-12));
  REQUIRE(r.breakdown.size() == 1);
  CHECK(r.breakdown[0].mean_term == doctest::Approx(2.0));
  CHECK(r.breakdown[0].sigma_term == doctest::Approx(1.0));
}

TEST_CASE("calibrate_gaussian point masses reduce to l1 sensitivity") {
  const auto beliefs =
      std::vector<PriorBelief>{gaussian_belief("rho", 0.0, 0.0, 2.0, 0.0)};
  const PrivacyBudget budget{1.0, 0.0, TauMethod::LambertFixedPoint};
  const CalibrationResult r = calibrate_gaussian(beliefs, kPair, budget);
  CHECK(r.b == 2.0);
  CHECK(r.rule == CalibrationRule::Translation);
  CHECK(r.delta == 0.0);

  // Exactly equal to the translation rule on the same means.
  const CalibrationResult t = calibrate_translation(beliefs, kPair, 1.0);
  CHECK(r.b == t.b);
}

TEST_CASE("calibrate_gaussian identical priors give zero") {
  const auto beliefs =
      std::vector<PriorBelief>{gaussian_belief("rho", 4.0, 1.5, 4.0, 1.5)};
  const PrivacyBudget budget{2.0, 0.3, TauMethod::LambertFixedPoint};
  CHECK(calibrate_gaussian(beliefs, kPair, budget).b == 0.0);
}

TEST_CASE("calibrate_gaussian input validation") {
  const auto beliefs = std::vector<PriorBelief>{
      gaussian_belief("rho", 10.0, 2.0, 12.0, 3.0)};
  CHECK_THROWS_AS(
      calibrate_gaussian(beliefs, kPair,
                         PrivacyBudget{1.0, 0.0, TauMethod::LambertFixedPoint}),
      DomainError);  // delta 0 with unequal sigmas
  CHECK_THROWS_AS(
      calibrate_gaussian(beliefs, kPair,
                         PrivacyBudget{-1.0, 0.3, TauMethod::LambertFixedPoint}),
      DomainError);
  const std::vector<DiscriminativePair> missing = {{"si", "nope"}};
  CHECK_THROWS_AS(
      calibrate_gaussian(beliefs, missing,
                         PrivacyBudget{1.0, 0.3, TauMethod::LambertFixedPoint}),
      DataError);
  // Multi-component prior routed to the wrong rule.
  PriorBelief mixture_belief;
  mixture_belief.label = "rho";
  mixture_belief.priors["si"] =
      Gmm1D({GmmComponent{0.5, Gaussian1D(0, 1)},
             GmmComponent{0.5, Gaussian1D(2, 1)}});
  mixture_belief.priors["sj"] = Gmm1D::single(Gaussian1D(0, 1));
  CHECK_THROWS_AS(
      calibrate_gaussian(std::vector<PriorBelief>{mixture_belief}, kPair,
                         PrivacyBudget{1.0, 0.3, TauMethod::LambertFixedPoint}),
      DomainError);
}

TEST_CASE("calibrate_translation reference cases") {
  const auto beliefs =
      std::vector<PriorBelief>{gaussian_belief("rho", 0.0, 1.0, 5.0, 1.0)};
  const CalibrationResult r = calibrate_translation(beliefs, kPair, 2.0);
  CHECK(r.b == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(r.delta == 0.0);

  // Shared-structure mixture: b = sum alpha_m |dmu_m| / eps.
  PriorBelief mix;
  mix.label = "rho";
  mix.priors["si"] = Gmm1D({GmmComponent{0.3, Gaussian1D(0.0, 1.0)},
                            GmmComponent{0.7, Gaussian1D(10.0, 2.0)}});
  mix.priors["sj"] = Gmm1D({GmmComponent{0.3, Gaussian1D(1.0, 1.0)},
                            GmmComponent{0.7, Gaussian1D(13.0, 2.0)}});
  const CalibrationResult rm = calibrate_translation(
      std::vector<PriorBelief>{mix}, kPair, 1.0);
  CHECK(rm.b == doctest::Approx(0.3 * 1.0 + 0.7 * 3.0).epsilon(1e-12));

  // Equal means everywhere: zero scale.
  const auto same =
      std::vector<PriorBelief>{gaussian_belief("rho", 3.0, 2.0, 3.0, 2.0)};
  CHECK(calibrate_translation(same, kPair, 1.0).b == 0.0);
}

TEST_CASE("calibrate_translation rejects non-translation structure") {
  const auto beliefs =
      std::vector<PriorBelief>{gaussian_belief("rho", 0.0, 1.0, 5.0, 2.0)};
  CHECK_THROWS_AS(calibrate_translation(beliefs, kPair, 1.0), DataError);
}

TEST_CASE("calibrate_gmm reference cases") {
  PriorBelief belief;
  belief.label = "rho";
  belief.priors["si"] = Gmm1D({GmmComponent{0.5, Gaussian1D(0.0, 1.0)},
                               GmmComponent{0.5, Gaussian1D(10.0, 1.0)}});
  belief.priors["sj"] = Gmm1D({GmmComponent{0.5, Gaussian1D(1.0, 1.0)},
                               GmmComponent{0.5, Gaussian1D(11.0, 1.0)}});
  const PrivacyBudget budget{1.0, 0.3, TauMethod::LambertFixedPoint};
  const CalibrationResult r = calibrate_gmm(
      std::vector<PriorBelief>{belief}, kPair, budget);
  CHECK(r.b == doctest::Approx(1.0).epsilon(1e-12));
  REQUIRE(r.argmax_plan.has_value());
  CHECK(r.argmax_plan->cost == doctest::Approx(1.0).epsilon(1e-12));

  // Same mixture on both secrets: zero.
  PriorBelief same;
  same.label = "rho";
  same.priors["si"] = belief.priors["si"];
  same.priors["sj"] = belief.priors["si"];
  CHECK(calibrate_gmm(std::vector<PriorBelief>{same}, kPair, budget).b == 0.0);
}

TEST_CASE("calibrate_gmm with single components is bit-equal to gaussian") {
  for (TauMethod method : {TauMethod::ExactQInverse,
                           TauMethod::LambertFixedPoint,
                           TauMethod::LambertClosedForm}) {
    const PrivacyBudget budget{0.7, 0.21, method};
    const auto beliefs = std::vector<PriorBelief>{
        gaussian_belief("rho", -3.25, 0.5, 4.75, 2.25)};
    const CalibrationResult gaussian =
        calibrate_gaussian(beliefs, kPair, budget);
    const CalibrationResult gmm = calibrate_gmm(beliefs, kPair, budget);
    CHECK(gmm.b == gaussian.b);  // bit-for-bit
    CHECK(gmm.maximand == gaussian.maximand);
  }
}

TEST_CASE("calibrate_gmm requires positive delta") {
  const auto beliefs =
      std::vector<PriorBelief>{gaussian_belief("rho", 0.0, 1.0, 5.0, 1.0)};
  CHECK_THROWS_AS(
      calibrate_gmm(beliefs, kPair,
                    PrivacyBudget{1.0, 0.0, TauMethod::LambertFixedPoint}),
      DomainError);
}

TEST_CASE("max over beliefs and pairs picks the argmax") {
  std::vector<PriorBelief> beliefs = {
      gaussian_belief("weak", 0.0, 1.0, 1.0, 1.0),
      gaussian_belief("strong", 0.0, 1.0, 6.0, 3.0)};
  const PrivacyBudget budget{1.0, 0.3, TauMethod::LambertFixedPoint};
  const CalibrationResult r = calibrate_gaussian(beliefs, kPair, budget);
  CHECK(r.argmax_adversary == "strong");
  CHECK(r.breakdown.size() == 2);
  const double tau = tau_star(0.3, TauMethod::LambertFixedPoint);
  CHECK(r.b == doctest::Approx(6.0 + 2.0 * tau).epsilon(1e-12));
}

TEST_CASE("calibrate_sum_presence reference points") {
  const PrivacyBudget budget{1.0, 0.3, TauMethod::LambertFixedPoint};
  const double tau = tau_star(0.3, TauMethod::LambertFixedPoint);

  UserPopulation one;
  one.users.push_back({"u1", 1.0, 1.0});
  const CalibrationResult r1 = calibrate_sum_presence(one, budget);
  CHECK(r1.b == doctest::Approx(1.0 + tau).epsilon(1e-12));
  CHECK(r1.rule == CalibrationRule::SumPresence);

  // Two identical users, sigma^2 = 4: dsigma = 2(sqrt 2 - 1).
  UserPopulation two;
  two.users.push_back({"u1", 1.0, 2.0});
  two.users.push_back({"u2", 1.0, 2.0});
  const CalibrationResult r2 = calibrate_sum_presence(two, budget);
  CHECK(r2.b ==
        doctest::Approx(1.0 + (std::sqrt(2.0) - 1.0) * 2.0 * tau).epsilon(1e-12));

  // Point-mass users with zero means need no noise.
  UserPopulation zeros;
  zeros.users.push_back({"u1", 0.0, 0.0});
  zeros.users.push_back({"u2", 0.0, 0.0});
  CHECK(calibrate_sum_presence(zeros, budget).b == 0.0);

  CHECK_THROWS_AS(calibrate_sum_presence(UserPopulation{}, budget), DataError);
}

TEST_CASE("calibrate_sum_presence argmax over heterogeneous users") {
  const PrivacyBudget budget{1.0, 0.3, TauMethod::LambertFixedPoint};
  UserPopulation pop;
  pop.users.push_back({"small", 0.5, 1.0});
  pop.users.push_back({"big", 4.0, 3.0});
  pop.users.push_back({"medium", 2.0, 2.0});
  const CalibrationResult r = calibrate_sum_presence(pop, budget);
  CHECK(r.argmax_pair.secret_i == "present:big");
  // Verify the formula by hand: S = 1 + 9 + 4 = 14.
  const double tau = tau_star(0.3, TauMethod::LambertFixedPoint);
  const double dsigma = std::sqrt(14.0) - std::sqrt(5.0);
  CHECK(r.b == doctest::Approx(4.0 + dsigma * tau).epsilon(1e-12));
}

TEST_CASE("calibrate_sum_value") {
  CHECK(calibrate_sum_value(0.0, 1.0, 1.0).b == doctest::Approx(1.0));
  CHECK(calibrate_sum_value(3.0, 3.0, 2.0).b == 0.0);
  CHECK(calibrate_sum_value(3.0, -2.0, 0.5).b == doctest::Approx(10.0));
  CHECK(calibrate_sum_value(0.0, 1.0, 1.0).delta == 0.0);
  CHECK_THROWS_AS(calibrate_sum_value(0.0, 1.0, 0.0), DomainError);
}

TEST_CASE("sum_bound_curve shape and limits") {
  const PrivacyBudget budget{1.0, 0.3, TauMethod::LambertFixedPoint};
  const double tau = tau_star(0.3, TauMethod::LambertFixedPoint);
  const auto curve = sum_bound_curve(1.0, 1.0, budget, 10000);
  REQUIRE(curve.size() == 10000);
  CHECK(curve[0].first == 1);
  CHECK(curve[0].second == doctest::Approx(1.0 + tau).epsilon(1e-12));
  for (std::size_t i = 1; i < curve.size(); ++i) {
    CHECK(curve[i].second < curve[i - 1].second);  // strictly decreasing
  }
  // Limit |mu|/eps: gap below 1e-2 sigma tau by K = 1e4.
  CHECK(curve.back().second - 1.0 <= 1e-2 * tau);

  // sigma = 0 collapses to a constant curve.
  const auto flat = sum_bound_curve(1.0, 0.0, budget, 5);
  for (const auto& [k, v] : flat) CHECK(v == 1.0);
}

TEST_CASE("monotonicity in epsilon and delta") {
  const auto beliefs = std::vector<PriorBelief>{
      gaussian_belief("rho", 10.0, 2.0, 12.0, 3.0)};
  double prev = std::numeric_limits<double>::infinity();
  for (double eps = 0.1; eps <= 10.0; eps += 0.5) {
    const CalibrationResult r = calibrate_gaussian(
        beliefs, kPair, PrivacyBudget{eps, 0.3, TauMethod::LambertFixedPoint});
    CHECK(r.b < prev);
    prev = r.b;
  }
  prev = std::numeric_limits<double>::infinity();
  for (double delta = 0.05; delta < 1.0; delta += 0.05) {
    const CalibrationResult r = calibrate_gaussian(
        beliefs, kPair, PrivacyBudget{1.0, delta, TauMethod::LambertFixedPoint});
    CHECK(r.b <= prev);
    prev = r.b;
  }
}
