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

#ifndef PUFFERCAL_TRANSPORT_HPP
#define PUFFERCAL_TRANSPORT_HPP

#include <Eigen/Dense>
#include <vector>

#include "puffercal/gmm.hpp"

namespace puffercal {

// Coupling of two mixtures' component weights. Row sums equal the source
// weights and column sums the destination weights, each within 1e-9; cost is
// the plan's value under the squared-W2 component cost matrix.
struct TransportPlan {
  Eigen::MatrixXd weights;        // D_src x D_dst, entries >= 0
  Eigen::VectorXd row_marginals;  // source mixture weights
  Eigen::VectorXd col_marginals;  // destination mixture weights
  double cost = 0.0;
};

// Exact minimizer of  sum_{ml} w_ml W2^2(src_m, dst_l)  over the
// transportation polytope, via the transportation simplex (northwest-corner
// start, MODI pivoting). Instances here are tiny (components of fitted
// mixtures), so exactness is preferred over a general LP. The returned plan
// is a basic optimum: at most D_src + D_dst - 1 nonzero entries.
TransportPlan solve_transport(const Gmm1D& src, const Gmm1D& dst);

// One summand of the mixture calibration bound, for a cell with w_ml > 0.
struct PlanCostTerm {
  int m = 0;
  int l = 0;
  double weight = 0.0;
  double abs_dmu = 0.0;
  double abs_dsigma = 0.0;
};

// The per-pair quantities the mixture bound sums; only cells with positive
// weight are emitted. Throws DomainError when the plan's marginals do not
// match the models.
std::vector<PlanCostTerm> plan_cost_terms(const TransportPlan& plan,
                                          const Gmm1D& src, const Gmm1D& dst);

}  // namespace puffercal

#endif  // PUFFERCAL_TRANSPORT_HPP
