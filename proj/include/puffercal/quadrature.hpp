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

#ifndef PUFFERCAL_QUADRATURE_HPP
#define PUFFERCAL_QUADRATURE_HPP

#include <functional>
#include <span>

namespace puffercal {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int panels = 0;        // panels in the final partition
  int evaluations = 0;   // integrand evaluations
};

// Adaptive Gauss-Kronrod (G7,K15) integration of f over [lo, hi].
//
// `breakpoints` seeds the initial partition (values outside [lo, hi] are
// ignored); useful for isolating density modes or kinks. Panels are then
// bisected worst-error-first until the summed error estimate drops below
// abs_tol or the panel budget is exhausted. Never throws on its own: the
// caller decides whether the returned error_estimate is acceptable.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double lo, double hi, double abs_tol,
                                    std::span<const double> breakpoints = {},
                                    int max_panels = 4000);

}  // namespace puffercal

#endif  // PUFFERCAL_QUADRATURE_HPP
