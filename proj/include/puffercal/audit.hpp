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

#ifndef PUFFERCAL_AUDIT_HPP
#define PUFFERCAL_AUDIT_HPP

#include <limits>
#include <span>
#include <string>
#include <vector>

#include "puffercal/gmm.hpp"
#include "puffercal/mechanism.hpp"

namespace puffercal {

enum class AuditMethod {
  AnalyticQuadrature,
  EmpiricalHistogram,
};

const char* audit_method_name(AuditMethod method);

// Achieved indistinguishability slack of a mechanism at privacy level
// epsilon: delta_hat = integral of [p_i(y) - e^eps p_j(y)]_+ dy. Both
// orientations are always reported, because the defining inequality
// quantifies over ordered pairs.
struct AuditReport {
  double epsilon = 0.0;
  double delta_target = std::numeric_limits<double>::quiet_NaN();
  double delta_achieved_ij = 0.0;  // i against j
  double delta_achieved_ji = 0.0;  // j against i
  AuditMethod method = AuditMethod::AnalyticQuadrature;
  double domain_lo = 0.0;
  double domain_hi = 0.0;
  double error_estimate = 0.0;
};

// Quadrature audit of the exact noised densities. The integration interval
// [min mu - 12 sigma_max - 40 b, max mu + 12 sigma_max + 40 b] covers all but
// < 1e-10 of both laws; the initial partition is split at the component
// means. Throws NumericError when the quadrature error estimate exceeds 1e-6.
AuditReport audit_analytic(
    const Gmm1D& prior_i, const Gmm1D& prior_j, const LaplaceNoise& noise,
    double epsilon,
    double delta_target = std::numeric_limits<double>::quiet_NaN());

// Histogram binning specification for the empirical audit. bins = 0 selects
// the Freedman-Diaconis width on the pooled sample.
struct BinningSpec {
  int bins = 0;
};

// Histogram estimate of delta_hat from two samples:
//   sum over bins of [P_i(bin) - e^eps P_j(bin)]_+,
// with a Wilson-score-based error_estimate. An estimate, not a certificate.
// Throws DataError when either sample is empty.
AuditReport audit_empirical(
    std::span<const double> samples_i, std::span<const double> samples_j,
    double epsilon, const BinningSpec& binning = {},
    double delta_target = std::numeric_limits<double>::quiet_NaN());

// Shared-edge probability histogram of two samples, exportable as CSV
// (bin_left, bin_right, p_i, p_j) for external plotting.
struct PairedHistogram {
  std::vector<double> edges;  // size bins + 1
  std::vector<double> p_i;    // probability mass per bin, sample i
  std::vector<double> p_j;
};

PairedHistogram paired_histogram(std::span<const double> samples_i,
                                 std::span<const double> samples_j,
                                 const BinningSpec& binning = {});

std::string histogram_to_csv(const PairedHistogram& hist);

}  // namespace puffercal

#endif  // PUFFERCAL_AUDIT_HPP
