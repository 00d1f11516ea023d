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

#include "puffercal/audit.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <vector>

#include "puffercal/errors.hpp"
#include "puffercal/quadrature.hpp"

namespace puffercal {

const char* audit_method_name(AuditMethod method) {
  switch (method) {
    case AuditMethod::AnalyticQuadrature:
      return "analytic-quadrature";
    case AuditMethod::EmpiricalHistogram:
      return "empirical-histogram";
  }
  return "unknown";
}

namespace {

constexpr double kQuadTol = 1e-8;
constexpr double kQuadFailThreshold = 1e-6;

double positive_part_mass(const Gmm1D& hi, const Gmm1D& lo,
                          const LaplaceNoise& noise, double e_eps, double a,
                          double b, std::span<const double> breakpoints,
                          double* error_acc) {
  const auto integrand = [&](double y) {
    const double diff =
        noised_density(hi, noise, y) - e_eps * noised_density(lo, noise, y);
    return diff > 0.0 ? diff : 0.0;
  };
  const QuadratureResult r =
      integrate_adaptive(integrand, a, b, kQuadTol, breakpoints);
  *error_acc += r.error_estimate;
  return r.value;
}

}  // namespace

AuditReport audit_analytic(const Gmm1D& prior_i, const Gmm1D& prior_j,
                           const LaplaceNoise& noise, double epsilon,
                           double delta_target) {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw DomainError("audit_analytic: epsilon must be >= 0");
  }
  if (prior_i.empty() || prior_j.empty()) {
    throw DomainError("audit_analytic: empty prior");
  }

  const double sigma_max = std::max(prior_i.max_sigma(), prior_j.max_sigma());
  const double lo = std::min(prior_i.min_mu(), prior_j.min_mu()) -
                    12.0 * sigma_max - 40.0 * noise.b;
  const double hi = std::max(prior_i.max_mu(), prior_j.max_mu()) +
                    12.0 * sigma_max + 40.0 * noise.b;

  std::vector<double> breakpoints;
  for (const auto& c : prior_i.components()) breakpoints.push_back(c.component.mu);
  for (const auto& c : prior_j.components()) breakpoints.push_back(c.component.mu);

  AuditReport report;
  report.epsilon = epsilon;
  report.delta_target = delta_target;
  report.method = AuditMethod::AnalyticQuadrature;
  report.domain_lo = lo;
  report.domain_hi = hi;

  const double e_eps = std::exp(epsilon);
  double err = 0.0;
  report.delta_achieved_ij =
      positive_part_mass(prior_i, prior_j, noise, e_eps, lo, hi, breakpoints,
                         &err);
  report.delta_achieved_ji =
      positive_part_mass(prior_j, prior_i, noise, e_eps, lo, hi, breakpoints,
                         &err);
  report.error_estimate = err;
  if (err > kQuadFailThreshold) {
    throw NumericError(
        "audit_analytic: quadrature error estimate " + std::to_string(err) +
        " exceeds " + std::to_string(kQuadFailThreshold) +
        " (domain [" + std::to_string(lo) + ", " + std::to_string(hi) + "])");
  }
  return report;
}

namespace {

double quantile_sorted(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return 0.0;
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

// Wilson score half-width at 95% for a bin count k out of n.
double wilson_halfwidth(double k, double n) {
  constexpr double z = 1.959963984540054;
  const double phat = k / n;
  const double z2 = z * z;
  return z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) /
         (1.0 + z2 / n);
}

}  // namespace

PairedHistogram paired_histogram(std::span<const double> samples_i,
                                 std::span<const double> samples_j,
                                 const BinningSpec& binning) {
  if (samples_i.empty() || samples_j.empty()) {
    throw DataError("paired_histogram: empty sample set");
  }
  std::vector<double> pooled(samples_i.begin(), samples_i.end());
  pooled.insert(pooled.end(), samples_j.begin(), samples_j.end());
  std::sort(pooled.begin(), pooled.end());
  const double lo = pooled.front();
  const double hi = pooled.back();

  int bins = binning.bins;
  if (bins <= 0) {
    // Freedman-Diaconis on the pooled sample.
    const double iqr = quantile_sorted(pooled, 0.75) - quantile_sorted(pooled, 0.25);
    const double width =
        2.0 * iqr / std::cbrt(static_cast<double>(pooled.size()));
    if (width > 0.0 && hi > lo) {
      bins = static_cast<int>(std::ceil((hi - lo) / width));
    } else {
      bins = 1;
    }
    bins = std::clamp(bins, 1, 100000);
  }

  PairedHistogram hist;
  const double span = (hi > lo) ? (hi - lo) : 1.0;
  hist.edges.resize(bins + 1);
  for (int k = 0; k <= bins; ++k) {
    hist.edges[k] = lo + span * static_cast<double>(k) / bins;
  }
  hist.p_i.assign(bins, 0.0);
  hist.p_j.assign(bins, 0.0);
  const auto accumulate = [&](std::span<const double> samples,
                              std::vector<double>& mass) {
    const double inc = 1.0 / static_cast<double>(samples.size());
    for (double v : samples) {
      int k = static_cast<int>((v - lo) / span * bins);
      k = std::clamp(k, 0, bins - 1);
      mass[k] += inc;
    }
  };
  accumulate(samples_i, hist.p_i);
  accumulate(samples_j, hist.p_j);
  return hist;
}

std::string histogram_to_csv(const PairedHistogram& hist) {
  std::string out = "bin_left,bin_right,p_i,p_j\n";
  char buf[32];
  const auto append = [&](double v, char sep) {
    const auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    out.append(buf, p);
    out.push_back(sep);
  };
  for (std::size_t k = 0; k + 1 < hist.edges.size(); ++k) {
    append(hist.edges[k], ',');
    append(hist.edges[k + 1], ',');
    append(hist.p_i[k], ',');
    append(hist.p_j[k], '\n');
  }
  return out;
}

AuditReport audit_empirical(std::span<const double> samples_i,
                            std::span<const double> samples_j, double epsilon,
                            const BinningSpec& binning, double delta_target) {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw DomainError("audit_empirical: epsilon must be >= 0");
  }
  if (samples_i.empty() || samples_j.empty()) {
    throw DataError("audit_empirical: empty sample set");
  }
  const PairedHistogram hist = paired_histogram(samples_i, samples_j, binning);
  const double e_eps = std::exp(epsilon);
  const double ni = static_cast<double>(samples_i.size());
  const double nj = static_cast<double>(samples_j.size());

  AuditReport report;
  report.epsilon = epsilon;
  report.delta_target = delta_target;
  report.method = AuditMethod::EmpiricalHistogram;
  report.domain_lo = hist.edges.front();
  report.domain_hi = hist.edges.back();

  double err = 0.0;
  for (std::size_t k = 0; k < hist.p_i.size(); ++k) {
    const double d_ij = hist.p_i[k] - e_eps * hist.p_j[k];
    const double d_ji = hist.p_j[k] - e_eps * hist.p_i[k];
    if (d_ij > 0.0) report.delta_achieved_ij += d_ij;
    if (d_ji > 0.0) report.delta_achieved_ji += d_ji;
    if (d_ij > 0.0 || d_ji > 0.0) {
      const double hi_w = wilson_halfwidth(hist.p_i[k] * ni, ni);
      const double hj_w = wilson_halfwidth(hist.p_j[k] * nj, nj);
      err += hi_w + e_eps * hj_w;
    }
  }
  report.error_estimate = err;
  return report;
}

}  // namespace puffercal
