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

#include "puffercal/gmm.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "puffercal/errors.hpp"

namespace puffercal {

Gmm1D::Gmm1D(std::vector<GmmComponent> components)
    : components_(std::move(components)) {
  if (components_.empty()) {
    throw DomainError("Gmm1D: at least one component required");
  }
  double sum = 0.0;
  for (const auto& c : components_) {
    if (!std::isfinite(c.weight) || c.weight < 0.0) {
      throw DomainError("Gmm1D: weights must be finite and >= 0");
    }
    sum += c.weight;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw DomainError("Gmm1D: weights must sum to 1 (got " +
                      std::to_string(sum) + ")");
  }
}

Gmm1D Gmm1D::single(const Gaussian1D& g) {
  return Gmm1D({GmmComponent{1.0, g}});
}

double Gmm1D::max_sigma() const {
  double s = 0.0;
  for (const auto& c : components_) s = std::max(s, c.component.sigma);
  return s;
}

double Gmm1D::min_mu() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& c : components_) m = std::min(m, c.component.mu);
  return m;
}

double Gmm1D::max_mu() const {
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& c : components_) m = std::max(m, c.component.mu);
  return m;
}

double gmm_pdf(const Gmm1D& model, double x) {
  if (model.empty()) throw DomainError("gmm_pdf: empty model");
  double density = 0.0;
  for (const auto& c : model.components()) {
    if (c.component.sigma <= 0.0) {
      throw DomainError(
          "gmm_pdf: point-mass component has no density (sigma = 0 is "
          "calibration-only)");
    }
    density += c.weight * gaussian_pdf(c.component, x);
  }
  return density;
}

namespace {

using Eigen::ArrayXd;
using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kLogTwoPi = 1.8378770664093454836;

// Uniform draw in [0, 1) with the full 53-bit mantissa, independent of the
// standard library's distribution implementations.
double canonical(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct EmRun {
  VectorXd weight, mu, sigma;
  double loglik = -std::numeric_limits<double>::infinity();
  std::vector<double> trace;
  bool degenerate = false;
};

// k-means++ seeding on the (sorted) sample vector.
std::vector<double> kmeanspp_centers(const VectorXd& x, int k,
                                     std::mt19937_64& rng) {
  const Index n = x.size();
  std::vector<double> centers;
  centers.reserve(k);
  centers.push_back(x[static_cast<Index>(canonical(rng) * n)]);
  ArrayXd d2 = (x.array() - centers[0]).square();
  for (int c = 1; c < k; ++c) {
    const double total = d2.sum();
    if (total <= 0.0) {
      centers.push_back(centers.back());
      continue;
    }
    double u = canonical(rng) * total;
    Index pick = n - 1;
    for (Index i = 0; i < n; ++i) {
      u -= d2[i];
      if (u <= 0.0) {
        pick = i;
        break;
      }
    }
    centers.push_back(x[pick]);
    d2 = d2.min((x.array() - centers.back()).square());
  }
  std::sort(centers.begin(), centers.end());
  return centers;
}

EmRun run_em(const VectorXd& x, int k, double sigma_floor,
             std::mt19937_64& rng) {
  const Index n = x.size();
  EmRun run;
  run.weight = VectorXd::Constant(k, 1.0 / k);
  run.mu = VectorXd::Zero(k);
  run.sigma = VectorXd::Zero(k);

  const double overall_mu = x.mean();
  const double overall_sd =
      std::sqrt((x.array() - overall_mu).square().sum() / n);

  // Hard-assign to the k-means++ centers for the initial parameters.
  const std::vector<double> centers = kmeanspp_centers(x, k, rng);
  VectorXd count = VectorXd::Zero(k);
  VectorXd sum = VectorXd::Zero(k);
  VectorXd sumsq = VectorXd::Zero(k);
  for (Index i = 0; i < n; ++i) {
    int best = 0;
    double bestd = std::abs(x[i] - centers[0]);
    for (int m = 1; m < k; ++m) {
      const double d = std::abs(x[i] - centers[m]);
      if (d < bestd) {
        bestd = d;
        best = m;
      }
    }
    count[best] += 1.0;
    sum[best] += x[i];
    sumsq[best] += x[i] * x[i];
  }
  for (int m = 0; m < k; ++m) {
    if (count[m] > 0.0) {
      run.weight[m] = count[m] / static_cast<double>(n);
      run.mu[m] = sum[m] / count[m];
      const double var = sumsq[m] / count[m] - run.mu[m] * run.mu[m];
      run.sigma[m] = std::sqrt(std::max(var, 0.0));
    } else {
      run.weight[m] = 1.0 / n;
      run.mu[m] = centers[m];
      run.sigma[m] = overall_sd;
    }
  }
  run.weight /= run.weight.sum();
  run.sigma = run.sigma.cwiseMax(sigma_floor);

  MatrixXd logr(n, k);
  double prev_ll = -std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < 500; ++iter) {
    // E-step in log space.
    for (int m = 0; m < k; ++m) {
      const double s = run.sigma[m];
      const double logw = std::log(run.weight[m]);
      logr.col(m) = (logw - std::log(s) - 0.5 * kLogTwoPi) -
                    0.5 * ((x.array() - run.mu[m]) / s).square();
    }
    const VectorXd rowmax = logr.rowwise().maxCoeff();
    const VectorXd lse =
        rowmax.array() +
        (logr.colwise() - rowmax).array().exp().rowwise().sum().log();
    const double ll = lse.sum();
    run.trace.push_back(ll);

    MatrixXd resp = (logr.colwise() - lse).array().exp();

    // M-step.
    const VectorXd nm = resp.colwise().sum();
    for (int m = 0; m < k; ++m) {
      if (nm[m] <= 0.0) {
        run.degenerate = true;
        continue;
      }
      run.weight[m] = nm[m] / static_cast<double>(n);
      run.mu[m] = resp.col(m).dot(x) / nm[m];
      const double var =
          (resp.col(m).array() * (x.array() - run.mu[m]).square()).sum() /
          nm[m];
      run.sigma[m] = std::max(std::sqrt(std::max(var, 0.0)), sigma_floor);
    }
    run.weight /= run.weight.sum();

    if (std::abs(ll - prev_ll) <= 1e-8 * std::max(1.0, std::abs(ll))) {
      break;
    }
    prev_ll = ll;
  }
  run.loglik = run.trace.empty()
                   ? -std::numeric_limits<double>::infinity()
                   : run.trace.back();
  run.degenerate = (run.sigma.array() <= sigma_floor).all();
  return run;
}

}  // namespace

Gmm1D fit_em(std::span<const double> samples, int k, std::uint64_t seed,
             int restarts, std::vector<double>* loglik_trace) {
  if (k < 1) throw DomainError("fit_em: k must be >= 1");
  if (restarts < 1) throw DomainError("fit_em: restarts must be >= 1");
  if (static_cast<int>(samples.size()) < 2 * k) {
    throw DataError("fit_em: need at least 2k samples, got " +
                    std::to_string(samples.size()) + " for k = " +
                    std::to_string(k));
  }
  for (double v : samples) {
    if (!std::isfinite(v)) throw DataError("fit_em: non-finite sample");
  }

  // Sorting makes the whole pipeline invariant to the sample order.
  VectorXd x(static_cast<Index>(samples.size()));
  std::copy(samples.begin(), samples.end(), x.data());
  std::sort(x.data(), x.data() + x.size());

  const double range = x[x.size() - 1] - x[0];
  const double sigma_floor = 1e-6 * range;

  if (range == 0.0) {
    if (k == 1) {
      if (loglik_trace) loglik_trace->clear();
      return Gmm1D({GmmComponent{1.0, Gaussian1D(x[0], sigma_floor)}});
    }
    throw DataError("fit_em: all samples identical; cannot fit k > 1");
  }

  std::mt19937_64 rng(seed);
  EmRun best;
  bool have_best = false;
  for (int r = 0; r < restarts; ++r) {
    EmRun run = run_em(x, k, sigma_floor, rng);
    if (run.degenerate) continue;
    if (!have_best || run.loglik > best.loglik) {
      best = std::move(run);
      have_best = true;
    }
  }
  if (!have_best) {
    throw DataError("fit_em: every restart collapsed to the variance floor");
  }

  std::vector<GmmComponent> comps(k);
  for (int m = 0; m < k; ++m) {
    comps[m] = GmmComponent{best.weight[m],
                            Gaussian1D(best.mu[m], best.sigma[m])};
  }
  std::sort(comps.begin(), comps.end(),
            [](const GmmComponent& a, const GmmComponent& b) {
              if (a.component.mu != b.component.mu) {
                return a.component.mu < b.component.mu;
              }
              return a.component.sigma < b.component.sigma;
            });
  double wsum = 0.0;
  for (const auto& c : comps) wsum += c.weight;
  for (auto& c : comps) c.weight /= wsum;
  if (loglik_trace) *loglik_trace = best.trace;
  return Gmm1D(std::move(comps));
}

}  // namespace puffercal
