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

#include "puffercal/specfun.hpp"

#include <cmath>
#include <limits>

#include "puffercal/errors.hpp"

namespace puffercal {
namespace {

using constants::kInvSqrtTwoPi;
using constants::kPi;
using constants::kSqrtTwo;
using constants::kSqrtTwoPi;

// Cody's CALERF coefficient tables.
constexpr double kErfA[5] = {3.16112374387056560e+00, 1.13864154151050156e+02,
                             3.77485237685302021e+02, 3.20937758913846947e+03,
                             1.85777706184603153e-01};
constexpr double kErfB[4] = {2.36012909523441209e+01, 2.44024637934444173e+02,
                             1.28261652607737228e+03, 2.84423683343917062e+03};
constexpr double kErfC[9] = {5.64188496988670089e-01, 8.88314979438837594e+00,
                             6.61191906371416295e+01, 2.98635138197400131e+02,
                             8.81952221241769090e+02, 1.71204761263407058e+03,
                             2.05107837782607147e+03, 1.23033935479799725e+03,
                             2.15311535474403846e-08};
constexpr double kErfD[8] = {1.57449261107098347e+01, 1.17693950891312499e+02,
                             5.37181101862009858e+02, 1.62138957456669019e+03,
                             3.29079923573345963e+03, 4.36261909014324716e+03,
                             3.43936767414372164e+03, 1.23033935480374942e+03};
constexpr double kErfP[6] = {3.05326634961232344e-01, 3.60344899949804439e-01,
                             1.25781726111229246e-01, 1.60837851487422766e-02,
                             6.58749161529837803e-04, 1.63153871373020978e-02};
constexpr double kErfQ[5] = {2.56852019228982242e+00, 1.87295284992346047e+00,
                             5.27905102951428412e-01, 6.05183413124413191e-02,
                             2.33520497626869185e-03};

constexpr double kInvSqrtPi = 5.6418958354775628695e-01;  // 1/sqrt(pi)

// erfc_scaled(x) for x >= 0.46875, i.e. exp(x^2) erfc(x).
double erfcx_upper(double x) {
  if (x <= 4.0) {
    double num = kErfC[8] * x;
    double den = x;
    for (int i = 0; i < 7; ++i) {
      num = (num + kErfC[i]) * x;
      den = (den + kErfD[i]) * x;
    }
    return (num + kErfC[7]) / (den + kErfD[7]);
  }
  const double y = 1.0 / (x * x);
  double num = kErfP[5] * y;
  double den = y;
  for (int i = 0; i < 4; ++i) {
    num = (num + kErfP[i]) * y;
    den = (den + kErfQ[i]) * y;
  }
  double r = y * (num + kErfP[4]) / (den + kErfQ[4]);
  return (kInvSqrtPi - r) / x;
}

// exp(-x^2) with the argument split to recover the bits lost when squaring,
// as in CALERF: x^2 = hi^2 + (x - hi)(x + hi) with hi = trunc(16 x)/16.
double exp_neg_xsq(double x) {
  const double hi = std::trunc(x * 16.0) / 16.0;
  const double del = (x - hi) * (x + hi);
  return std::exp(-hi * hi) * std::exp(-del);
}

double erf_small(double x) {
  // |x| <= 0.46875
  const double y = x * x;
  double num = kErfA[4] * y;
  double den = y;
  for (int i = 0; i < 3; ++i) {
    num = (num + kErfA[i]) * y;
    den = (den + kErfB[i]) * y;
  }
  return x * (num + kErfA[3]) / (den + kErfB[3]);
}

}  // namespace

double erfc(double x) {
  if (std::isnan(x)) return x;
  const double ax = std::abs(x);
  if (ax <= 0.46875) return 1.0 - erf_small(x);
  if (x < 0.0) return 2.0 - erfc(-x);
  if (x > 27.5) return 0.0;  // below the smallest subnormal
  return exp_neg_xsq(x) * erfcx_upper(x);  // underflows gradually past ~26.6
}

double erfc_scaled(double x) {
  if (std::isnan(x)) return x;
  if (x >= 0.46875) return erfcx_upper(x);
  if (x >= -0.46875) return std::exp(x * x) * (1.0 - erf_small(x));
  if (x < -26.6) return std::numeric_limits<double>::infinity();
  return 2.0 * std::exp(x * x) - erfcx_upper(-x);
}

double q_tail(double t) { return 0.5 * erfc(t / kSqrtTwo); }

namespace {

// Wichura's algorithm AS241 (PPND16): the normal deviate z with Phi(z) = p,
// accurate to ~1e-16 relative. Used as the initial estimate for q_inverse.
double norm_quantile(double p) {
  const double q = p - 0.5;
  if (std::abs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q *
           (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
                 6.7265770927008700853e+4) *
                    r +
                4.5921953931549871457e+4) *
                   r +
               1.3731693765509461125e+4) *
                  r +
              1.9715909503065514427e+3) *
                 r +
             1.3314166789178437745e+2) *
                r +
            3.3871328727963666080e+0) /
           (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
                 3.9307895800092710610e+4) *
                    r +
                2.1213794301586595867e+4) *
                   r +
               5.3941960214247511077e+3) *
                  r +
              6.8718700749205790830e+2) *
                 r +
             4.2313330701600911252e+1) *
                r +
            1.0);
  }
  double r = (q < 0.0) ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double z;
  if (r <= 5.0) {
    r -= 1.6;
    z = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
              2.41780725177450611770e-1) *
                 r +
             1.27045825245236838258e+0) *
                r +
            3.64784832476320460504e+0) *
               r +
           5.76949722146069140550e+0) *
              r +
          4.63033784615654529590e+0) *
             r +
         1.42343711074968357734e+0) /
        (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
              1.51986665636164571966e-2) *
                 r +
             1.48103976427480074590e-1) *
                r +
            6.89767334985100004550e-1) *
               r +
           1.67638483018380384940e+0) *
              r +
          2.05319162663775882187e+0) *
             r +
         1.0);
  } else {
    r -= 5.0;
    z = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
              1.24266094738807843860e-3) *
                 r +
             2.65321895265761230930e-2) *
                r +
            2.96560571828504891230e-1) *
               r +
           1.78482653991729133580e+0) *
              r +
          5.46378491116411436990e+0) *
             r +
         6.65790464350110377720e+0) /
        (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
              1.84631831751005468180e-5) *
                 r +
             7.86869131145613259100e-4) *
                r +
            1.48753612908506148525e-2) *
               r +
           1.36929880922735805310e-1) *
              r +
          5.99832206555887937690e-1) *
             r +
         1.0);
  }
  return (q < 0.0) ? -z : z;
}

double norm_pdf(double t) { return kInvSqrtTwoPi * std::exp(-0.5 * t * t); }

}  // namespace

double q_inverse(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("q_inverse: p must lie strictly in (0,1)");
  }
  // Q(t) = p  <=>  Phi(-t) = p.
  double t = -norm_quantile(p);

  // Bracketed Newton polish on the p-residual. AS241 already lands within a
  // few ulp; one or two corrections certify the round-trip tolerance.
  double lo = t - 1e-8 * (std::abs(t) + 1.0);
  double hi = t + 1e-8 * (std::abs(t) + 1.0);
  while (q_tail(lo) < p) lo -= (std::abs(t) + 1.0) * 1e-4;
  while (q_tail(hi) > p) hi += (std::abs(t) + 1.0) * 1e-4;
  for (int it = 0; it < 60; ++it) {
    const double resid = q_tail(t) - p;
    if (resid > 0.0) {
      lo = std::max(lo, t);
    } else if (resid < 0.0) {
      hi = std::min(hi, t);
    }
    if (std::abs(resid) <= 1e-15 * p) break;
    const double pdf = norm_pdf(t);
    double next = (pdf > 0.0) ? t + resid / pdf : t;
    if (!(next > lo && next < hi) || pdf == 0.0) {
      next = 0.5 * (lo + hi);  // bisection fallback
    }
    if (next == t) break;
    t = next;
  }
  return t;
}

namespace {

// One Fritsch update step for w e^w = x (Fritsch, Shafer & Crowley 1973).
double fritsch_step(double x, double w, double* err) {
  const double z = std::log(x / w) - w;
  const double w1 = w + 1.0;
  const double q = 2.0 * w1 * (w1 + (2.0 / 3.0) * z);
  const double e = z / w1 * (q - z) / (q - 2.0 * z);
  *err = std::abs(e);
  return w * (1.0 + e);
}

}  // namespace

double lambert_w0(double x) {
  if (std::isnan(x) || x < 0.0) {
    throw DomainError("lambert_w0: x must be >= 0");
  }
  if (x == 0.0) return 0.0;
  if (x <= 1e-16) return x;  // series: W(x) = x - x^2 + ..., tail below eps

  double w;
  if (x <= 2.718281828459045) {
    // (2,2) Pade seed in p = sqrt(2(ex+1)) (Corless et al. 1996, eq. 4.22).
    const double p = std::sqrt(2.0 * (2.718281828459045 * x + 1.0));
    w = ((0.2787037037037037 * p + 0.311111111111111) * p - 1.0) /
        ((0.0768518518518518 * p + 0.688888888888889) * p + 1.0);
    if (w <= 0.0) w = x / (1.0 + x);  // keep the seed in the domain of log(x/w)
  } else {
    // Asymptotic seed, first terms of Corless et al. eq. 4.19.
    w = std::log(x);
    const double l2 = std::log(w);
    const double l3 = l2 / w;
    w += -l2 + l3 + 0.5 * l3 * l3 - l3 / w + l3 / (w * w) -
         1.5 * l3 * l3 / w + l3 * l3 * l3 / 3.0;
  }
  double err = 1.0;
  for (int it = 0; it < 12 && err > 2e-16; ++it) {
    w = fritsch_step(x, w, &err);
  }
  return w;
}

double tau_star(double delta, TauMethod method) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw DomainError("tau_star: delta must lie strictly in (0,1)");
  }
  switch (method) {
    case TauMethod::ExactQInverse:
      return std::max(0.0, q_inverse(0.5 * delta));
    case TauMethod::LambertFixedPoint: {
      const double scale = 1.0 / (kSqrtTwoPi * delta);
      double tau = 1.0;
      for (int it = 0; it < 200; ++it) {
        const double next = std::sqrt(2.0 * lambert_w0(tau * scale));
        if (std::abs(next - tau) <= 1e-12) return next;
        tau = next;
      }
      throw NumericError("tau_star: fixed-point iteration did not converge");
    }
    case TauMethod::LambertClosedForm:
      return std::sqrt(lambert_w0(2.0 / (kPi * delta * delta)));
  }
  throw DomainError("tau_star: unknown method");
}

const char* tau_method_name(TauMethod method) {
  switch (method) {
    case TauMethod::ExactQInverse:
      return "exact-q-inverse";
    case TauMethod::LambertFixedPoint:
      return "lambert-fixed-point";
    case TauMethod::LambertClosedForm:
      return "lambert-closed-form";
  }
  return "unknown";
}

TauMethod parse_tau_method(const std::string& name) {
  if (name == "exact" || name == "exact-q-inverse") {
    return TauMethod::ExactQInverse;
  }
  if (name == "lambert-fp" || name == "lambert-fixed-point") {
    return TauMethod::LambertFixedPoint;
  }
  if (name == "lambert-cf" || name == "lambert-closed-form") {
    return TauMethod::LambertClosedForm;
  }
  throw DomainError("unknown tau method: " + name +
                    " (expected exact|lambert-fp|lambert-cf)");
}

}  // namespace puffercal
