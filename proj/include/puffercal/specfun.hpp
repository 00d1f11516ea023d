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

#ifndef PUFFERCAL_SPECFUN_HPP
#define PUFFERCAL_SPECFUN_HPP

#include <string>

namespace puffercal {

// How tau*(delta) -- the factor scaling |sigma_i - sigma_j| in every
// calibration bound -- is computed. ExactQInverse is the smallest of the
// three for every delta in (0,1); the two Lambert forms are upper bounds
// derived from the Gaussian tail inequality and agree with each other up to
// rounding (their defining equations are algebraically identical).
enum class TauMethod {
  ExactQInverse,      // Q^{-1}(delta/2)
  LambertFixedPoint,  // smallest tau >= 0 with tau^2 >= 2 W0(tau/(sqrt(2 pi) delta))
  LambertClosedForm,  // sqrt(W0(2/(pi delta^2)))
};

const char* tau_method_name(TauMethod method);

// Accepts both the short flag spellings (exact, lambert-fp, lambert-cf) and
// the long ones (exact-q-inverse, lambert-fixed-point, lambert-closed-form).
TauMethod parse_tau_method(const std::string& name);

// Complementary error function and its scaled variant
// erfc_scaled(x) = exp(x^2) erfc(x). Rational approximations after
// W. J. Cody, "Rational Chebyshev approximation for the error function",
// Math. Comp. 23 (1969); relative accuracy a few ulp over all branches.
// erfc_scaled overflows (returns +inf) for x below about -26.6.
double erfc(double x);
double erfc_scaled(double x);

// Gaussian tail probability Q(t) = Pr(Z > t) for standard normal Z.
// Strictly decreasing, q_tail(t) + q_tail(-t) = 1. Underflows to 0 for
// t beyond ~37.6 (the true value is below the smallest subnormal).
double q_tail(double t);

// Inverse of q_tail on (0,1). Wichura's AS241 initial estimate polished by
// bracketed Newton on q_tail; the p-residual of the result is at machine
// level wherever the normal pdf is representable. Throws DomainError for
// p outside (0,1).
double q_inverse(double p);

// Principal branch of the Lambert-W function on x >= 0: the w >= 0 with
// w e^w = x. Fritsch iteration from a branch-dependent seed; residual
// |w e^w - x| <= a few ulp of max(1, x). Throws DomainError for x < 0.
double lambert_w0(double x);

// Smallest tau >= 0 with Pr(Z > tau) <= delta/2, or one of its Lambert-W
// upper bounds; see TauMethod. Domain: 0 < delta < 1. Monotone nonincreasing
// in delta for each method. Throws DomainError outside the domain and
// NumericError if the fixed-point iteration fails to settle in 200 rounds.
double tau_star(double delta, TauMethod method);

namespace constants {
inline constexpr double kSqrtTwoPi = 2.506628274631000502415765284811;
inline constexpr double kInvSqrtTwoPi = 0.3989422804014326779399460599344;
inline constexpr double kSqrtTwo = 1.4142135623730950488016887242097;
inline constexpr double kPi = 3.1415926535897932384626433832795;
}  // namespace constants

}  // namespace puffercal

#endif  // PUFFERCAL_SPECFUN_HPP
