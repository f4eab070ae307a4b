// Copyright 2026 The superx Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SUPERX_SPECIAL_HPP_
#define SUPERX_SPECIAL_HPP_

#include <cmath>

#include "superx/scalar.hpp"

namespace superx {

template <typename Scalar>
Scalar frac(const Scalar& x) {
  using std::floor;
  return x - floor(x);
}

// Triangle wave of period 2 with range [-1/2, 1/2], equal to
// asin(sin(pi x)) / pi. Computed from the closed form so it is accurate to
// a few ulps even at the peaks, where the trigonometric route loses half
// the precision.
template <typename Scalar>
Scalar theta(const Scalar& x) {
  using std::abs;
  using Ops = ScalarOps<Scalar>;
  const Scalar half = Ops::half(x);
  Scalar r = 2 * frac((2 * x + 1) / 4);
  return half - abs(r - 1);
}

// The same function through the sine/arcsine pair, exactly as a
// {Sin, Arcsin} network computes it.
template <typename Scalar>
Scalar theta_trig(const Scalar& x) {
  using std::asin;
  using std::sin;
  using Ops = ScalarOps<Scalar>;
  const Scalar pi = Ops::pi(x);
  Scalar s = sin(pi * x);
  if (s > 1) s = Ops::from_long(1, x);
  if (s < -1) s = Ops::from_long(-1, x);
  return asin(s) / pi;
}

template <typename Scalar>
Scalar nu(const Scalar& x) {
  return x + theta(x);
}

// Bump of period 2: a tent on [0, 1] peaking at 1/2, zero on [1, 2].
template <typename Scalar>
Scalar psi(const Scalar& x) {
  const Scalar half = ScalarOps<Scalar>::half(x);
  return nu(Scalar(theta(x) - half)) + 1;
}

template <typename Scalar>
Scalar sigma3_left(const Scalar& x) {
  return -1 / x;
}

// Requires |x| <= 1.
template <typename Scalar>
Scalar sigma3_mid(const Scalar& x) {
  using std::asin;
  using std::sqrt;
  using Ops = ScalarOps<Scalar>;
  const Scalar pi = Ops::pi(x);
  Scalar one_minus = 1 - x * x;
  if (one_minus < 0) one_minus = Ops::from_long(0, x);
  return (x * asin(x) + sqrt(one_minus)) / pi + 3 * x / 2 + 2;
}

template <typename Scalar>
Scalar sigma3_right(const Scalar& x) {
  using std::sin;
  const Scalar pi = ScalarOps<Scalar>::pi(x);
  return 7 - 3 / x + sin(pi * x) / (pi * x * x);
}

// Bounded, strictly increasing, C^1 activation with limits 0 and 7.
template <typename Scalar>
Scalar sigma3(const Scalar& x) {
  if (x < -1) return sigma3_left(x);
  if (x > 1) return sigma3_right(x);
  return sigma3_mid(x);
}

template <typename Scalar>
Scalar sigma3_deriv_left(const Scalar& x) {
  return 1 / (x * x);
}

template <typename Scalar>
Scalar sigma3_deriv_mid(const Scalar& x) {
  using std::asin;
  const Scalar pi = ScalarOps<Scalar>::pi(x);
  return asin(x) / pi + 3 * ScalarOps<Scalar>::half(x);
}

template <typename Scalar>
Scalar sigma3_deriv_right(const Scalar& x) {
  using std::cos;
  using std::sin;
  const Scalar pi = ScalarOps<Scalar>::pi(x);
  const Scalar x2 = x * x;
  return 3 / x2 + cos(pi * x) / x2 - 2 * sin(pi * x) / (pi * x2 * x);
}

template <typename Scalar>
Scalar sigma3_deriv(const Scalar& x) {
  if (x < -1) return sigma3_deriv_left(x);
  if (x > 1) return sigma3_deriv_right(x);
  return sigma3_deriv_mid(x);
}

}  // namespace superx

#endif  // SUPERX_SPECIAL_HPP_
