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

#ifndef SUPERX_SCALAR_HPP_
#define SUPERX_SCALAR_HPP_

#include <cmath>
#include <numbers>

#include <gmpxx.h>

#include "superx/bigreal.hpp"

namespace superx {

// Constants and conversions for the scalar types the templates accept.
// `like` supplies the precision for BigReal and is ignored for double.
template <typename Scalar>
struct ScalarOps;

template <>
struct ScalarOps<double> {
  static double pi(const double&) { return std::numbers::pi; }
  static double from_long(long v, const double&) { return static_cast<double>(v); }
  static double from_big(const BigReal& v, const double&) { return v.to_double(); }
  static double half(const double&) { return 0.5; }
  static double exp2i(long e, const double&) { return std::ldexp(1.0, static_cast<int>(e)); }
  static Precision precision(const double&) { return 53; }
};

template <>
struct ScalarOps<BigReal> {
  static BigReal pi(const BigReal& like) { return BigReal::pi(like.precision()); }
  static BigReal from_long(long v, const BigReal& like) { return BigReal(v, like.precision()); }
  static BigReal from_big(const BigReal& v, const BigReal& like) {
    return BigReal(v, like.precision());
  }
  static BigReal half(const BigReal& like) { return BigReal::exp2i(-1, like.precision()); }
  static BigReal exp2i(long e, const BigReal& like) { return BigReal::exp2i(e, like.precision()); }
  static Precision precision(const BigReal& like) { return like.precision(); }
};

// Exact rationals. Only the operations piecewise-linear evaluation needs.
template <>
struct ScalarOps<mpq_class> {
  static mpq_class from_long(long v, const mpq_class&) { return mpq_class(v); }
  static mpq_class from_big(const BigReal& v, const mpq_class&) { return to_rational(v); }
  static mpq_class half(const mpq_class&) { return mpq_class(1, 2); }
  static Precision precision(const mpq_class&) { return 0; }
  static mpq_class to_rational(const BigReal& v);
};

// Exact value of a finite BigReal as a rational.
mpq_class to_rational(const BigReal& v);
// Nearest BigReal at the given precision.
BigReal from_rational(const mpq_class& q, Precision prec);

inline mpq_class ScalarOps<mpq_class>::to_rational(const BigReal& v) {
  return superx::to_rational(v);
}

inline mpq_class floor(const mpq_class& q) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return mpq_class(r);
}

}  // namespace superx

#endif  // SUPERX_SCALAR_HPP_
