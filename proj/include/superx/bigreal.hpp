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

#ifndef SUPERX_BIGREAL_HPP_
#define SUPERX_BIGREAL_HPP_

#include <mpfr.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <Eigen/Core>

namespace superx {

using Precision = mpfr_prec_t;

inline constexpr Precision kDefaultPrecision = 256;

// Arbitrary-precision real backed by an MPFR value. Every value owns its
// precision; binary operations produce a result at the larger of the two
// operand precisions and round to nearest. Integer operands are exact and
// never raise the precision of a BigReal operand.
class BigReal {
 public:
  // Zero at the minimum precision so it never widens a later result.
  BigReal();
  BigReal(int v);   // NOLINT(google-explicit-constructor)
  BigReal(long v);  // NOLINT(google-explicit-constructor)
  BigReal(long long v);  // NOLINT(google-explicit-constructor)
  BigReal(double v);  // NOLINT(google-explicit-constructor)
  BigReal(int v, Precision prec) : BigReal(static_cast<long>(v), prec) {}
  BigReal(long v, Precision prec);
  BigReal(double v, Precision prec);
  BigReal(const BigReal& other, Precision prec);

  BigReal(const BigReal& other);
  BigReal(BigReal&& other) noexcept;
  BigReal& operator=(const BigReal& other);
  BigReal& operator=(BigReal&& other) noexcept;
  ~BigReal();

  // Parses a decimal (or "inf"/"nan") string, correctly rounded to `prec`.
  static BigReal parse(std::string_view text, Precision prec);
  static BigReal pi(Precision prec);
  // 2^e at the given precision.
  static BigReal exp2i(long e, Precision prec);

  Precision precision() const { return mpfr_get_prec(v_); }
  BigReal rounded_to(Precision prec) const { return BigReal(*this, prec); }

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  bool is_integer() const { return mpfr_integer_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  // Binary exponent e with 0.5 <= |x| / 2^e < 1; LONG_MIN for zero.
  long exponent2() const;

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }

  // Decimal string that parses back to the identical value at this
  // precision. Trailing zeros are dropped.
  std::string to_string() const;
  // Decimal string with at most `digits` significant digits.
  std::string to_string(int digits) const;

  BigReal& operator+=(const BigReal& o);
  BigReal& operator-=(const BigReal& o);
  BigReal& operator*=(const BigReal& o);
  BigReal& operator/=(const BigReal& o);
  BigReal& operator+=(long o);
  BigReal& operator-=(long o);
  BigReal& operator*=(long o);
  BigReal& operator/=(long o);

  BigReal operator-() const;

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

 private:
  struct Uninit {};
  BigReal(Uninit, Precision prec);
  friend BigReal make_uninit(Precision prec);

  mpfr_t v_;
};

BigReal make_uninit(Precision prec);

// Arithmetic. Results take max(operand precisions).
BigReal operator+(const BigReal& a, const BigReal& b);
BigReal operator-(const BigReal& a, const BigReal& b);
BigReal operator*(const BigReal& a, const BigReal& b);
BigReal operator/(const BigReal& a, const BigReal& b);

inline BigReal operator+(BigReal a, long b) { return a += b; }
inline BigReal operator-(BigReal a, long b) { return a -= b; }
inline BigReal operator*(BigReal a, long b) { return a *= b; }
inline BigReal operator/(BigReal a, long b) { return a /= b; }
inline BigReal operator+(long a, BigReal b) { return b += a; }
inline BigReal operator*(long a, BigReal b) { return b *= a; }
BigReal operator-(long a, const BigReal& b);
BigReal operator/(long a, const BigReal& b);
inline BigReal operator+(BigReal a, int b) { return a += long{b}; }
inline BigReal operator-(BigReal a, int b) { return a -= long{b}; }
inline BigReal operator*(BigReal a, int b) { return a *= long{b}; }
inline BigReal operator/(BigReal a, int b) { return a /= long{b}; }
inline BigReal operator+(int a, BigReal b) { return b += long{a}; }
inline BigReal operator*(int a, BigReal b) { return b *= long{a}; }
inline BigReal operator-(int a, const BigReal& b) { return long{a} - b; }
inline BigReal operator/(int a, const BigReal& b) { return long{a} / b; }

bool operator==(const BigReal& a, const BigReal& b);
std::partial_ordering operator<=>(const BigReal& a, const BigReal& b);
inline bool operator==(const BigReal& a, long b) { return mpfr_cmp_si(a.raw(), b) == 0; }
inline std::partial_ordering operator<=>(const BigReal& a, long b) {
  int c = mpfr_cmp_si(a.raw(), b);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}
inline bool operator==(const BigReal& a, int b) { return a == long{b}; }
inline std::partial_ordering operator<=>(const BigReal& a, int b) { return a <=> long{b}; }

std::ostream& operator<<(std::ostream& os, const BigReal& x);

// Elementary functions, correctly rounded at the argument's precision.
BigReal abs(const BigReal& x);
BigReal floor(const BigReal& x);
BigReal ceil(const BigReal& x);
BigReal trunc(const BigReal& x);
// Nearest integer, ties away from zero.
BigReal round(const BigReal& x);
BigReal sqrt(const BigReal& x);
BigReal sin(const BigReal& x);
BigReal cos(const BigReal& x);
BigReal tan(const BigReal& x);
// Throws DomainError outside [-1, 1].
BigReal asin(const BigReal& x);
BigReal atan(const BigReal& x);
BigReal exp(const BigReal& x);
BigReal log(const BigReal& x);
BigReal log2(const BigReal& x);
BigReal pow(const BigReal& x, long n);
BigReal min(const BigReal& a, const BigReal& b);
BigReal max(const BigReal& a, const BigReal& b);
BigReal hypot(const BigReal& a, const BigReal& b);

inline bool isfinite(const BigReal& x) { return x.is_finite(); }
inline bool isnan(const BigReal& x) { return mpfr_nan_p(x.raw()) != 0; }

// Unit roundoff 2^(1-p) for precision p.
BigReal machine_epsilon(Precision prec);

}  // namespace superx

namespace Eigen {

template <>
struct NumTraits<superx::BigReal> : GenericNumTraits<superx::BigReal> {
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = HugeCost,
    AddCost = HugeCost,
    MulCost = HugeCost
  };

  using Real = superx::BigReal;
  using NonInteger = superx::BigReal;
  using Literal = superx::BigReal;
  using Nested = superx::BigReal;

  static inline Real epsilon() { return superx::machine_epsilon(superx::kDefaultPrecision); }
  static inline Real dummy_precision() {
    return superx::machine_epsilon(superx::kDefaultPrecision * 9 / 10);
  }
  static inline Real highest() { return superx::BigReal::exp2i(1L << 20, superx::kDefaultPrecision); }
  static inline Real lowest() { return -highest(); }
  static inline int digits10() { return static_cast<int>(superx::kDefaultPrecision * 0.30103); }
};

}  // namespace Eigen

namespace superx {

template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using BigVec = Vec<BigReal>;

}  // namespace superx

#endif  // SUPERX_BIGREAL_HPP_
