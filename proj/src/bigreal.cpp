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

#include "superx/bigreal.hpp"

#include <algorithm>
#include <climits>
#include <ostream>

#include "superx/errors.hpp"
#include "superx/scalar.hpp"

namespace superx {

namespace {

constexpr mpfr_rnd_t kRnd = MPFR_RNDN;

Precision max_prec(const BigReal& a, const BigReal& b) {
  return std::max(a.precision(), b.precision());
}

// Formats MPFR's (digits, exponent) pair, value = 0.DIGITS * 10^exp.
std::string format_decimal(std::string digits, mpfr_exp_t exp) {
  bool negative = false;
  if (!digits.empty() && digits[0] == '-') {
    negative = true;
    digits.erase(0, 1);
  }
  while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
  std::string out = negative ? "-" : "";
  const long n = static_cast<long>(digits.size());
  if (exp > 0 && exp <= 40) {
    if (n <= exp) {
      out += digits + std::string(static_cast<size_t>(exp - n), '0');
    } else {
      out += digits.substr(0, static_cast<size_t>(exp)) + "." +
             digits.substr(static_cast<size_t>(exp));
    }
  } else if (exp <= 0 && exp > -8) {
    out += "0." + std::string(static_cast<size_t>(-exp), '0') + digits;
  } else {
    out += digits.substr(0, 1);
    if (n > 1) out += "." + digits.substr(1);
    out += "e" + std::to_string(static_cast<long>(exp) - 1);
  }
  return out;
}

}  // namespace

BigReal::BigReal() {
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_set_zero(v_, 1);
}

BigReal::BigReal(int v) : BigReal(static_cast<long>(v)) {}

BigReal::BigReal(long v) {
  mpfr_init2(v_, 64);
  mpfr_set_si(v_, v, kRnd);
}

BigReal::BigReal(long long v) : BigReal(static_cast<long>(v)) {}

BigReal::BigReal(double v) {
  mpfr_init2(v_, 53);
  mpfr_set_d(v_, v, kRnd);
}

BigReal::BigReal(long v, Precision prec) {
  mpfr_init2(v_, prec);
  mpfr_set_si(v_, v, kRnd);
}

BigReal::BigReal(double v, Precision prec) {
  mpfr_init2(v_, prec);
  mpfr_set_d(v_, v, kRnd);
}

BigReal::BigReal(const BigReal& other, Precision prec) {
  mpfr_init2(v_, prec);
  mpfr_set(v_, other.v_, kRnd);
}

BigReal::BigReal(Uninit, Precision prec) { mpfr_init2(v_, prec); }

BigReal make_uninit(Precision prec) { return BigReal(BigReal::Uninit{}, prec); }

BigReal::BigReal(const BigReal& other) {
  mpfr_init2(v_, other.precision());
  mpfr_set(v_, other.v_, kRnd);
}

BigReal::BigReal(BigReal&& other) noexcept {
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, other.v_);
}

BigReal& BigReal::operator=(const BigReal& other) {
  if (this != &other) {
    mpfr_set_prec(v_, other.precision());
    mpfr_set(v_, other.v_, kRnd);
  }
  return *this;
}

BigReal& BigReal::operator=(BigReal&& other) noexcept {
  mpfr_swap(v_, other.v_);
  return *this;
}

BigReal::~BigReal() { mpfr_clear(v_); }

BigReal BigReal::parse(std::string_view text, Precision prec) {
  std::string s(text);
  BigReal r = make_uninit(prec);
  char* end = nullptr;
  if (!s.empty()) mpfr_strtofr(r.v_, s.c_str(), &end, 10, kRnd);
  if (s.empty() || end == s.c_str() || *end != '\0') {
    throw SchemaError("not a decimal number: '" + s + "'");
  }
  return r;
}

BigReal BigReal::pi(Precision prec) {
  BigReal r = make_uninit(prec);
  mpfr_const_pi(r.v_, kRnd);
  return r;
}

BigReal BigReal::exp2i(long e, Precision prec) {
  BigReal r(1L, prec);
  mpfr_mul_2si(r.v_, r.v_, e, kRnd);
  return r;
}

long BigReal::exponent2() const {
  if (mpfr_zero_p(v_) || !mpfr_number_p(v_)) return LONG_MIN;
  return static_cast<long>(mpfr_get_exp(v_));
}

std::string BigReal::to_string() const {
  return to_string(static_cast<int>(mpfr_get_str_ndigits(10, precision())));
}

std::string BigReal::to_string(int digits) const {
  if (mpfr_nan_p(v_)) return "nan";
  if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
  if (mpfr_zero_p(v_)) return "0";
  mpfr_exp_t exp = 0;
  char* raw = mpfr_get_str(nullptr, &exp, 10, static_cast<size_t>(std::max(digits, 1)), v_, kRnd);
  std::string d(raw);
  mpfr_free_str(raw);
  return format_decimal(std::move(d), exp);
}

BigReal& BigReal::operator+=(const BigReal& o) {
  if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), kRnd);
  mpfr_add(v_, v_, o.v_, kRnd);
  return *this;
}

BigReal& BigReal::operator-=(const BigReal& o) {
  if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), kRnd);
  mpfr_sub(v_, v_, o.v_, kRnd);
  return *this;
}

BigReal& BigReal::operator*=(const BigReal& o) {
  if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), kRnd);
  mpfr_mul(v_, v_, o.v_, kRnd);
  return *this;
}

BigReal& BigReal::operator/=(const BigReal& o) {
  if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), kRnd);
  mpfr_div(v_, v_, o.v_, kRnd);
  return *this;
}

BigReal& BigReal::operator+=(long o) {
  mpfr_add_si(v_, v_, o, kRnd);
  return *this;
}

BigReal& BigReal::operator-=(long o) {
  mpfr_sub_si(v_, v_, o, kRnd);
  return *this;
}

BigReal& BigReal::operator*=(long o) {
  mpfr_mul_si(v_, v_, o, kRnd);
  return *this;
}

BigReal& BigReal::operator/=(long o) {
  mpfr_div_si(v_, v_, o, kRnd);
  return *this;
}

BigReal BigReal::operator-() const {
  BigReal r = make_uninit(precision());
  mpfr_neg(r.v_, v_, kRnd);
  return r;
}

BigReal operator+(const BigReal& a, const BigReal& b) {
  BigReal r = make_uninit(max_prec(a, b));
  mpfr_add(r.raw(), a.raw(), b.raw(), kRnd);
  return r;
}

BigReal operator-(const BigReal& a, const BigReal& b) {
  BigReal r = make_uninit(max_prec(a, b));
  mpfr_sub(r.raw(), a.raw(), b.raw(), kRnd);
  return r;
}

BigReal operator*(const BigReal& a, const BigReal& b) {
  BigReal r = make_uninit(max_prec(a, b));
  mpfr_mul(r.raw(), a.raw(), b.raw(), kRnd);
  return r;
}

BigReal operator/(const BigReal& a, const BigReal& b) {
  BigReal r = make_uninit(max_prec(a, b));
  mpfr_div(r.raw(), a.raw(), b.raw(), kRnd);
  return r;
}

BigReal operator-(long a, const BigReal& b) {
  BigReal r = make_uninit(b.precision());
  mpfr_si_sub(r.raw(), a, b.raw(), kRnd);
  return r;
}

BigReal operator/(long a, const BigReal& b) {
  BigReal r = make_uninit(b.precision());
  mpfr_si_div(r.raw(), a, b.raw(), kRnd);
  return r;
}

bool operator==(const BigReal& a, const BigReal& b) { return mpfr_equal_p(a.raw(), b.raw()) != 0; }

std::partial_ordering operator<=>(const BigReal& a, const BigReal& b) {
  if (mpfr_unordered_p(a.raw(), b.raw())) return std::partial_ordering::unordered;
  int c = mpfr_cmp(a.raw(), b.raw());
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

std::ostream& operator<<(std::ostream& os, const BigReal& x) { return os << x.to_string(); }

namespace {

template <typename Fn>
BigReal unary(const BigReal& x, Fn fn) {
  BigReal r = make_uninit(x.precision());
  fn(r.raw(), x.raw());
  return r;
}

}  // namespace

BigReal abs(const BigReal& x) {
  return unary(x, [](mpfr_ptr r, mpfr_srcptr a) { mpfr_abs(r, a, kRnd); });
}
BigReal floor(const BigReal& x) {
  return unary(x, [](mpfr_ptr r, mpfr_srcptr a) { mpfr_floor(r, a); });
}
BigReal ceil(const BigReal& x) {
  return unary(x, [](mpfr_ptr r, mpfr_srcptr a) { mpfr_ceil(r, a); });
}
BigReal trunc(const BigReal& x) {
  return unary(x, [](mpfr_ptr r, mpfr_srcptr a) { mpfr_trunc(r, a); });
}
BigReal round(const BigReal& x) {
  return unary(x, [](mpfr_ptr r, mpfr_srcptr a) { mpfr_round(r, a); });
}
BigReal sqrt(const BigReal& x) {
  return unary(x, [](mpfr_ptr r, mpfr_srcptr a) { mpfr_sqrt(r, a, kRnd); });
}
BigReal sin(const BigReal& x) {
  return unary(x, [](mpfr_ptr r, mpfr_srcptr a) { mpfr_sin(r, a, kRnd); });
}
BigReal cos(const BigReal& x) {
  return unary(x, [](mpfr_ptr r, mpfr_srcptr a) { mpfr_cos(r, a, kRnd); });
}
BigReal tan(const BigReal& x) {
  return unary(x, [](mpfr_ptr r, mpfr_srcptr a) { mpfr_tan(r, a, kRnd); });
}
BigReal asin(const BigReal& x) {
  if (mpfr_cmpabs_ui(x.raw(), 1) > 0) {
    throw DomainError("asin argument outside [-1, 1]: " + x.to_string(20));
  }
  return unary(x, [](mpfr_ptr r, mpfr_srcptr a) { mpfr_asin(r, a, kRnd); });
}
BigReal atan(const BigReal& x) {
  return unary(x, [](mpfr_ptr r, mpfr_srcptr a) { mpfr_atan(r, a, kRnd); });
}
BigReal exp(const BigReal& x) {
  return unary(x, [](mpfr_ptr r, mpfr_srcptr a) { mpfr_exp(r, a, kRnd); });
}
BigReal log(const BigReal& x) {
  return unary(x, [](mpfr_ptr r, mpfr_srcptr a) { mpfr_log(r, a, kRnd); });
}
BigReal log2(const BigReal& x) {
  return unary(x, [](mpfr_ptr r, mpfr_srcptr a) { mpfr_log2(r, a, kRnd); });
}
BigReal pow(const BigReal& x, long n) {
  BigReal r = make_uninit(x.precision());
  mpfr_pow_si(r.raw(), x.raw(), n, kRnd);
  return r;
}
BigReal min(const BigReal& a, const BigReal& b) { return b < a ? b : a; }
BigReal max(const BigReal& a, const BigReal& b) { return a < b ? b : a; }
BigReal hypot(const BigReal& a, const BigReal& b) {
  BigReal r = make_uninit(max_prec(a, b));
  mpfr_hypot(r.raw(), a.raw(), b.raw(), kRnd);
  return r;
}

mpq_class to_rational(const BigReal& v) {
  if (!v.is_finite()) throw DomainError("non-finite value has no rational form");
  mpq_class q;
  mpfr_get_q(q.get_mpq_t(), v.raw());
  return q;
}

BigReal from_rational(const mpq_class& q, Precision prec) {
  BigReal r = make_uninit(prec);
  mpfr_set_q(r.raw(), q.get_mpq_t(), kRnd);
  return r;
}

BigReal machine_epsilon(Precision prec) { return BigReal::exp2i(1 - static_cast<long>(prec), prec); }

}  // namespace superx
