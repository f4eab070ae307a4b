#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "superx/bigreal.hpp"
#include "superx/errors.hpp"
#include "superx/special.hpp"

using superx::BigReal;

namespace {

BigReal big(const char* s, superx::Precision p = 256) { return BigReal::parse(s, p); }

BigReal tol_bits(superx::Precision p) { return BigReal::exp2i(-(static_cast<long>(p) - 8), p); }

BigReal random_big(std::mt19937_64& rng, double lo, double hi, superx::Precision p = 256) {
  std::uniform_real_distribution<double> u(lo, hi);
  // Two doubles give more than 53 random bits in the mantissa.
  BigReal x(u(rng), p);
  x += BigReal(u(rng) * 1e-17, p);
  return x;
}

}  // namespace

TEST_CASE("bigreal arithmetic keeps the wider precision") {
  BigReal a(1.0, 128);
  BigReal b(3L, 512);
  BigReal c = a / b;
  CHECK(c.precision() == 512);
  CHECK((a + 1).precision() == 128);
  BigReal third = big("0.333333333333333333333333333333333333333333333333", 512);
  CHECK(abs(c - third) < BigReal(1e-45));
}

TEST_CASE("bigreal string round trip") {
  for (superx::Precision p : {53, 64, 256, 1024}) {
    BigReal x = BigReal::pi(p) * BigReal::exp2i(200, p);
    BigReal y = BigReal::parse(x.to_string(), p);
    CHECK(x == y);
    BigReal z = 1 / BigReal(7L, p);
    CHECK(BigReal::parse(z.to_string(), p) == z);
  }
  CHECK(big("1.25").to_string() == "1.25");
  CHECK(big("0.25").to_string() == "0.25");
  CHECK(big("-3").to_string() == "-3");
  CHECK(BigReal(0L, 256).to_string() == "0");
  CHECK_THROWS_AS(BigReal::parse("1.2.3", 64), superx::SchemaError);
}

TEST_CASE("asin outside the unit interval is a domain error") {
  CHECK_THROWS_AS(asin(big("1.0000001")), superx::DomainError);
  CHECK(asin(big("1")) == BigReal::pi(256) / 2);
}

TEST_CASE("frac examples") {
  CHECK(superx::frac(big("1.25")) == big("0.25"));
  CHECK(superx::frac(big("-0.25")) == big("0.75"));
  CHECK(superx::frac(big("3")) == 0);
}

TEST_CASE("frac is 1-periodic under integer shifts") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> shift(-1000000, 1000000);
  for (int i = 0; i < 1000; ++i) {
    BigReal x = random_big(rng, -5, 5);
    long n = shift(rng);
    CHECK(abs(superx::frac(x + n) - superx::frac(x)) < tol_bits(256));
  }
}

TEST_CASE("theta, nu, psi examples") {
  CHECK(superx::theta(big("0")) == 0);
  CHECK(superx::theta(big("0.5")) == big("0.5"));
  CHECK(superx::theta(big("1.5")) == big("-0.5"));
  CHECK(superx::nu(big("1")) == 1);
  CHECK(superx::nu(big("0.75")) == 1);
  CHECK(superx::nu(big("1.25")) == 1);
  CHECK(superx::psi(big("0.5")) == 1);
  CHECK(superx::psi(big("0")) == 0);
  CHECK(superx::psi(big("0.25")) == big("0.5"));
}

TEST_CASE("theta agrees with the trigonometric form") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 500; ++i) {
    BigReal x = random_big(rng, -20, 20);
    CHECK(abs(superx::theta(x) - superx::theta_trig(x)) < BigReal(1e-60));
  }
}

TEST_CASE("theta is odd, 2-periodic and bounded") {
  std::mt19937_64 rng(5);
  const BigReal tol = tol_bits(256);
  for (int i = 0; i < 1000; ++i) {
    BigReal x = random_big(rng, -100, 100);
    BigReal t = superx::theta(x);
    CHECK(abs(superx::theta(x + 2) - t) < tol);
    CHECK(abs(superx::theta(-x) + t) < tol);
    CHECK(abs(t) <= big("0.5"));
  }
}

TEST_CASE("psi vanishes on [1,2] mod 2") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 1000; ++i) {
    BigReal x = random_big(rng, 1, 2) + 2 * (i % 7 - 3);
    CHECK(abs(superx::psi(x)) < tol_bits(256));
  }
}

TEST_CASE("partition of unity for shifted psi") {
  std::mt19937_64 rng(21);
  const BigReal tol = tol_bits(256);
  BigReal worst(0L, 256);
  for (int i = 0; i < 10000; ++i) {
    BigReal t = random_big(rng, -50, 50);
    BigReal sum(0L, 256);
    for (int q = -1; q <= 2; ++q) sum += superx::psi(BigReal(t - BigReal(q, 256) / 2));
    worst = max(worst, abs(sum - 1));
  }
  CHECK(worst < tol);
}

TEST_CASE("sigma3 values and C1 gluing") {
  const superx::Precision p = 256;
  const BigReal one(1L, p), mone(-1L, p);
  const BigReal tol = tol_bits(p);
  CHECK(abs(superx::sigma3(mone) - 1) < tol);
  CHECK(abs(superx::sigma3(one) - 4) < tol);
  CHECK(abs(superx::sigma3_left(mone) - superx::sigma3_mid(mone)) < tol);
  CHECK(abs(superx::sigma3_mid(one) - superx::sigma3_right(one)) < tol);
  CHECK(abs(superx::sigma3_deriv_left(mone) - superx::sigma3_deriv_mid(mone)) < tol);
  CHECK(abs(superx::sigma3_deriv_mid(one) - superx::sigma3_deriv_right(one)) < tol);
  CHECK(abs(superx::sigma3_deriv(mone) - 1) < tol);
  CHECK(abs(superx::sigma3_deriv(one) - 2) < tol);
  CHECK(superx::sigma3(BigReal(-1e6, p)) < BigReal(1e-5));
  CHECK(superx::sigma3(BigReal(1e6, p)) > BigReal(7 - 1e-5));
}

TEST_CASE("sigma3 is increasing and bounded on [-50, 50]") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-50, 50);
  for (int i = 0; i < 10000; ++i) {
    BigReal x(u(rng), 256);
    BigReal v = superx::sigma3(x);
    CHECK(superx::sigma3_deriv(x) > 0);
    CHECK(v > 0);
    CHECK(v < 7);
  }
}

TEST_CASE("sigma3 derivative matches a central difference") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-5, 5);
  const BigReal h = BigReal::exp2i(-80, 256);
  for (int i = 0; i < 300; ++i) {
    BigReal x(u(rng), 256);
    if (abs(abs(x) - 1) < BigReal(1e-3)) continue;
    BigReal fd = (superx::sigma3(BigReal(x + h)) - superx::sigma3(BigReal(x - h))) / (2 * h);
    CHECK(abs(fd - superx::sigma3_deriv(x)) < BigReal(1e-20));
  }
}

TEST_CASE("double instantiation matches") {
  CHECK(superx::theta(0.25) == doctest::Approx(0.25));
  CHECK(superx::sigma3(0.0) == doctest::Approx(1 / 3.141592653589793 + 2));
  CHECK(superx::psi(0.25) == doctest::Approx(0.5));
}
