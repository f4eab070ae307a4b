#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "superx/build_a2.hpp"
#include "superx/special.hpp"

using superx::BigReal;

namespace {

constexpr superx::Precision kP = 256;

BigReal b(const char* s, superx::Precision p = kP) { return BigReal::parse(s, p); }

superx::MultiplierParams sin_mult(const char* delta, const char* C) {
  return {superx::ActKind::Sin, BigReal(-BigReal::pi(kP) / 2), b(delta), b(C), b(C)};
}

superx::A2Options options(int M, const char* tol) {
  superx::A2Options o;
  o.M = M;
  o.tol = b(tol);
  o.samples = 1000;
  o.auto_precision = true;
  return o;
}

}  // namespace

TEST_CASE("layout example") {
  auto segs = superx::layout(4, 0, kP);
  REQUIRE(segs.size() == 2);
  CHECK(segs[0].lo == 0);
  CHECK(segs[0].hi == b("0.25"));
  CHECK(segs[1].lo == b("0.5"));
  CHECK(segs[1].hi == b("0.75"));
  CHECK_THROWS_AS(superx::layout(5, 0, kP), superx::SchemaError);
  CHECK_THROWS_AS(superx::layout(2, 0, kP), superx::SchemaError);
}

TEST_CASE("codes are distinct odd integers in [1, M + 1]") {
  for (int M : {4, 8, 16}) {
    for (int q : superx::kA2Shifts) {
      std::set<long> codes;
      for (const auto& s : superx::layout(M, q, kP)) {
        CHECK(s.code() % 2 == 1);
        CHECK(s.code() >= 1);
        CHECK(s.code() <= M + 1);
        CHECK(s.hi > s.lo);
        codes.insert(s.code());
      }
      CHECK(codes.size() == superx::layout(M, q, kP).size());
    }
  }
  CHECK(superx::code_count(8) == 5);
}

TEST_CASE("G is constant on each segment and psi vanishes off the segments") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int M = 8;
  for (int q : superx::kA2Shifts) {
    auto segs = superx::layout(M, q, kP);
    for (const auto& s : segs) {
      for (int t = 0; t < 20; ++t) {
        BigReal x = s.lo + (s.hi - s.lo) * BigReal(u(rng), kP);
        CHECK(superx::G_eval(M, q, x) == s.code());
      }
    }
    for (int t = 0; t < 200; ++t) {
      BigReal x(u(rng), kP);
      bool inside = false;
      for (const auto& s : segs) inside = inside || (s.lo <= x && x <= s.hi);
      if (!inside) CHECK(superx::psi_eval(M, q, x) == 0);
    }
  }
}

TEST_CASE("shifted bumps sum to one") {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 500; ++t) {
    BigReal x(u(rng), kP), acc(0L, kP);
    for (int q : superx::kA2Shifts) acc += superx::psi_eval(8, q, x);
    CHECK(abs(acc - 1) < BigReal::exp2i(-240, kP));
  }
}

TEST_CASE("multiplier example and error bound") {
  auto mp = sin_mult("1e-3", "10");
  auto net = superx::multiplier_net(mp, kP);
  CHECK(superx::count(net).neurons == 6);
  superx::BigVec x(2);
  x << b("2"), b("3");
  CHECK(abs(superx::evaluate(net, x) - 6) <= b("1e-4"));
  const BigReal bound = superx::multiplier_error_bound(mp);
  CHECK(bound <= b("1e-4"));
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int t = 0; t < 300; ++t) {
    x << BigReal(u(rng), kP), BigReal(u(rng), kP);
    const BigReal got = superx::evaluate(net, x);
    CHECK(abs(got - x(0) * x(1)) <= bound);
    CHECK(abs(got - superx::multiplier_eval(mp, x(0), x(1))) < b("1e-60"));
  }
}

TEST_CASE("multiplier error is second order in delta") {
  const BigReal x = b("7"), y = b("-9");
  std::vector<double> ld, le;
  for (const char* d : {"1e-2", "3e-3", "1e-3"}) {
    auto mp = sin_mult(d, "10");
    ld.push_back(std::log(b(d).to_double()));
    le.push_back(std::log(abs(superx::multiplier_eval(mp, x, y) - x * y).to_double()));
  }
  const double slope = (le.back() - le.front()) / (ld.back() - ld.front());
  CHECK(slope == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("multiplier rejects a flat expansion point") {
  superx::MultiplierParams mp{superx::ActKind::Sin, BigReal(0L, kP), b("1e-3"), b("1"), b("1")};
  CHECK_THROWS_AS(superx::multiplier_net(mp, kP), superx::CurvatureError);
}

TEST_CASE("sigma3 multiplier") {
  superx::MultiplierParams mp{superx::ActKind::Sigma3, BigReal(0L, kP), b("1e-3"), b("10"), b("10")};
  auto net = superx::multiplier_net(mp, kP);
  superx::BigVec x(2);
  x << b("2"), b("3");
  CHECK(abs(superx::evaluate(net, x) - 6) <= superx::multiplier_error_bound(mp));
  CHECK(superx::multiplier_error_bound(mp) <= b("1e-4"));
}

TEST_CASE("identity target on M = 8") {
  auto f = superx::make_target("linear", 1, kP);
  auto r = superx::build_a2(f, options(8, "1e-2"));
  const auto& rep = r.report;
  CHECK(rep.achieved <= rep.tol);
  CHECK(rep.measured_sup_error <= rep.cert_error_bound);
  CHECK(BigReal::parse(rep.extra["max_target_error"].get<std::string>(), kP) <=
        BigReal::parse(rep.extra["target_error_bound"].get<std::string>(), kP));
  for (const auto& n : r.net.nodes()) {
    if (n.kind != superx::NodeKind::Hidden) continue;
    CHECK((n.act.kind == superx::ActKind::Sin || n.act.kind == superx::ActKind::Arcsin));
    if (!n.in_edges.empty()) CHECK(n.range.has_value());
  }
  CHECK(superx::count(r.net).neurons == 4 * 15);

  // Faithfulness to the closed-form pipeline.
  const BigReal mult_err = BigReal::parse(rep.extra["mult_err_est"].get<std::string>(), kP);
  const superx::Precision P = r.net.precision_bits();
  for (const auto& x : superx::sample_points(1, 200, 11, P)) {
    const BigReal net = superx::evaluate(r.net, x);
    CHECK(abs(net - superx::a2_closed_form(r.params, x(0))) <= 4 * mult_err + BigReal::exp2i(-(P - 8), P));
  }
}

TEST_CASE("architecture does not depend on the target") {
  std::string sk;
  for (const char* spec : {"linear", "square", "sin:1"}) {
    auto r = superx::build_a2(superx::make_target(spec, 1, kP), options(4, "2e-2"));
    if (sk.empty()) sk = superx::skeleton(r.net);
    CHECK(superx::skeleton(r.net) == sk);
    CHECK(r.report.measured_sup_error <= r.report.cert_error_bound);
  }
}

TEST_CASE("zero target gives an exactly zero network") {
  auto r = superx::build_a2(superx::make_target("const:0", 1, kP), options(8, "1e-2"));
  for (const auto& x : superx::sample_points(1, 200, 3, kP)) CHECK(superx::evaluate(r.net, x) == 0);
}

TEST_CASE("A2 is one-dimensional") {
  auto f = superx::make_target("linear", 2, kP);
  CHECK_THROWS_AS(superx::build_a2(f, options(8, "1e-2")), superx::SchemaError);
}
