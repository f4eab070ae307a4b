#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "superx/netgraph_io.hpp"
#include "superx/winding.hpp"

using superx::BigReal;
using superx::WindingProblem;

namespace {

constexpr superx::Precision kP = 256;

BigReal b(const char* s) { return BigReal::parse(s, kP); }
BigReal sq(long k) { return sqrt(BigReal(k, kP)); }

WindingProblem problem(std::vector<BigReal> a, std::vector<BigReal> y, const char* tol) {
  WindingProblem p;
  p.a = std::move(a);
  p.y = std::move(y);
  p.tol = b(tol);
  p.modulus = BigReal(1L, kP);
  p.s_max = BigReal(1000L, kP);
  p.step = BigReal(0L, kP);
  return p;
}

superx::BigVec vec(std::initializer_list<const char*> xs) {
  superx::BigVec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (const char* x : xs) v(i++) = b(x);
  return v;
}

}  // namespace

TEST_CASE("torus distance examples") {
  const BigReal one(1L, kP);
  CHECK(abs(superx::torus_dist(vec({"0.1"}), vec({"0.9"}), one) - b("0.2")) < b("1e-70"));
  CHECK(superx::torus_dist(vec({"0.3", "0.7"}), vec({"0.3", "0.7"}), one) == 0);
  CHECK(abs(superx::torus_dist(vec({"0", "0"}), vec({"0.5", "0.5"}), one) - sq(2) / 2) < b("1e-70"));
}

TEST_CASE("torus distance is a shift-invariant metric") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0, 1);
  const BigReal m(2L, kP);
  auto point = [&] {
    superx::BigVec v(3);
    for (int i = 0; i < 3; ++i) v(i) = BigReal(2 * u(rng), kP);
    return v;
  };
  for (int t = 0; t < 300; ++t) {
    superx::BigVec x = point(), y = point(), z = point(), c = point();
    BigReal dxy = superx::torus_dist(x, y, m);
    CHECK(abs(dxy - superx::torus_dist(y, x, m)) < b("1e-70"));
    CHECK(superx::torus_dist(x, x, m) == 0);
    CHECK(dxy <= superx::torus_dist(x, z, m) + superx::torus_dist(z, y, m) + b("1e-70"));
    superx::BigVec xs = x, ys = y;
    for (int i = 0; i < 3; ++i) {
      xs(i) = superx::frac(BigReal((x(i) + c(i)) / m)) * m;
      ys(i) = superx::frac(BigReal((y(i) + c(i)) / m)) * m;
    }
    CHECK(abs(superx::torus_dist(xs, ys, m) - dxy) < b("1e-70"));
  }
}

TEST_CASE("oracle examples") {
  {
    WindingProblem p = problem({BigReal(2L, kP)}, {b("0.5")}, "1e-6");
    auto s = superx::solve_oracle(p);
    REQUIRE(s);
    CHECK(abs(s->s - b("0.25")) < b("1e-70"));
    CHECK(s->achieved < b("1e-70"));
  }
  {
    // Dependent coefficients: s = 1/2 + delta needs |delta| <= tol and
    // |1/4 - 2 delta| <= tol, impossible once tol < 1/12.
    WindingProblem p = problem({BigReal(1L, kP), BigReal(2L, kP)}, {b("0.5"), b("0.25")}, "0.05");
    CHECK_FALSE(superx::solve_oracle(p));
    p.tol = b("0.2");
    auto loose = superx::solve_oracle(p);
    REQUIRE(loose);
    CHECK(loose->achieved <= p.tol);
  }
}

TEST_CASE("oracle regression fixture for (1, sqrt 2)") {
  auto j = superx::read_json_file(std::string(SUPERX_FIXTURE_DIR) + "/winding_sqrt2.json");
  WindingProblem p = superx::problem_from_json(j);
  auto s = superx::solve_oracle(p);
  REQUIRE(s);
  CHECK(s->s == b("1e-4") * j["expected_k"].get<long>());
  CHECK(s->s.to_string().rfind(j["expected_s_prefix"].get<std::string>(), 0) == 0);
  CHECK(s->achieved <= p.tol);
  CHECK(abs(s->achieved - b(j["expected_achieved"].get<std::string>().c_str())) < b("1e-20"));
  CHECK(superx::verify_doubled(p, s->s) <= p.tol);
}

TEST_CASE("oracle is monotone in the tolerance") {
  WindingProblem p = problem({BigReal(1L, kP), sq(3)}, {b("0.2"), b("0.7")}, "2e-2");
  auto s = superx::solve_oracle(p);
  REQUIRE(s);
  for (const char* t : {"3e-2", "0.1", "0.3"}) {
    WindingProblem q = p;
    q.tol = b(t);
    CHECK(superx::achieved_distance(q, s->s) <= q.tol);
  }
}

TEST_CASE("oracle refuses insufficient precision") {
  WindingProblem p = problem({BigReal(1L, 64), sqrt(BigReal(2L, 64))}, {b("0.5"), b("0.5")}, "1e-2");
  p.s_max = BigReal::exp2i(40, 64);
  CHECK_THROWS_AS(superx::solve_oracle(p), superx::PrecisionError);
}

TEST_CASE("oracle chunks give the same answer with several workers") {
  WindingProblem p = problem({sq(2), sq(5)}, {b("0.1"), b("0.9")}, "5e-3");
  p.s_max = BigReal(100000L, kP);
  auto one = superx::solve_oracle(p);
  p.workers = 3;
  auto three = superx::solve_oracle(p);
  REQUIRE(one);
  REQUIRE(three);
  CHECK(one->s == three->s);
}

TEST_CASE("inductive examples") {
  {
    WindingProblem p = problem({BigReal(3L, kP)}, {b("0.3")}, "1e-6");
    auto s = superx::solve_inductive(p);
    REQUIRE(s);
    CHECK(abs(s->s - b("0.1")) < b("1e-70"));
  }
  {
    WindingProblem p = problem({sq(2), sq(3), sq(5)}, {b("0.11"), b("0.52"), b("0.93")}, "5e-2");
    auto s = superx::solve_inductive(p);
    REQUIRE(s);
    CHECK(s->achieved <= p.tol);
    for (size_t n = 0; n < 3; ++n) {
      BigReal v = superx::frac(BigReal(s->s * p.a[n]));
      CHECK(superx::wrap_dist(v, p.y[n], BigReal(1L, kP)) <= p.tol);
    }
  }
}

TEST_CASE("inductive and oracle agree on random (1, sqrt 2) targets") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0, 1);
  for (int t = 0; t < 50; ++t) {
    WindingProblem p = problem({BigReal(1L, kP), sq(2)}, {BigReal(u(rng), kP), BigReal(u(rng), kP)}, "1e-2");
    auto o = superx::solve_oracle(p);
    auto i = superx::solve_inductive(p);
    REQUIRE(o);
    REQUIRE(i);
    CHECK(o->achieved <= p.tol);
    CHECK(i->achieved <= p.tol);
    CHECK(superx::verify_doubled(p, o->s) <= p.tol);
    CHECK(superx::verify_doubled(p, i->s) <= p.tol);
  }
}

TEST_CASE("inductive handles modulus 2") {
  WindingProblem p = problem({sq(2), sq(3)}, {b("1.5"), b("0.25")}, "1e-2");
  p.modulus = BigReal(2L, kP);
  auto s = superx::solve_inductive(p);
  REQUIRE(s);
  CHECK(s->achieved <= p.tol);
}

TEST_CASE("inductive reports dependence and budget") {
  WindingProblem dep = problem({BigReal(1L, kP), BigReal(2L, kP)}, {b("0.5"), b("0.25")}, "0.05");
  CHECK_FALSE(superx::solve_inductive(dep));
  WindingProblem tight = problem({sq(2), sq(3), sq(5), sq(7)}, {b("0.1"), b("0.2"), b("0.3"), b("0.4")}, "1e-4");
  tight.iteration_cap = 50;
  CHECK_THROWS_AS(superx::solve_inductive(tight), superx::RecursionBudgetExceeded);
}

TEST_CASE("relation screen") {
  CHECK_FALSE(superx::relation_screen({sq(2), sq(3), sq(5)}).relation_found);
  auto r = superx::relation_screen({sq(2), sq(8), sq(3)});
  CHECK(r.relation_found);
  CHECK(r.lambda.size() == 3);
}

TEST_CASE("pick_w examples") {
  auto sine = [](const BigReal& x) { return sin(x); };
  auto pw = superx::pick_w(sine, BigReal(0L, kP), BigReal(1L, kP), 3);
  for (const BigReal& a : pw.a) {
    CHECK(a > -1);
    CHECK(a < 1);
  }
  CHECK(abs(pw.w) * 3 < 1);
  auto square = [](const BigReal& x) { return x * x; };
  CHECK_THROWS_AS(superx::pick_w(square, b("0.5"), BigReal(1L, kP), 5), superx::ScreenFailure);
  auto one = superx::pick_w(sine, BigReal(0L, kP), BigReal(1L, kP), 1);
  CHECK_FALSE(one.w.is_zero());
  CHECK_FALSE(sin(one.w).is_zero());
}

TEST_CASE("solution json") {
  WindingProblem p = problem({BigReal(2L, kP)}, {b("0.5")}, "1e-6");
  auto s = superx::solve_oracle(p);
  auto j = superx::to_json(*s);
  CHECK(j["format_version"] == 1);
  CHECK(BigReal::parse(j["s"].get<std::string>(), kP) == s->s);
  auto back = superx::problem_from_json(superx::to_json(p));
  CHECK(back.a[0] == p.a[0]);
}
