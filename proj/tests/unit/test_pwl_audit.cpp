#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "superx/build_a1.hpp"
#include "superx/errors.hpp"
#include "superx/pwl_audit.hpp"
#include "superx/scalar.hpp"

using superx::Activation;
using superx::ActKind;
using superx::Architecture;
using superx::BigReal;
using superx::PwlFunc;

namespace {

mpq_class q(long n, long d = 1) { return mpq_class(n, d); }

PwlFunc relu(const PwlFunc& f) { return superx::apply_activation(f, Activation(ActKind::ReLU)); }

// Exact interpolant of the given knot values on [0, 1].
PwlFunc interpolant(const std::vector<mpq_class>& knots, const std::vector<mpq_class>& vals) {
  PwlFunc f;
  f.knots = knots;
  f.values = vals;
  for (size_t i = 0; i + 1 < knots.size(); ++i) {
    mpq_class s = (vals[i + 1] - vals[i]) / (knots[i + 1] - knots[i]);
    f.pieces.push_back({s, vals[i] - s * knots[i]});
  }
  f.validate();
  return f;
}

Architecture arch(std::vector<int> widths, ActKind k = ActKind::ReLU) {
  Architecture a;
  a.widths = std::move(widths);
  a.act = Activation(k);
  return a;
}

}  // namespace

TEST_CASE("relu of x - 1/2") {
  PwlFunc f = relu(PwlFunc::affine(1, q(-1, 2)));
  REQUIRE(f.breaks() == std::vector<mpq_class>{q(1, 2)});
  CHECK(f.pieces[0] == superx::PwlPiece{0, 0});
  CHECK(f.pieces[1] == superx::PwlPiece{1, q(-1, 2)});
  CHECK(!f.has_jump());
}

TEST_CASE("relu(x) - relu(x - 1/2)") {
  PwlFunc a = relu(PwlFunc::affine(1, 0));
  PwlFunc b = relu(PwlFunc::affine(1, q(-1, 2)));
  CHECK(a.breakpoint_count() == 0);
  PwlFunc f = superx::affine_combine({a, b}, {1, -1}, 0);
  REQUIRE(f.breaks() == std::vector<mpq_class>{q(1, 2)});
  CHECK(f.pieces[0].slope == 1);
  CHECK(f.pieces[1].slope == 0);
  CHECK(f(q(3, 4)) == q(1, 2));
}

TEST_CASE("step converts crossings to jumps") {
  PwlFunc f = superx::apply_activation(PwlFunc::affine(-1, q(1, 3)), Activation(ActKind::Step));
  REQUIRE(f.breakpoint_count() == 1);
  CHECK(f.jump_at(1));
  CHECK(f(q(1, 3)) == 1);  // Step(0) = 1
  CHECK(f(q(1, 2)) == 0);
  CHECK(f(0) == 1);
}

TEST_CASE("leaky relu keeps the negative side") {
  Activation a = Activation::leaky_relu(BigReal::parse("0.25", 64));
  PwlFunc f = superx::apply_activation(PwlFunc::affine(2, -1), a);
  CHECK(f(0) == q(-1, 4));
  CHECK(f(1) == 1);
  CHECK(f.breakpoint_count() == 1);
}

TEST_CASE("apply_activation at most doubles plus one") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> u(-40, 40);
  for (int t = 0; t < 200; ++t) {
    std::vector<mpq_class> knots{0}, vals{q(u(rng), 7)};
    for (int i = 1; i <= 6; ++i) {
      knots.push_back(q(i, 6));
      vals.push_back(q(u(rng), 7));
    }
    PwlFunc f = interpolant(knots, vals);
    f.normalize();
    for (ActKind k : {ActKind::ReLU, ActKind::Step}) {
      PwlFunc g = superx::apply_activation(f, Activation(k));
      g.validate();
      CHECK(g.breakpoint_count() <= 2 * f.breakpoint_count() + 1);
    }
  }
}

TEST_CASE("domain mismatch") {
  CHECK_THROWS_AS(superx::affine_combine({PwlFunc::affine(1, 0), PwlFunc::affine(1, 0, 0, 2)},
                                         {1, 1}, 0),
                  superx::DomainMismatch);
}

TEST_CASE("sign change examples") {
  CHECK(superx::sign_changes(PwlFunc::affine(0, 1)) == 0);
  CHECK(superx::sign_changes(PwlFunc::affine(0, 0)) == -1);
  std::vector<mpq_class> knots, vals;
  const long pattern[4] = {0, 1, 0, -1};
  for (long k = 0; k <= 10; ++k) {
    knots.push_back(q(k, 10));
    vals.push_back(pattern[k % 4]);
  }
  CHECK(superx::sign_changes(interpolant(knots, vals)) == 4);
}

TEST_CASE("zero pieces carry no sign") {
  // 1, then 0 on [1/3, 2/3], then 1: still no alternation.
  PwlFunc f = interpolant({0, q(1, 3), q(2, 3), 1}, {1, 0, 0, 1});
  CHECK(superx::sign_changes(f) == 0);
  CHECK(superx::sign_changes(superx::affine_combine({f}, {-1}, 0)) == -1);
  CHECK(superx::sign_changes(superx::affine_combine({f}, {-1}, q(1, 2))) == 1);
}

TEST_CASE("isolated step spike is counted") {
  // Step(-|x - 1/2|) is the indicator of {1/2}; minus 1/2 alternates - + -.
  PwlFunc a = relu(PwlFunc::affine(1, q(-1, 2)));
  PwlFunc b = relu(PwlFunc::affine(-1, q(1, 2)));
  PwlFunc abs = superx::affine_combine({a, b}, {-1, -1}, 0);
  PwlFunc spike = superx::apply_activation(abs, Activation(ActKind::Step));
  PwlFunc f = superx::affine_combine({spike}, {1}, q(-1, 2));
  CHECK(superx::sign_changes(f) == 1);
  CHECK(superx::sign_changes(superx::affine_combine({f}, {-1}, 0)) == 2);
}

TEST_CASE("architecture bounds") {
  CHECK(superx::oscillation_bound(arch({2, 2})).breakpoints == 10);
  CHECK(superx::oscillation_bound(arch({2, 2})).sign_changes == 11);
  CHECK(superx::oscillation_bound(arch({3})).sign_changes == 4);
  CHECK(superx::oscillation_bound(arch({3}, ActKind::Step)).jumps);
  CHECK_THROWS_AS(superx::oscillation_bound(arch({3}, ActKind::Sin)), superx::NonPwlActivation);
}

TEST_CASE("refutation certificate") {
  auto c = superx::refutation_certificate(arch({3}), 100);
  CHECK(c.refuted);
  CHECK(c.bound == 4);
  CHECK(c.witness_points.size() == 101);
  CHECK(c.to_json()["verdict"] == "Refuted");
  CHECK(!superx::refutation_certificate(arch({3}), 2).refuted);
}

TEST_CASE("identity network has no breakpoints") {
  superx::GraphBuilder g(1, 64);
  auto h = g.neuron(Activation(ActKind::Identity), g.input(0) * BigReal(2L, 64), "id");
  PwlFunc f = superx::compose_network(g.finish(h));
  CHECK(f.breakpoint_count() == 0);
  CHECK(f(q(1, 3)) == q(2, 3));
}

TEST_CASE("non pwl networks are rejected") {
  superx::GraphBuilder g(1, 64);
  auto h = g.neuron(Activation(ActKind::Sin), g.input(0), "s");
  CHECK_THROWS_AS(superx::compose_network(g.finish(h)), superx::NonPwlActivation);
}

TEST_CASE("composition is exact, sound and weight independent") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> num(0, 1 << 20);
  for (auto a : {arch({3}), arch({2, 2}), arch({4, 4}, ActKind::Step),
                 arch({3, 3}, ActKind::LeakyReLU)}) {
    if (a.act.kind == ActKind::LeakyReLU) a.act = Activation::leaky_relu(BigReal::parse("0.125", 64));
    const auto bound = superx::oscillation_bound(a);
    for (int t = 0; t < 100; ++t) {
      const auto net = superx::random_instance(a, rng());
      CHECK(superx::oscillation_bound(net).sign_changes == bound.sign_changes);
      PwlFunc f = superx::compose_network(net);
      f.validate();
      CHECK(static_cast<long>(f.breakpoint_count()) <= bound.breakpoints);
      CHECK(superx::sign_changes(f) <= bound.sign_changes);
      for (int k = 0; k < 10; ++k) {
        mpq_class x(num(rng), 1 << 20);
        CHECK(f(x) == superx::evaluate1<mpq_class>(net, x));
      }
      for (const auto& bk : f.knots) CHECK(f(bk) == superx::evaluate1<mpq_class>(net, bk));
    }
  }
}

TEST_CASE("audit report") {
  auto r = superx::audit(arch({2, 2}), 12, 50, 3);
  auto j = r.to_json();
  CHECK(j["format_version"] == 1);
  CHECK(j["bound"] == 11);
  CHECK(j["max_observed"].get<long>() <= 11);
  CHECK(j["max_observed"].get<long>() >= 1);
  CHECK(j["refutation"]["verdict"] == "Refuted");
  CHECK(superx::audit(arch({2, 2}), 12, 50, 3).to_json() == j);
}

TEST_CASE("sin/floor networks of fixed architecture alternate without bound") {
  std::string skel;
  for (int M : {4, 8, 16}) {
    const superx::Precision p = 512;
    auto f = superx::make_target("sin:" + std::to_string(M / 2), 1, p);
    superx::A1Options o;
    o.grid = {1, M};
    o.tol = BigReal::parse("0.2", p);
    o.sigma1 = superx::Sigma1::sin_on_unit(p);
    o.precision = p;
    o.samples = 0;
    o.w_start = 1e-4;
    auto r = superx::build_a1(f, o);
    if (skel.empty()) skel = superx::skeleton(r.net);
    CHECK(superx::skeleton(r.net) == skel);
    std::vector<mpq_class> knots, vals;
    for (int k = 0; k < M; ++k) {
      superx::BigVec x(1);
      x(0) = BigReal(2L * k + 1, p) / (2L * M);
      knots.push_back(q(2L * k + 1, 2L * M));
      vals.push_back(superx::to_rational(superx::evaluate(r.net, x)));
    }
    CHECK(superx::sign_changes(interpolant(knots, vals)) >= M - 1);
  }
}
