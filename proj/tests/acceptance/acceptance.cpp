// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 if any fails.
// Usage: acceptance [criterion ...]   (default: all of 1..10)

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "superx/build_a1.hpp"
#include "superx/build_a2.hpp"
#include "superx/build_a3.hpp"
#include "superx/multiplier.hpp"
#include "superx/netgraph_io.hpp"
#include "superx/pwl_audit.hpp"
#include "superx/special.hpp"
#include "superx/targets.hpp"
#include "superx/winding.hpp"

using superx::BigReal;
using superx::Precision;

namespace {

constexpr Precision kP = 256;

BigReal num(const char* s, Precision p = kP) { return BigReal::parse(s, p); }

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  // Records a named check; the first failing one is reported first.
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      failures.push_back(what);
    }
  }
  std::vector<std::string> failures;
};

std::string s6(const BigReal& x) { return x.to_string(6); }

superx::A1Options a1_options(int d, int M, const char* tol) {
  superx::A1Options o;
  o.grid = {d, M};
  o.tol = num(tol);
  o.sigma1 = superx::Sigma1::sin_on_unit(kP);
  o.precision = kP;
  o.samples = 10000;
  o.seed = 1;
  return o;
}

// 1. A1 end-to-end on x^2 and refinement.
void criterion1(Outcome& out) {
  const auto f = superx::make_target("square", 1, kP);
  const auto r8 = superx::build_a1(f, a1_options(1, 8, "1e-2"));
  const auto& a = r8.report;
  out.require(a.samples == 10000, "10^4 samples");
  out.require(a.measured_sup_error <= a.cert_error_bound, "M=8 measured <= certificate");
  // omega(1/8) + (B - A) tol = 15/64 + 1/100 <= 0.28
  out.require(a.cert_error_bound <= num("0.28"), "M=8 certificate <= 0.28");
  auto o16 = a1_options(1, 16, "5e-3");
  o16.auto_precision = true;
  const auto r16 = superx::build_a1(f, o16);
  const auto& b = r16.report;
  out.require(b.cert_error_bound < a.cert_error_bound, "refinement strictly reduces the certificate");
  out.require(b.measured_sup_error <= b.cert_error_bound, "M=16 measured <= certificate");
  out.detail << "M=8 measured " << s6(a.measured_sup_error) << " cert " << s6(a.cert_error_bound)
             << "; M=16 measured " << s6(b.measured_sup_error) << " cert " << s6(b.cert_error_bound) << " at "
             << b.precision_bits << " bits";
}

// 2. Multivariate A1: every one of the 16 cells hits its target.
void criterion2(Outcome& out) {
  const auto f = superx::make_target("linear", 2, kP);
  auto o = a1_options(2, 3, "1e-2");
  o.auto_precision = true;
  o.samples = 2000;
  const auto r = superx::build_a1(f, o);
  const Precision p = r.net.precision_bits();
  const superx::GridSpec g{2, 3};
  const BigReal allowed = (r.params.B - r.params.A) * BigReal(o.tol, p);
  BigReal worst(0L, p), worst_closed(0L, p);
  out.require(g.cells() == 16, "16 cells");
  for (long n = 1; n <= g.cells(); ++n) {
    const auto x = superx::cell_center(g, n, p);
    out.require(superx::grid_index(g, x) == n, "cell center maps to its cell");
    const BigReal y = r.params.targets.at(static_cast<size_t>(n - 1));
    worst = max(worst, abs(superx::evaluate(r.net, x) - y));
    worst_closed = max(worst_closed, abs(superx::u_eval(r.params, n) - y));
  }
  out.require(worst <= allowed, "network hits every cell target within (B - A) tol");
  out.require(worst_closed <= allowed, "closed form hits every cell target within (B - A) tol");
  out.require(r.report.measured_sup_error <= r.report.cert_error_bound, "measured <= certificate");
  out.detail << "max cell miss " << s6(worst) << " <= " << s6(allowed) << " at " << p << " bits";
}

// 3. Oracle and inductive solvers on 50 random instances.
void criterion3(Outcome& out) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const BigReal pool[4] = {BigReal(1L, kP), sqrt(BigReal(2L, kP)), sqrt(BigReal(3L, kP)),
                           sqrt(BigReal(5L, kP))};
  int solved = 0, false_positive = 0;
  long oracle_evals = 0;
  for (int t = 0; t < 50; ++t) {
    const int N = 1 + static_cast<int>(rng() % 3);
    std::vector<int> idx = {0, 1, 2, 3};
    std::shuffle(idx.begin(), idx.end(), rng);
    superx::WindingProblem p;
    for (int n = 0; n < N; ++n) {
      p.a.push_back(pool[idx[static_cast<size_t>(n)]]);
      p.y.push_back(BigReal(u(rng), kP));
    }
    p.tol = num("1e-2");
    p.modulus = BigReal(1L, kP);
    p.s_max = BigReal(1000000L, kP);
    p.step = BigReal(0L, kP);
    const auto o = superx::solve_oracle(p);
    const auto i = superx::solve_inductive(p);
    if (o && i) ++solved;
    for (const auto* s : {&o, &i}) {
      if (*s && !(superx::verify_doubled(p, (*s)->s) <= p.tol)) ++false_positive;
    }
    if (o) oracle_evals += o->evaluations;
  }
  out.require(solved == 50, "both solvers succeed on all 50 instances");
  out.require(false_positive == 0, "every solution re-verifies at doubled precision");
  out.detail << solved << "/50 solved by both, " << false_positive << " false positives, "
             << oracle_evals << " oracle evaluations";
}

// 4. Architecture fixity across targets.
void criterion4(Outcome& out) {
  const std::vector<std::string> targets = {"const:0.5", "linear", "square", "sin:1", "sin:2"};
  std::set<std::string> a1d1, a1d2, a2;
  std::set<std::string> w1;
  for (const auto& t : targets) {
    auto o = a1_options(1, 4, "1e-2");
    o.samples = 0;
    const auto r = superx::build_a1(superx::make_target(t, 1, kP), o);
    a1d1.insert(superx::skeleton(r.net));
    w1.insert(superx::to_json(r.net).dump());
    auto o2 = a1_options(2, 2, "1e-2");
    o2.samples = 0;
    o2.auto_precision = true;
    a1d2.insert(superx::skeleton(superx::build_a1(superx::make_target(t, 2, kP), o2).net));
    superx::A2Options oa;
    oa.M = 4;
    oa.tol = num("2e-2");
    oa.samples = 0;
    a2.insert(superx::skeleton(superx::build_a2(superx::make_target(t, 1, kP), oa).net));
  }
  out.require(a1d1.size() == 1, "A1 d=1 skeletons identical");
  out.require(a1d2.size() == 1, "A1 d=2 skeletons identical");
  out.require(a2.size() == 1, "A2 skeletons identical");
  out.require(w1.size() == targets.size(), "weights differ between targets");
  out.detail << "distinct skeletons: A1(d=1) " << a1d1.size() << ", A1(d=2) " << a1d2.size() << ", A2 "
             << a2.size() << " over " << targets.size() << " targets";
}

// 5. Partition of unity.
void criterion5(Outcome& out) {
  const BigReal tol = BigReal::exp2i(-248, kP);
  BigReal worst(0L, kP);
  std::vector<superx::BigVec> pts = superx::sample_points(1, 10000, 5, kP);
  for (int M : {8, 16}) {
    for (const auto& x : pts) {
      BigReal s(0L, kP);
      for (int q : superx::kA2Shifts) s += superx::psi_eval(M, q, x(0));
      worst = max(worst, abs(s - 1));
    }
  }
  out.require(worst <= tol, "max |sum psi_q - 1| <= 2^-248");
  out.detail << "max deviation " << s6(worst) << " over 2 x 10^4 points (M = 8, 16)";
}

// 6. Multiplier gadget.
void criterion6(Outcome& out) {
  superx::MultiplierParams mp;
  mp.act = superx::ActKind::Sin;
  mp.x0 = -BigReal::pi(kP) / 2;
  mp.delta = num("1e-3");
  mp.Cx = BigReal(10L, kP);
  mp.Cy = BigReal(10L, kP);
  const auto at = superx::multiplier_sweep(mp, {mp.delta}, 40, kP);
  // Random interior points on top of the lattice.
  const auto net = superx::multiplier_net(mp, kP);
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  BigReal worst = at[0].max_error;
  superx::BigVec xy(2);
  for (int i = 0; i < 2000; ++i) {
    xy(0) = BigReal(u(rng), kP);
    xy(1) = BigReal(u(rng), kP);
    worst = max(worst, abs(superx::evaluate(net, xy) - xy(0) * xy(1)));
  }
  out.require(worst <= num("1e-4"), "error <= 1e-4 for |x|, |y| <= 10 at delta = 1e-3");
  std::vector<BigReal> ds;
  for (const char* d : {"0.1", "0.05", "0.025", "0.0125", "0.00625", "0.003125"}) ds.push_back(num(d));
  const double order = superx::convergence_order(superx::multiplier_sweep(mp, ds, 10, kP));
  out.require(order >= 1.8 && order <= 2.2, "convergence order in [1.8, 2.2]");
  out.detail << "max error " << s6(worst) << " at delta 1e-3; order " << order;
}

// 7. sigma3 and the gadgets built from it.
void criterion7(Outcome& out) {
  const BigReal tol = BigReal::exp2i(-248, kP);
  const BigReal one(1L, kP), mone(-1L, kP);
  BigReal glue = abs(superx::sigma3_left(mone) - superx::sigma3_mid(mone));
  glue = max(glue, abs(superx::sigma3_mid(one) - superx::sigma3_right(one)));
  glue = max(glue, abs(superx::sigma3_deriv_left(mone) - superx::sigma3_deriv_mid(mone)));
  glue = max(glue, abs(superx::sigma3_deriv_mid(one) - superx::sigma3_deriv_right(one)));
  out.require(glue < tol, "C1 gluing residuals at +-1 below 2^-248");

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  bool mono = true, range = true;
  for (int i = 0; i < 10000; ++i) {
    const BigReal x(u(rng), kP);
    mono &= superx::sigma3_deriv(x) > 0;
    const BigReal v = superx::sigma3(x);
    range &= v > 0 && v < 7;
  }
  out.require(mono, "sigma3' > 0 on 10^4 samples");
  out.require(range, "0 < sigma3 < 7 on 10^4 samples");

  // Arcsin recovery from the one-sided difference quotient, interior points.
  auto asin_err = [&](const char* d) {
    BigReal w(0L, kP);
    for (int i = -90; i <= 90; i += 3) {
      const BigReal x = BigReal(i, kP) / 100;
      w = max(w, abs(superx::arcsin_via_sigma3(x, num(d)) - asin(x)));
    }
    return w;
  };
  const BigReal e3 = asin_err("1e-3"), e5 = asin_err("1e-5");
  const double order = (std::log(e3.to_double()) - std::log(e5.to_double())) / std::log(100.0);
  out.require(order >= 0.8 && order <= 1.2, "arcsin recovery order in [0.8, 1.2]");

  superx::Interval r{BigReal(-10L, kP), BigReal(10L, kP)};
  const auto g = superx::SinGadget::make(r, num("1e-5"), num("1e-5"));
  const BigReal budget = g.local_bound();
  BigReal worst(0L, kP);
  for (int i = -2000; i <= 2000; ++i) {
    const BigReal t = BigReal(i, kP) / 200;
    worst = max(worst, abs(superx::sin_via_sigma3(t, g) - sin(t)));
  }
  out.require(worst <= budget, "sin recovery error <= gadget budget on [-10, 10]");
  out.detail << "glue " << s6(glue) << "; arcsin order " << order << "; sin error " << s6(worst)
             << " <= budget " << s6(budget);
}

// 8. A2 -> A3 rewrite.
void criterion8(Outcome& out) {
  superx::A2Options o;
  o.M = 8;
  o.tol = num("1e-2");
  o.samples = 0;
  const auto a2 = superx::build_a2(superx::make_target("linear", 1, kP), o);
  superx::RewriteParams rp;
  rp.target_budget = num("1e-6");
  const auto rw = superx::rewrite_a2_to_a3(a2.net, rp);
  const Precision P = rw.net.precision_bits();
  const auto ref = a2.net.with_precision(P);
  BigReal worst(0L, P);
  for (const auto& x : superx::sample_points(1, 1000, 8, P)) {
    worst = max(worst, abs(superx::evaluate(rw.net, x) - superx::evaluate(ref, x)));
  }
  const auto& rep = rw.report;
  out.require(worst <= rep.total, "deviation <= composed budget on 10^3 points");
  out.require(rep.rewritten_nodes <= 20 * rep.source_nodes, "node count <= 20x source");
  bool only_sigma3 = true;
  for (const auto& n : rw.net.nodes()) {
    if (n.kind == superx::NodeKind::Hidden) only_sigma3 &= n.act.kind == superx::ActKind::Sigma3;
  }
  out.require(only_sigma3, "rewritten network uses only sigma3");
  out.detail << "deviation " << s6(worst) << " <= budget " << s6(rep.total) << "; nodes " << rep.source_nodes
             << " -> " << rep.rewritten_nodes << " at " << P << " bits";
}

// 9. Piecewise-linear audit.
void criterion9(Outcome& out) {
  std::mt19937_64 rng(9);
  std::ostringstream d;
  long exact_checks = 0;
  bool exact = true;
  for (const std::vector<int>& widths : {std::vector<int>{3}, std::vector<int>{2, 2}, std::vector<int>{4, 4, 4}}) {
    superx::Architecture a;
    a.widths = widths;
    const auto bound = superx::oscillation_bound(a);
    long observed = -1;
    bool sound = true, weight_free = true;
    for (int t = 0; t < 1000; ++t) {
      const auto net = superx::random_instance(a, rng());
      weight_free &= superx::oscillation_bound(net).sign_changes == bound.sign_changes;
      const auto f = superx::compose_network(net);
      const long sc = superx::sign_changes(f);
      observed = std::max(observed, sc);
      sound &= sc <= bound.sign_changes;
      for (int k = 0; k < 5; ++k) {
        const mpq_class x(static_cast<long>(rng() % 1000003), 1000003L);
        exact &= f(x) == superx::evaluate1<mpq_class>(net, x);
        ++exact_checks;
      }
      for (const auto& k : f.knots) {
        exact &= f(k) == superx::evaluate1<mpq_class>(net, k);
        ++exact_checks;
      }
    }
    const auto cert = superx::refutation_certificate(a, bound.sign_changes + 1);
    std::string name;
    for (int w : widths) name += (name.empty() ? "" : ",") + std::to_string(w);
    out.require(sound, "(" + name + ") observed <= bound");
    out.require(weight_free, "(" + name + ") bound independent of weights");
    out.require(cert.refuted, "(" + name + ") refutes sin((B+2) pi x)");
    d << "(" << name << ") bound " << bound.sign_changes << " observed " << observed << "; ";
  }
  out.require(exact, "compose_network equals the exact evaluator");
  out.detail << d.str() << exact_checks << " exact point checks";
}

// 10. Determinism of reports and networks.
void criterion10(Outcome& out) {
  auto strip = [](nlohmann::json j) {
    j.erase("wall_time");
    return j.dump();
  };
  auto a1 = [] {
    auto o = a1_options(1, 4, "1e-2");
    o.samples = 2000;
    o.seed = 42;
    o.workers = 2;
    return superx::build_a1(superx::make_target("square", 1, kP), o);
  };
  auto a2 = [] {
    superx::A2Options o;
    o.M = 4;
    o.tol = num("2e-2");
    o.samples = 500;
    o.seed = 42;
    return superx::build_a2(superx::make_target("sin:1", 1, kP), o);
  };
  const auto x1 = a1(), y1 = a1();
  const auto x2 = a2(), y2 = a2();
  superx::Architecture arch;
  arch.widths = {2, 2};
  const auto au = superx::audit(arch, 20, 200, 42).to_json().dump();
  const auto av = superx::audit(arch, 20, 200, 42).to_json().dump();
  out.require(strip(x1.report.to_json()) == strip(y1.report.to_json()), "A1 report identical");
  out.require(superx::to_json(x1.net).dump() == superx::to_json(y1.net).dump(), "A1 network identical");
  out.require(strip(x2.report.to_json()) == strip(y2.report.to_json()), "A2 report identical");
  out.require(superx::to_json(x2.net).dump() == superx::to_json(y2.net).dump(), "A2 network identical");
  out.require(au == av, "audit report identical");
  out.detail << "A1, A2 and audit outputs byte-identical across repeated seeded runs";
}

struct Criterion {
  int id;
  const char* name;
  std::function<void(Outcome&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {1, "A1 end-to-end", criterion1},        {2, "A1 multivariate", criterion2},
      {3, "winding cross-validation", criterion3}, {4, "architecture fixity", criterion4},
      {5, "partition of unity", criterion5},   {6, "multiplier gadget", criterion6},
      {7, "sigma3 correctness", criterion7},   {8, "A3 rewrite", criterion8},
      {9, "PWL audit", criterion9},            {10, "determinism", criterion10}};
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
  // Runtime limits in seconds.
  const std::map<int, double> limit = {{1, 300}, {2, 600}, {9, 120}};
  bool ok = true;
  for (const auto& c : all) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (auto it = limit.find(c.id); it != limit.end()) {
      o.require(secs <= it->second, "runtime <= " + std::to_string(static_cast<int>(it->second)) + " s");
    }
    std::printf("criterion %d (%s): %s [%.1f s] %s", c.id, c.name, o.pass ? "PASS" : "FAIL", secs,
                o.detail.str().c_str());
    for (const auto& f : o.failures) std::printf(" | failed: %s", f.c_str());
    std::printf("\n");
    std::fflush(stdout);
    ok &= o.pass;
  }
  return ok ? 0 : 1;
}
