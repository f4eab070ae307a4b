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

// superx command-line driver: build | eval | verify | solve | audit | mult-demo.
//
// Exit codes: 0 success, 1 certificate or verification mismatch, 2 solver or
// screen failure, 3 precision failure, 64 usage error, 65 bad input data.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "superx/build_a1.hpp"
#include "superx/build_a2.hpp"
#include "superx/build_a3.hpp"
#include "superx/errors.hpp"
#include "superx/multiplier.hpp"
#include "superx/netgraph_io.hpp"
#include "superx/pwl_audit.hpp"
#include "superx/report.hpp"
#include "superx/targets.hpp"
#include "superx/winding.hpp"

using nlohmann::json;
using superx::BigReal;
using superx::Precision;

namespace {

constexpr int kExitMismatch = 1;
constexpr int kExitSolver = 2;
constexpr int kExitPrecision = 3;
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string family = "a1";
  std::string target = "square";
  int d = 1;
  int M = 8;
  std::string tol = "1e-2";
  long precision_bits = superx::kDefaultPrecision;
  std::uint64_t seed = 1;
  std::string s_max;
  long samples = 10000;
  std::string solver = "inductive";
  std::string sigma1 = "sin";
  bool auto_precision = false;
  long iteration_cap = 1000000;
  double w_start = 1e-3;
  std::string budget = "1e-6";
  std::string fd_step;
  std::string mult_delta;
  std::optional<long> sin_shift;
  std::string out;
  std::string report;
  int workers = 0;
};

int default_workers() { return std::max(1u, std::thread::hardware_concurrency()); }

// SUPERX_PRECISION_BITS wins over flags and config files.
Precision resolve_precision(long configured) {
  if (const char* env = std::getenv("SUPERX_PRECISION_BITS"); env && *env) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 2) throw UsageError("SUPERX_PRECISION_BITS must be an integer >= 2");
    return v;
  }
  if (configured < 2) throw UsageError("precision must be at least 2 bits");
  return configured;
}

// Values from a RunConfig JSON file fill every option not given on the
// command line.
void apply_config_file(const std::string& path, const CLI::App& cmd, RunConfig& c) {
  const json j = superx::read_json_file(path);
  superx::require_format_version(j, "run config");
  auto take = [&](const char* key, const char* flag, auto& field) {
    if (!j.contains(key) || cmd.count(flag) > 0) return;
    using T = std::decay_t<decltype(field)>;
    if constexpr (std::is_same_v<T, std::optional<long>>) {
      field = j.at(key).get<long>();
    } else if constexpr (std::is_same_v<T, std::string>) {
      field = j.at(key).is_string() ? j.at(key).get<std::string>() : j.at(key).dump();
    } else {
      field = j.at(key).get<T>();
    }
  };
  take("family", "--family", c.family);
  take("target", "--target", c.target);
  take("d", "--d", c.d);
  take("M", "--M", c.M);
  take("tol", "--tol", c.tol);
  take("precision_bits", "--precision", c.precision_bits);
  take("seed", "--seed", c.seed);
  take("s_max", "--s-max", c.s_max);
  take("samples", "--samples", c.samples);
  take("solver", "--solver", c.solver);
  take("sigma1", "--sigma1", c.sigma1);
  take("auto_precision", "--auto-precision", c.auto_precision);
  take("iteration_cap", "--iteration-cap", c.iteration_cap);
  take("w_start", "--w-start", c.w_start);
  take("budget", "--budget", c.budget);
  take("fd_step", "--fd-step", c.fd_step);
  take("mult_delta", "--mult-delta", c.mult_delta);
  take("sin_shift", "--sin-shift", c.sin_shift);
  take("out", "--out", c.out);
  take("report", "--report", c.report);
  take("workers", "--workers", c.workers);
}

void emit_json(const json& j, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << "\n";
  } else {
    superx::write_json_file(j, path);
  }
}

// Opens `path` for writing, or stdout for "" / "-".
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path);
      if (!file_) throw superx::SchemaError("cannot write '" + path + "'");
    }
  }
  std::ostream& os() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

int cmd_build(RunConfig c) {
  const Precision prec = resolve_precision(c.precision_bits);
  const int workers = c.workers > 0 ? c.workers : default_workers();
  if (c.family != "a1" && c.family != "a2" && c.family != "a3") {
    throw UsageError("family must be a1, a2 or a3");
  }
  if (c.family != "a1" && c.d != 1) {
    throw UsageError("family " + c.family +
                     " is univariate; multivariate targets are built with family a1");
  }
  if (c.d < 1 || c.M < 1 || c.samples < 0) throw UsageError("d, M must be positive and samples >= 0");
  const superx::Target f = superx::make_target(c.target, c.d, prec);
  superx::NetGraph net;
  json report;
  if (c.family == "a1") {
    superx::A1Options o;
    o.grid = {c.d, c.M};
    o.tol = BigReal::parse(c.tol, prec);
    o.sigma1 = superx::Sigma1::parse(c.sigma1, prec);
    o.solver = c.solver;
    o.precision = prec;
    o.auto_precision = c.auto_precision;
    o.iteration_cap = c.iteration_cap;
    if (!c.s_max.empty()) o.s_max = BigReal::parse(c.s_max, prec);
    o.samples = c.samples;
    o.seed = c.seed;
    o.workers = workers;
    o.w_start = c.w_start;
    auto r = superx::build_a1(f, o);
    net = std::move(r.net);
    report = r.report.to_json();
  } else {
    superx::A2Options o;
    o.M = c.M;
    o.tol = BigReal::parse(c.tol, prec);
    o.precision = prec;
    o.auto_precision = c.auto_precision;
    o.iteration_cap = c.iteration_cap;
    o.samples = c.samples;
    o.seed = c.seed;
    o.workers = workers;
    o.w_start = c.w_start;
    if (c.family == "a2") {
      auto r = superx::build_a2(f, o);
      net = std::move(r.net);
      report = r.report.to_json();
    } else {
      superx::RewriteParams rp;
      rp.target_budget = BigReal::parse(c.budget, prec);
      rp.precision = prec;
      if (!c.fd_step.empty()) rp.fd_step = BigReal::parse(c.fd_step, prec);
      if (!c.mult_delta.empty()) rp.mult_delta = BigReal::parse(c.mult_delta, prec);
      rp.sin_shift = c.sin_shift;
      auto r = superx::build_a3(f, o, rp);
      net = std::move(r.net);
      report = r.report.to_json();
      report["rewrite"] = r.rewrite.to_json();
    }
  }
  if (!c.out.empty()) superx::save(net, c.out);
  emit_json(report, c.report);
  const BigReal measured = BigReal::parse(report["measured_sup_error"].get<std::string>(), prec);
  const BigReal cert = BigReal::parse(report["cert_error_bound"].get<std::string>(), prec);
  if (measured > cert) {
    std::cerr << "superx: measured error exceeds the certified bound\n";
    return kExitMismatch;
  }
  return 0;
}

std::vector<superx::BigVec> parse_points(const std::vector<std::string>& xs, int d, Precision prec) {
  std::vector<superx::BigVec> pts;
  for (const auto& s : xs) {
    auto parts = split(s, ',');
    if (static_cast<int>(parts.size()) != d) {
      throw UsageError("point '" + s + "' needs " + std::to_string(d) + " comma-separated coordinates");
    }
    superx::BigVec x(d);
    for (int k = 0; k < d; ++k) x(k) = BigReal::parse(parts[static_cast<size_t>(k)], prec);
    pts.push_back(std::move(x));
  }
  return pts;
}

int cmd_eval(const std::string& network, const std::vector<std::string>& xs, long samples,
             std::uint64_t seed, int digits, const std::string& out, long precision_flag, bool have_prec) {
  const std::optional<long> env_or_flag =
      std::getenv("SUPERX_PRECISION_BITS") || have_prec ? std::optional<long>(resolve_precision(precision_flag))
                                                         : std::nullopt;
  const superx::NetGraph net = superx::load(network, env_or_flag.value_or(0));
  const Precision prec = net.precision_bits();
  const int d = net.input_count();
  std::vector<superx::BigVec> pts = parse_points(xs, d, prec);
  if (samples > 0) {
    auto more = superx::sample_points(d, samples, seed, prec, 0, BigReal(0L, prec));
    pts.insert(pts.end(), more.begin(), more.end());
  }
  if (pts.empty()) throw UsageError("eval needs --x points or --samples");
  Sink sink(out);
  std::ostream& os = sink.os();
  for (int k = 0; k < d; ++k) os << (d == 1 ? std::string("x") : "x" + std::to_string(k + 1)) << ",";
  os << "net_value\n";
  for (const auto& x : pts) {
    for (int k = 0; k < d; ++k) os << x(k).to_string(digits) << ",";
    os << superx::evaluate(net, x).to_string(digits) << "\n";
  }
  return 0;
}

struct VerifyArgs {
  std::string network;
  std::string target;
  std::string report;
  std::string out;
  long samples = 10000;
  std::uint64_t seed = 1;
  int cell_M = 0;
  long face_offset_log2 = 0;
  int workers = 0;
};

int cmd_verify(VerifyArgs a, CLI::App& cmd) {
  std::optional<json> ref;
  if (!a.report.empty()) {
    ref = superx::read_json_file(a.report);
    superx::require_format_version(*ref, "build report");
    const json& r = *ref;
    if (cmd.count("--samples") == 0) a.samples = r.at("samples").get<long>();
    if (cmd.count("--seed") == 0) a.seed = r.at("seed").get<std::uint64_t>();
    if (cmd.count("--target") == 0 && r.contains("target")) a.target = r.at("target").get<std::string>();
    if (r.at("family") == "A1") {
      if (cmd.count("--cell-M") == 0) a.cell_M = r.at("M").get<int>();
      if (cmd.count("--face-offset-log2") == 0) a.face_offset_log2 = -20;
    }
  }
  if (a.target.empty()) throw UsageError("verify needs --target or --report");
  const std::optional<long> override =
      std::getenv("SUPERX_PRECISION_BITS") ? std::optional<long>(resolve_precision(0)) : std::nullopt;
  const superx::NetGraph net = superx::load(a.network, override.value_or(0));
  const Precision prec = net.precision_bits();
  const superx::Target f = superx::make_target(a.target, net.input_count(), prec);
  const BigReal offset = a.cell_M > 0 ? BigReal::exp2i(a.face_offset_log2, prec) : BigReal(0L, prec);
  const auto pts = superx::sample_points(net.input_count(), a.samples, a.seed, prec, a.cell_M, offset);
  const auto se = superx::measure_sup_error(net, f, pts, a.workers > 0 ? a.workers : default_workers());
  json j = {{"format_version", 1},
            {"target", a.target},
            {"samples", se.samples},
            {"seed", a.seed},
            {"cell_M", a.cell_M},
            {"face_offset_log2", a.face_offset_log2},
            {"precision_bits", prec},
            {"measured_sup_error", se.sup.to_string(17)}};
  if (se.worst_x.size() > 0) {
    json w = json::array();
    for (int k = 0; k < se.worst_x.size(); ++k) w.push_back(se.worst_x(k).to_string(17));
    j["worst_x"] = w;
  }
  int code = 0;
  if (ref) {
    const BigReal reported = BigReal::parse(ref->at("measured_sup_error").get<std::string>(), prec);
    const BigReal diff = abs(reported - se.sup);
    // Reports round to 17 digits, so the comparison allows that rounding too.
    const BigReal slack = BigReal::exp2i(-(static_cast<long>(prec) - 10), prec) + abs(reported) * BigReal::parse("1e-16", prec);
    j["reported_sup_error"] = reported.to_string(17);
    j["reproduced"] = diff <= slack;
    if (!(diff <= slack)) code = kExitMismatch;
  }
  emit_json(j, a.out);
  return code;
}

int cmd_solve(const std::string& problem, const std::string& solver_flag, const std::string& out) {
  const json j = superx::read_json_file(problem);
  const std::optional<long> override =
      std::getenv("SUPERX_PRECISION_BITS") ? std::optional<long>(resolve_precision(0)) : std::nullopt;
  const superx::WindingProblem p = superx::problem_from_json(j, override.value_or(0));
  std::string solver = solver_flag;
  if (solver.empty()) solver = j.value("solver", std::string("inductive"));
  std::optional<superx::WindingSolution> sol;
  if (solver == "oracle") {
    sol = superx::solve_oracle(p);
  } else if (solver == "inductive") {
    sol = superx::solve_inductive(p);
  } else {
    throw UsageError("solver must be 'oracle' or 'inductive'");
  }
  if (!sol) throw superx::SolverFailure("no s within the search bounds meets the tolerance");
  json r = superx::to_json(*sol);
  r["verified_doubled"] = superx::verify_doubled(p, sol->s).to_string(17);
  emit_json(r, out);
  return 0;
}

int cmd_audit(const std::string& arch_file, const std::string& widths, const std::string& activation,
              long N, long draws, std::uint64_t seed, const std::string& out) {
  superx::Architecture a;
  if (!arch_file.empty()) {
    const json j = superx::read_json_file(arch_file);
    superx::require_format_version(j, "architecture");
    a = superx::Architecture::from_json(j);
  } else {
    if (widths.empty()) throw UsageError("audit needs --arch or --widths");
    json j = {{"widths", json::array()}, {"activation", activation}};
    for (const auto& w : split(widths, ',')) j["widths"].push_back(std::stoi(w));
    a = superx::Architecture::from_json(j);
  }
  if (N < 0 || draws < 0) throw UsageError("N and draws must be nonnegative");
  emit_json(superx::audit(a, N, draws, seed).to_json(), out);
  return 0;
}

int cmd_mult_demo(const std::string& act, const std::string& bound, const std::string& deltas, int grid,
                  long precision_flag, const std::string& csv, const std::string& out) {
  const Precision prec = resolve_precision(precision_flag);
  superx::MultiplierParams mp;
  if (act == "sin") {
    mp.act = superx::ActKind::Sin;
    mp.x0 = -BigReal::pi(prec) / 2;
  } else if (act == "sigma3") {
    mp.act = superx::ActKind::Sigma3;
    mp.x0 = BigReal(0L, prec);
  } else {
    throw UsageError("mult-demo activation must be sin or sigma3");
  }
  mp.Cx = BigReal::parse(bound, prec);
  mp.Cy = mp.Cx;
  std::vector<BigReal> ds;
  for (const auto& s : split(deltas, ',')) ds.push_back(BigReal::parse(s, prec));
  const auto rows = superx::multiplier_sweep(mp, ds, grid, prec);
  const double order = rows.size() >= 2 ? superx::convergence_order(rows) : 0.0;
  {
    Sink sink(csv);
    sink.os() << "delta,max_error,bound\n";
    for (const auto& r : rows) {
      sink.os() << r.delta.to_string(17) << "," << r.max_error.to_string(17) << "," << r.bound.to_string(17)
                << "\n";
    }
  }
  if (!out.empty()) {
    json j = {{"format_version", 1}, {"activation", act}, {"x0", mp.x0.to_string(17)}, {"C", bound},
              {"grid", grid}, {"precision_bits", prec}, {"order", order}, {"rows", json::array()}};
    for (const auto& r : rows) {
      j["rows"].push_back({{"delta", r.delta.to_string(17)},
                           {"max_error", r.max_error.to_string(17)},
                           {"bound", r.bound.to_string(17)}});
    }
    emit_json(j, out);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"superx: fixed-architecture superexpressive networks"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  RunConfig cfg;
  std::string config_file;
  auto* build = app.add_subcommand("build", "Build a network and its certificate report");
  build->add_option("--config", config_file, "RunConfig JSON supplying defaults");
  build->add_option("--family", cfg.family, "a1 | a2 | a3")->check(CLI::IsMember({"a1", "a2", "a3"}));
  build->add_option("--target", cfg.target, "const:c | linear | square | sin:k | step | csv:path");
  build->add_option("--d", cfg.d, "input dimension");
  build->add_option("--M", cfg.M, "grid resolution");
  build->add_option("--tol", cfg.tol, "winding tolerance");
  build->add_option("--precision", cfg.precision_bits, "working precision in bits");
  build->add_option("--seed", cfg.seed);
  build->add_option("--s-max", cfg.s_max, "oracle search bound");
  build->add_option("--samples", cfg.samples, "interior samples for the measured error");
  build->add_option("--solver", cfg.solver, "inductive | oracle (a1)");
  build->add_option("--sigma1", cfg.sigma1, "sin | exp (a1)");
  build->add_flag("--auto-precision", cfg.auto_precision, "double precision on failure");
  build->add_option("--iteration-cap", cfg.iteration_cap);
  build->add_option("--w-start", cfg.w_start);
  build->add_option("--budget", cfg.budget, "a3 rewrite error budget");
  build->add_option("--fd-step", cfg.fd_step, "a3 arcsin step (pins it)");
  build->add_option("--mult-delta", cfg.mult_delta, "a3 sin gadget step (pins it)");
  build->add_option("--sin-shift", cfg.sin_shift, "a3 sin shift (pins it)");
  build->add_option("--out", cfg.out, "network JSON path");
  build->add_option("--report", cfg.report, "report JSON path (default stdout)");
  build->add_option("--workers", cfg.workers, "worker threads (default: all cores)");

  std::string net_file, eval_out;
  std::vector<std::string> eval_x;
  long eval_samples = 0;
  std::uint64_t eval_seed = 1;
  int eval_digits = 17;
  long eval_prec = 0;
  auto* eval = app.add_subcommand("eval", "Evaluate a network; CSV columns x..., net_value");
  eval->add_option("--network", net_file)->required();
  eval->add_option("--x", eval_x, "point, comma-separated for d > 1 (repeatable)");
  eval->add_option("--samples", eval_samples, "additional seeded random points");
  eval->add_option("--seed", eval_seed);
  eval->add_option("--digits", eval_digits, "significant digits");
  eval->add_option("--precision", eval_prec, "re-parse the network at this precision");
  eval->add_option("--out", eval_out, "CSV path (default stdout)");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Re-measure a network's sup error against a target");
  verify->add_option("--network", va.network)->required();
  verify->add_option("--target", va.target);
  verify->add_option("--report", va.report, "build report to reproduce");
  verify->add_option("--samples", va.samples);
  verify->add_option("--seed", va.seed);
  verify->add_option("--cell-M", va.cell_M, "keep samples 2^offset away from cell faces of this grid");
  verify->add_option("--face-offset-log2", va.face_offset_log2);
  verify->add_option("--workers", va.workers);
  verify->add_option("--out", va.out);

  std::string problem, solver, solve_out;
  auto* solve = app.add_subcommand("solve", "Solve a winding problem JSON");
  solve->add_option("--problem", problem)->required();
  solve->add_option("--solver", solver, "oracle | inductive (default: file, else inductive)");
  solve->add_option("--out", solve_out);

  std::string arch_file, widths, activation = "relu", audit_out;
  long audit_N = 0, draws = 1000;
  std::uint64_t audit_seed = 1;
  auto* audit = app.add_subcommand("audit", "Oscillation audit of a piecewise-linear architecture");
  audit->add_option("--arch", arch_file, "architecture JSON {format_version, widths, activation}");
  audit->add_option("--widths", widths, "hidden widths, e.g. 2,2");
  audit->add_option("--activation", activation, "relu | leaky_relu:a | step");
  audit->add_option("--N", audit_N, "sign changes demanded by sin((N+1) pi x)");
  audit->add_option("--draws", draws);
  audit->add_option("--seed", audit_seed);
  audit->add_option("--out", audit_out);

  std::string mact = "sin", mbound = "10", mdeltas = "0.1,0.05,0.025,0.0125,0.00625,0.003125";
  std::string mcsv, mout;
  int mgrid = 20;
  long mprec = superx::kDefaultPrecision;
  auto* mult = app.add_subcommand("mult-demo", "Multiplier gadget error sweep over delta (CSV)");
  mult->add_option("--activation", mact, "sin | sigma3");
  mult->add_option("--bound", mbound, "|x|, |y| bound");
  mult->add_option("--deltas", mdeltas, "comma-separated deltas");
  mult->add_option("--grid", mgrid, "lattice intervals per axis");
  mult->add_option("--precision", mprec);
  mult->add_option("--csv", mcsv, "CSV path (default stdout)");
  mult->add_option("--json", mout, "JSON summary with the fitted order");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*build) {
      if (!config_file.empty()) apply_config_file(config_file, *build, cfg);
      return cmd_build(cfg);
    }
    if (*eval) {
      return cmd_eval(net_file, eval_x, eval_samples, eval_seed, eval_digits, eval_out, eval_prec,
                      eval->count("--precision") > 0);
    }
    if (*verify) return cmd_verify(va, *verify);
    if (*solve) return cmd_solve(problem, solver, solve_out);
    if (*audit) return cmd_audit(arch_file, widths, activation, audit_N, draws, audit_seed, audit_out);
    if (*mult) return cmd_mult_demo(mact, mbound, mdeltas, mgrid, mprec, mcsv, mout);
  } catch (const UsageError& e) {
    std::cerr << "superx: usage: " << e.what() << "\n";
    return kExitUsage;
  } catch (const superx::SolverFailure& e) {
    std::cerr << "superx: solver failure: " << e.what() << "\n";
    return kExitSolver;
  } catch (const superx::ScreenFailure& e) {
    std::cerr << "superx: screen failure: " << e.what() << "\n";
    return kExitSolver;
  } catch (const superx::PrecisionError& e) {
    std::cerr << "superx: precision failure: " << e.what() << "\n";
    return kExitPrecision;
  } catch (const std::exception& e) {
    std::cerr << "superx: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
