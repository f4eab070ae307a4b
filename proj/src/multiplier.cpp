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

#include "superx/multiplier.hpp"

namespace superx {

BigReal second_derivative(ActKind act, const BigReal& x0) {
  switch (act) {
    case ActKind::Sin:
      return -sin(x0);
    case ActKind::Sigma3:
      if (!x0.is_zero()) throw SchemaError("the sigma3 multiplier expands at x0 = 0");
      return 1 / BigReal::pi(x0.precision());
    default:
      throw SchemaError("multiplier activation must be sin or sigma3");
  }
}

namespace {

// v asin v + sqrt(1 - v^2) - 1, the even part of pi sigma3 around 0.
BigReal sigma3_even(const BigReal& v) { return v * asin(v) + sqrt(BigReal(1 - v * v)) - 1; }

}  // namespace

BigReal square_error(ActKind act, const BigReal& delta) {
  const BigReal d2 = delta * delta;
  switch (act) {
    case ActKind::Sin:
      // S(u) = 2 (1 - cos(delta u)) / delta^2 <= u^2.
      return 1 - 2 * (1 - cos(delta)) / d2;
    case ActKind::Sigma3:
      // S(u) = 2 F(delta u) / delta^2 >= u^2.
      return 2 * sigma3_even(delta) / d2 - 1;
    default:
      throw SchemaError("multiplier activation must be sin or sigma3");
  }
}

BigReal square_slope_error(ActKind act, const BigReal& delta) {
  switch (act) {
    case ActKind::Sin:
      // S'(u) = 2 sin(delta u) / delta.
      return 2 * (delta - sin(delta)) / delta;
    case ActKind::Sigma3:
      // S'(u) = 2 asin(delta u) / delta.
      return 2 * (asin(delta) - delta) / delta;
    default:
      throw SchemaError("multiplier activation must be sin or sigma3");
  }
}

BigReal multiplier_error_bound(const MultiplierParams& mp) {
  return abs(mp.Cx) * abs(mp.Cy) * square_error(mp.act, mp.delta);
}

BigReal delta_for_square_error(ActKind act, const BigReal& e) {
  const Precision p = e.precision();
  BigReal hi = BigReal::parse("0.9", p);
  if (square_error(act, hi) <= e) return hi;
  BigReal lo = hi;
  while (square_error(act, lo) > e) lo /= 2;
  hi = lo * 2;
  // Leading behaviour is delta^2 / 12 in both cases; bisect geometrically.
  for (int i = 0; i < 60 && hi / lo > BigReal(1.0001, p); ++i) {
    BigReal mid = sqrt(BigReal(lo * hi));
    if (square_error(act, mid) <= e) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

void check_multiplier(const MultiplierParams& mp) {
  const Precision p = mp.x0.precision();
  BigReal c = second_derivative(mp.act, mp.x0);
  if (abs(c) < BigReal::exp2i(-static_cast<long>(p) / 2, p)) {
    throw CurvatureError("second derivative at the expansion point is too small");
  }
  if (!(mp.delta > 0) || (mp.act == ActKind::Sigma3 && !(mp.delta <= 1))) {
    throw SchemaError("multiplier step out of range");
  }
  if (!(mp.Cx > 0) || !(mp.Cy > 0)) throw SchemaError("multiplier bounds must be positive");
}

LinearForm square_form(GraphBuilder& g, ActKind act, const BigReal& x0, const BigReal& delta,
                       const LinearForm& u, const std::string& label, bool fold_constant) {
  const BigReal x0p = g.num(x0), dp = g.num(delta);
  const BigReal norm = 1 / (second_derivative(act, x0p) * dp * dp);
  LinearForm up = g.neuron(act, g.constant(x0p) + u * dp, label + ".p");
  LinearForm dn = g.neuron(act, g.constant(x0p) - u * dp, label + ".m");
  LinearForm mid;
  if (fold_constant) {
    mid = g.constant(apply_activation(Activation(act), x0p));
  } else {
    mid = g.neuron(act, g.constant(x0p), label + ".c");
  }
  return (up + dn - mid * g.num(2)) * norm;
}

LinearForm multiply_forms(GraphBuilder& g, const MultiplierParams& mp, const LinearForm& x,
                          const LinearForm& y, const std::string& label, bool fold_constants) {
  const BigReal half = BigReal::exp2i(-1, g.precision());
  const LinearForm xs = x * BigReal(1 / g.num(mp.Cx)), ys = y * BigReal(1 / g.num(mp.Cy));
  LinearForm s1 = square_form(g, mp.act, mp.x0, mp.delta, (xs + ys) * half, label + ".sq1", fold_constants);
  LinearForm s2 = square_form(g, mp.act, mp.x0, mp.delta, (xs - ys) * half, label + ".sq2", fold_constants);
  return (s1 - s2) * BigReal(g.num(mp.Cx) * mp.Cy);
}

NetGraph multiplier_net(const MultiplierParams& mp, Precision prec) {
  MultiplierParams q{mp.act, BigReal(mp.x0, prec), BigReal(mp.delta, prec), BigReal(mp.Cx, prec),
                     BigReal(mp.Cy, prec)};
  check_multiplier(q);
  GraphBuilder g(2, prec);
  LinearForm out = multiply_forms(g, q, g.input(0), g.input(1), "mult", false);
  return g.finish(out);
}

BigReal multiplier_eval(const MultiplierParams& mp, const BigReal& x, const BigReal& y) {
  const Activation a(mp.act);
  const BigReal c2 = second_derivative(mp.act, mp.x0);
  auto S = [&](const BigReal& u) {
    return (apply_activation(a, BigReal(mp.x0 + mp.delta * u)) +
            apply_activation(a, BigReal(mp.x0 - mp.delta * u)) - 2 * apply_activation(a, mp.x0)) /
           (c2 * mp.delta * mp.delta);
  };
  const BigReal xs = x / mp.Cx, ys = y / mp.Cy;
  return mp.Cx * mp.Cy * (S(BigReal((xs + ys) / 2)) - S(BigReal((xs - ys) / 2)));
}

std::vector<MultiplierSweepRow> multiplier_sweep(const MultiplierParams& base,
                                                 const std::vector<BigReal>& deltas, int grid,
                                                 Precision prec) {
  if (grid < 1) throw SchemaError("multiplier sweep needs grid >= 1");
  std::vector<MultiplierSweepRow> rows;
  for (const BigReal& d : deltas) {
    MultiplierParams mp = base;
    mp.delta = BigReal(d, prec);
    const NetGraph net = multiplier_net(mp, prec);
    BigReal worst(0L, prec);
    BigVec xy(2);
    for (int i = 0; i <= grid; ++i) {
      for (int j = 0; j <= grid; ++j) {
        xy(0) = BigReal(mp.Cx * (2L * i - grid) / grid, prec);
        xy(1) = BigReal(mp.Cy * (2L * j - grid) / grid, prec);
        worst = max(worst, abs(evaluate(net, xy) - xy(0) * xy(1)));
      }
    }
    rows.push_back({mp.delta, worst, multiplier_error_bound(mp)});
  }
  return rows;
}

double convergence_order(const std::vector<MultiplierSweepRow>& rows) {
  if (rows.size() < 2) throw SchemaError("convergence order needs at least two deltas");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(rows.size());
  for (const auto& r : rows) {
    const double x = log(r.delta).to_double();
    const double y = log(r.max_error).to_double();
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace superx
