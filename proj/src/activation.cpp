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

#include "superx/activation.hpp"

namespace superx {

Activation Activation::leaky_relu(const BigReal& slope) {
  Activation a(ActKind::LeakyReLU);
  a.slope = slope;
  return a;
}

bool Activation::is_pwl() const {
  switch (kind) {
    case ActKind::Identity:
    case ActKind::ReLU:
    case ActKind::LeakyReLU:
    case ActKind::Step:
      return true;
    default:
      return false;
  }
}

std::string Activation::name() const {
  switch (kind) {
    case ActKind::Identity: return "identity";
    case ActKind::Sin: return "sin";
    case ActKind::Arcsin: return "arcsin";
    case ActKind::Floor: return "floor";
    case ActKind::Sigma3: return "sigma3";
    case ActKind::ReLU: return "relu";
    case ActKind::LeakyReLU: return "leaky_relu:" + slope.to_string();
    case ActKind::Step: return "step";
    case ActKind::Exp: return "exp";
  }
  return "?";
}

Activation Activation::parse(std::string_view text, Precision prec) {
  static constexpr std::pair<std::string_view, ActKind> kNames[] = {
      {"identity", ActKind::Identity}, {"sin", ActKind::Sin},     {"arcsin", ActKind::Arcsin},
      {"floor", ActKind::Floor},       {"sigma3", ActKind::Sigma3}, {"relu", ActKind::ReLU},
      {"step", ActKind::Step},         {"exp", ActKind::Exp}};
  for (const auto& [n, k] : kNames) {
    if (text == n) return Activation(k);
  }
  constexpr std::string_view kLeaky = "leaky_relu:";
  if (text.substr(0, kLeaky.size()) == kLeaky) {
    return leaky_relu(BigReal::parse(text.substr(kLeaky.size()), prec));
  }
  throw SchemaError("unknown activation '" + std::string(text) + "'");
}

}  // namespace superx
