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

#ifndef SUPERX_ACTIVATION_HPP_
#define SUPERX_ACTIVATION_HPP_

#include <cmath>
#include <string>
#include <string_view>
#include <type_traits>

#include "superx/bigreal.hpp"
#include "superx/errors.hpp"
#include "superx/scalar.hpp"
#include "superx/special.hpp"

namespace superx {

enum class ActKind { Identity, Sin, Arcsin, Floor, Sigma3, ReLU, LeakyReLU, Step, Exp };

struct Activation {
  ActKind kind = ActKind::Identity;
  BigReal slope;  // LeakyReLU negative-side slope

  Activation() = default;
  Activation(ActKind k) : kind(k) {}  // NOLINT(google-explicit-constructor)
  static Activation leaky_relu(const BigReal& slope);

  bool is_pwl() const;
  // "relu", "sin", "leaky_relu:0.01", ...
  std::string name() const;
  static Activation parse(std::string_view text, Precision prec = kDefaultPrecision);

  friend bool operator==(const Activation& a, const Activation& b) {
    return a.kind == b.kind && (a.kind != ActKind::LeakyReLU || a.slope == b.slope);
  }
};

// Applies the activation. Arcsin outside [-1, 1] throws DomainError; callers
// that admit rounding slack clamp before calling.
template <typename Scalar>
Scalar apply_activation(const Activation& a, const Scalar& z) {
  using Ops = ScalarOps<Scalar>;
  switch (a.kind) {
    case ActKind::Identity:
      return z;
    case ActKind::ReLU:
      return z > 0 ? z : Ops::from_long(0, z);
    case ActKind::LeakyReLU:
      return z >= 0 ? z : Scalar(Ops::from_big(a.slope, z) * z);
    case ActKind::Step:
      return Ops::from_long(z >= 0 ? 1 : 0, z);
    case ActKind::Floor:
      if constexpr (std::is_same_v<Scalar, mpq_class>) {
        return superx::floor(z);
      } else {
        using std::floor;
        return floor(z);
      }
    default:
      break;
  }
  if constexpr (std::is_same_v<Scalar, mpq_class>) {
    throw NonPwlActivation("activation '" + a.name() + "' has no exact rational evaluation");
  } else {
    using std::asin;
    using std::exp;
    using std::sin;
    switch (a.kind) {
      case ActKind::Sin:
        return sin(z);
      case ActKind::Arcsin:
        if (z > 1 || z < -1) throw DomainError("arcsin input outside [-1, 1]");
        return asin(z);
      case ActKind::Sigma3:
        return sigma3(z);
      case ActKind::Exp:
        return exp(z);
      default:
        break;
    }
  }
  throw Error("unhandled activation");
}

}  // namespace superx

#endif  // SUPERX_ACTIVATION_HPP_
