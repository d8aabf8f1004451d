// Copyright 2026 The parrep-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Scalar transfer functions shared by the product, rounding and
// approximation bounds.

#ifndef PARREP_TRANSFER_HPP_
#define PARREP_TRANSFER_HPP_

#include <algorithm>
#include <cmath>

namespace parrep {

// phi(x) = 2 sqrt(x) / (1 + x), the product-theorem transfer function.
inline double phi(double x) {
  x = std::max(x, 0.0);
  return 2.0 * std::sqrt(x) / (1.0 + x);
}

// psi(x) = 1 - sqrt(1 - x^2), the rounding transfer function.
inline double psi(double x) {
  return 1.0 - std::sqrt(std::max(0.0, 1.0 - x * x));
}

// (1 - g) / (1 + g).
inline double min_max_ratio(double gamma) {
  return (1.0 - gamma) / (1.0 + gamma);
}

// Lower bound on ||G||^2 implied by a val+ certificate of ratio r: with
// rho = r^2 and s = sqrt(1 - rho^2), ||G||^2 >= (1 - s) / (1 + s).
inline double collision_lower_bound(double ratio) {
  const double rho = std::min(ratio * ratio, 1.0);
  const double s = std::sqrt(std::max(0.0, 1.0 - rho * rho));
  return (1.0 - s) / (1.0 + s);
}

// The inverse direction: val+ <= sqrt(2 sqrt(delta) / (1 + delta)) for
// delta = ||G||^2.
inline double val_plus_upper_bound(double delta) {
  return std::sqrt(phi(delta));
}

}  // namespace parrep

#endif  // PARREP_TRANSFER_HPP_
