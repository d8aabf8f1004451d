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

// Exact value and collision value by exhaustive search over deterministic
// Bob assignments.
//
// Both maxima are attained at deterministic Bob strategies: for val, Alice
// best-responds per question; for the collision value, ||Gf||^2 is convex in
// f so its maximum over the assignment polytope sits at a vertex. The search
// is a depth-first walk over Bob questions in index order with an admissible
// upper bound, so it returns the exact optimum together with the
// lexicographically first optimal labeling it meets.

#ifndef PARREP_ENUMERATE_HPP_
#define PARREP_ENUMERATE_HPP_

#include <vector>

#include "parrep/game.hpp"

namespace parrep {

inline constexpr double kDefaultEnumerationCap = 1e7;

struct EnumerationLimits {
  // Largest admissible |Sigma|^|V|.
  double cap = kDefaultEnumerationCap;
};

// |Sigma|^|V| as a double (may be +inf for huge games).
double enumeration_states(const ProjectionGame& game);

// Throws CapExceeded when base^exponent > limits.cap.
void check_enumeration_size(int base, int exponent,
                            const EnumerationLimits& limits,
                            const char* what);

struct ValueSolution {
  double value = 0.0;
  BobAssignment bob;
  std::vector<int> alice;  // best response to `bob`
};

struct CollisionSolution {
  double value_sq = 0.0;
  BobAssignment bob;
};

ValueSolution solve_value(const ProjectionGame& game,
                          const EnumerationLimits& limits = {});
CollisionSolution solve_collision(const ProjectionGame& game,
                                  const EnumerationLimits& limits = {});

// val(G) = max over f, g of <g, Gf>.
double value(const ProjectionGame& game, const EnumerationLimits& limits = {});
// ||G||^2 = max over f of ||Gf||^2.
double collision_value_sq(const ProjectionGame& game,
                          const EnumerationLimits& limits = {});

// Alice's best response to a fixed Bob assignment (smallest label on ties),
// and the resulting acceptance probability.
std::vector<int> best_response(const ProjectionGame& game,
                               const BobAssignment& bob);
double assignment_value(const ProjectionGame& game, const BobAssignment& bob);

}  // namespace parrep

#endif  // PARREP_ENUMERATE_HPP_
