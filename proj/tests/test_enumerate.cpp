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

#include <doctest.h>

#include "oracles.hpp"
#include "parrep/enumerate.hpp"
#include "parrep/errors.hpp"
#include "parrep/replab.hpp"

namespace parrep {
namespace {

ProjectionGame game_for(std::uint64_t seed) {
  RandomGameOptions o;
  o.alice_count = 2 + static_cast<int>(seed % 3);
  o.bob_count = 2 + static_cast<int>(seed % 3);
  o.alphabet_size = 2 + static_cast<int>((seed / 2) % 2);
  o.density = 0.7;
  o.reject_prob = 0.3;
  o.seed = seed;
  return random_projection_game(o);
}

}  // namespace

TEST_SUITE("enumerate") {

TEST_CASE("value and collision value agree with exhaustive search") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    CAPTURE(seed);
    const ProjectionGame g = game_for(seed);
    const ValueSolution vs = solve_value(g);
    CHECK(vs.value == doctest::Approx(oracle::value(g)).epsilon(1e-12));
    CHECK(oracle::labeling_value(g, vs.bob.labels) ==
          doctest::Approx(vs.value).epsilon(1e-12));
    CHECK(assignment_value(g, vs.bob) == doctest::Approx(vs.value).epsilon(1e-12));

    const CollisionSolution cs = solve_collision(g);
    CHECK(cs.value_sq == doctest::Approx(oracle::collision(g)).epsilon(1e-12));
    CHECK(oracle::labeling_collision(g, cs.bob.labels) ==
          doctest::Approx(cs.value_sq).epsilon(1e-12));
    // val^2 <= ||G||^2 <= val
    CHECK(vs.value * vs.value <= cs.value_sq + 1e-12);
    CHECK(cs.value_sq <= vs.value + 1e-12);
  }
}

TEST_CASE("best response picks the heaviest accepted answer") {
  const ProjectionGame g = game_for(11);
  const ValueSolution vs = solve_value(g);
  const auto alice = best_response(g, vs.bob);
  REQUIRE(static_cast<int>(alice.size()) == g.alice_count());
  const Eigen::MatrixXd mass = oracle::answer_mass(g, vs.bob.labels);
  for (int u = 0; u < g.alice_count(); ++u) {
    if (alice[static_cast<size_t>(u)] == kRejected) continue;
    CHECK(mass(u, alice[static_cast<size_t>(u)]) == doctest::Approx(mass.row(u).maxCoeff()));
  }
}

TEST_CASE("named games have their known values") {
  const ProjectionGame f = feige_game();
  CHECK(value(f) == doctest::Approx(0.5));
  CHECK(collision_value_sq(f) == doctest::Approx(0.5));
  for (int m : {3, 5, 7}) {
    CAPTURE(m);
    const ProjectionGame c = odd_cycle_game(m);
    CHECK(value(c) == doctest::Approx(1.0 - 1.0 / (2.0 * m)));
    CHECK(value(c) == doctest::Approx(oracle::value(c)));
    CHECK(collision_value_sq(c) == doctest::Approx(oracle::collision(c)));
  }
}

TEST_CASE("state counting and the enumeration cap") {
  const ProjectionGame g = game_for(2);
  CHECK(enumeration_states(g) ==
        doctest::Approx(std::pow(g.alphabet_size(), g.bob_count())));
  EnumerationLimits tiny;
  tiny.cap = 3;
  CHECK_THROWS_AS(solve_value(g, tiny), CapExceeded);
  CHECK_THROWS_AS(solve_collision(g, tiny), CapExceeded);
  CHECK_THROWS_AS(check_enumeration_size(10, 9, {}, "test"), CapExceeded);
  CHECK_NOTHROW(check_enumeration_size(10, 7, {}, "test"));
  CHECK_THROWS_AS(assignment_value(g, BobAssignment{{0}}), DimensionError);
}

}  // TEST_SUITE

}  // namespace parrep
