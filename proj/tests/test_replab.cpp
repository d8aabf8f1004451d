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

#include <set>
#include <sstream>

#include "oracles.hpp"
#include "parrep/enumerate.hpp"
#include "parrep/errors.hpp"
#include "parrep/io.hpp"
#include "parrep/replab.hpp"
#include "parrep/transfer.hpp"

namespace parrep {
namespace {

std::string text_of(const ProjectionGame& g) {
  std::ostringstream out;
  write_game(out, g);
  return out.str();
}

ProjectionGame perfect_game() {
  const auto id = ProjectionConstraint::identity(2);
  return ProjectionGame(2, 2, 2, {{0, 0, 1.0, id}, {0, 1, 1.0, id}, {1, 1, 1.0, id}});
}

}  // namespace

TEST_SUITE("replab") {

TEST_CASE("transfer functions on a grid") {
  CHECK(phi(0.0) == 0.0);
  CHECK(phi(1.0) == doctest::Approx(1.0));
  CHECK(psi(0.0) == 0.0);
  CHECK(psi(1.0) == doctest::Approx(1.0));
  CHECK(min_max_ratio(0.0) == 1.0);
  CHECK(collision_lower_bound(1.0) == doctest::Approx(1.0));
  CHECK(collision_lower_bound(0.0) == doctest::Approx(0.0));
  double prev_phi = -1.0;
  double prev_psi = -1.0;
  for (int i = 0; i <= 1000; ++i) {
    const double x = i / 1000.0;
    CHECK(phi(x) >= prev_phi);
    CHECK(psi(x) >= prev_psi);
    CHECK(phi(x) >= x - 1e-15);
    CHECK(phi(x) <= 1.0 + 1e-15);
    CHECK(psi(x) <= x * x + 1e-15);
    CHECK(min_max_ratio(x) <= 1.0);
    prev_phi = phi(x);
    prev_psi = psi(x);
  }
}

TEST_CASE("two-question game and its square") {
  const FeigeReport r = feige_suite();
  CHECK(r.ok());
  const ProjectionGame sq = tensor(feige_game(), feige_game());
  CHECK(oracle::value(sq) == doctest::Approx(0.5));
  CHECK(oracle::collision(sq) == doctest::Approx(0.25));
  CHECK(r.tensor_value == doctest::Approx(0.5));
  CHECK(r.tensor_collision_sq == doctest::Approx(0.25));
  CHECK(r.tensor_upper_bound == doctest::Approx(phi(0.5) / 2.0));
  CHECK(oracle::labeling_value(sq, feige_tensor_strategy().labels) == doctest::Approx(0.5));
  CHECK(oracle::labeling_collision(sq, r.tensor_optimum.labels) == doctest::Approx(0.25));
}

TEST_CASE("odd cycle structure") {
  const ProjectionGame c = odd_cycle_game(5);
  CHECK(c.edges().size() == 10);
  for (const Edge& e : c.edges()) CHECK(e.weight == doctest::Approx(0.1));
  CHECK_THROWS_AS(odd_cycle_game(4), DomainError);
  CHECK_THROWS_AS(odd_cycle_game(1), DomainError);
}

TEST_CASE("random games are reproducible from the seed") {
  RandomGameOptions o;
  o.alice_count = 4;
  o.bob_count = 3;
  o.alphabet_size = 3;
  o.density = 0.6;
  o.reject_prob = 0.2;
  o.seed = 42;
  const std::string a = text_of(random_projection_game(o));
  CHECK(a == text_of(random_projection_game(o)));
  o.seed = 43;
  CHECK(a != text_of(random_projection_game(o)));
  o.density = 0.0;
  CHECK_THROWS_AS(random_projection_game(o), DomainError);
  o.density = 1.0;
  o.reject_prob = 1.5;
  CHECK_THROWS_AS(random_projection_game(o), DomainError);
}

TEST_CASE("every Alice question has an edge") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const ProjectionGame g = random_projection_game(5, 3, 2, 0.1, seed);
    for (int u = 0; u < 5; ++u) CHECK_FALSE(g.alice_edges(u).empty());
  }
}

TEST_CASE("planted games are satisfiable") {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    CAPTURE(seed);
    RandomGameOptions o;
    o.alice_count = 3;
    o.bob_count = 3;
    o.alphabet_size = 3;
    o.density = 0.8;
    o.reject_prob = 0.5;
    o.planted = true;
    o.seed = seed;
    CHECK(oracle::value(random_projection_game(o)) == doctest::Approx(1.0));
    CHECK(oracle::value(random_biregular_game(4, 4, 2, 2, true, seed)) == doctest::Approx(1.0));
  }
}

TEST_CASE("biregular games have the requested degrees and no repeated pair") {
  const ProjectionGame g = random_biregular_game(6, 4, 2, 3, false, 8);
  std::vector<int> bob_deg(4, 0);
  std::set<std::pair<int, int>> seen;
  for (const Edge& e : g.edges()) {
    ++bob_deg[static_cast<size_t>(e.v)];
    CHECK(seen.insert({e.u, e.v}).second);
    CHECK(e.weight == doctest::Approx(g.edges()[0].weight));
  }
  for (int u = 0; u < 6; ++u) CHECK(g.alice_edges(u).size() == 2);
  for (int d : bob_deg) CHECK(d == 3);
  CHECK_THROWS_AS(random_biregular_game(3, 4, 2, 2, false, 1), DomainError);
}

TEST_CASE("repetition report on a perfect game") {
  const RepetitionReport r = parrep_report(perfect_game(), 3);
  CHECK(r.ok());
  REQUIRE(r.rows.size() == 3);
  // 8^8 labelings of the third power exceed the default cap.
  CHECK_FALSE(r.rows[2].computed);
  for (const auto& row : r.rows) {
    if (!row.computed) continue;
    CHECK(row.value == doctest::Approx(1.0));
    CHECK(row.collision_sq == doctest::Approx(1.0));
  }
  CHECK_THROWS_AS(parrep_report(perfect_game(), 0), DomainError);
}

TEST_CASE("repetition report of the two-question game") {
  const RepetitionReport r = parrep_report(feige_game(), 2);
  CHECK(r.ok());
  REQUIRE(r.rows.size() == 2);
  CHECK(r.rows[1].value == doctest::Approx(0.5));
  CHECK(r.rows[1].collision_sq == doctest::Approx(0.25));
  CHECK(r.rows[1].phi_bound == doctest::Approx(phi(0.5) * phi(0.5)));
  CHECK(r.rows[1].chain_bound == doctest::Approx(phi(0.5) * 0.5));
}

TEST_CASE("a small cap refuses large powers without failing") {
  EnumerationLimits limits;
  limits.cap = 100;
  const RepetitionReport r = parrep_report(feige_game(), 3, limits);
  REQUIRE(r.rows.size() >= 2);
  CHECK(r.rows[0].computed);
  CHECK_FALSE(r.rows[1].computed);
  CHECK_FALSE(r.rows[1].refusal.empty());
  CHECK(r.ok());
}

TEST_CASE("few-repetition deficits") {
  const FewRepsReport r = few_reps_report(feige_game(), 2);
  CHECK(r.ok());
  CHECK(r.epsilon == doctest::Approx(0.5));
  REQUIRE(r.rows.size() == 2);
  CHECK(r.rows[0].deficit == doctest::Approx(0.5));
  CHECK(r.rows[1].deficit == doctest::Approx(0.75));
  CHECK(r.rows[1].t == doctest::Approx(1.5));
  CHECK(r.rows[1].t_over_sqrt_k == doctest::Approx(1.5 / std::sqrt(2.0)));
  const FewRepsReport p = few_reps_report(perfect_game(), 2);
  CHECK(p.rows[1].t == 0.0);
}

TEST_CASE("product with the unit game keeps the collision value") {
  const ProjectionGame g = random_projection_game(3, 3, 2, 0.7, 12);
  const ProductPair p = product_check(g, unit_game(), "unit");
  CHECK(p.ok());
  CHECK(p.collision_gh == doctest::Approx(p.collision_g));
  CHECK(p.collision_h == doctest::Approx(1.0));
}

TEST_CASE("product sweep starts with the two-question pair") {
  const ProductSweepReport r = product_theorem_sweep(3, 5);
  REQUIRE(r.pairs.size() == 4);
  CHECK(r.pairs[0].label == "feige");
  CHECK(r.pairs[0].collision_gh == doctest::Approx(0.25));
  CHECK(r.violations() == 0);
  for (const auto& p : r.pairs) {
    CHECK(p.collision_gh <= p.collision_h + 1e-9);
    CHECK(p.collision_gh <= p.product_bound + 1e-7);
  }
}

}  // TEST_SUITE

}  // namespace parrep
