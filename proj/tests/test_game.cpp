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

#include <vector>

#include "oracles.hpp"
#include "parrep/enumerate.hpp"
#include "parrep/errors.hpp"
#include "parrep/game.hpp"
#include "parrep/random.hpp"
#include "parrep/replab.hpp"

namespace parrep {
namespace {

Eigen::MatrixXd random_nonnegative(int rows, int cols, Rng& rng) {
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = rng.bernoulli(0.3) ? 0.0 : rng.uniform();
  }
  return m;
}

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ProjectionGame small_random(std::uint64_t seed) {
  RandomGameOptions o;
  o.alice_count = 2 + static_cast<int>(seed % 3);
  o.bob_count = 2 + static_cast<int>((seed / 3) % 2);
  o.alphabet_size = 2 + static_cast<int>(seed % 2);
  o.density = 0.8;
  o.reject_prob = 0.25;
  o.seed = seed;
  return random_projection_game(o);
}

}  // namespace

TEST_SUITE("game") {

TEST_CASE("apply_game matches the edge-list definition") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const ProjectionGame g = small_random(seed);
    Rng rng(seed * 31);
    const Eigen::MatrixXd f = random_nonnegative(g.bob_count(), g.alphabet_size(), rng);
    const Eigen::MatrixXd got = apply_game(g, f);
    CHECK((got - oracle::apply(g, f)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(collision_value_sq_of(g, f) == doctest::Approx(oracle::norm_sq(g, f)).epsilon(1e-12));

    Eigen::VectorXd x(f.size());
    for (int v = 0; v < g.bob_count(); ++v) {
      for (int b = 0; b < g.alphabet_size(); ++b) x[v * g.alphabet_size() + b] = f(v, b);
    }
    const Eigen::VectorXd y = operator_matrix(g) * x;
    for (int u = 0; u < g.alice_count(); ++u) {
      for (int a = 0; a < g.alphabet_size(); ++a) {
        CHECK(y[u * g.alphabet_size() + a] == doctest::Approx(got(u, a)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("edge weights are normalized and marginals follow") {
  const ProjectionGame g = small_random(4);
  CHECK(oracle::total_weight(g) == doctest::Approx(1.0));
  CHECK(g.alice_measure().sum() == doctest::Approx(1.0));
  CHECK(g.bob_measure().sum() == doctest::Approx(1.0));
  const auto mu = oracle::alice_mass(g);
  for (int u = 0; u < g.alice_count(); ++u) {
    CHECK(g.alice_measure()[u] == doctest::Approx(mu[static_cast<size_t>(u)]));
  }
}

TEST_CASE("pair value of deterministic strategies is the acceptance probability") {
  const ProjectionGame g = feige_game();
  // Bob answers A0 on both questions; Alice question 0 answers A0.
  const FractionalAssignment f = to_fractional({{kFeigeA0, kFeigeA0}}, 4);
  AliceFunction a = AliceFunction::Zero(2, 4);
  a(0, kFeigeA0) = 1.0;
  a(1, kFeigeA1) = 1.0;
  CHECK(pair_value(g, f, a) == doctest::Approx(0.5));
  const AliceFunction gf = apply_game(g, f);
  CHECK(gf(0, kFeigeA0) == doctest::Approx(1.0));
  CHECK(gf(1, kFeigeA0) == doctest::Approx(0.0));
}

TEST_CASE("tensor acts as the Kronecker product") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const ProjectionGame g = small_random(seed);
    const ProjectionGame h = small_random(seed + 100);
    Rng rng(seed);
    const Eigen::MatrixXd f1 = random_nonnegative(g.bob_count(), g.alphabet_size(), rng);
    const Eigen::MatrixXd f2 = random_nonnegative(h.bob_count(), h.alphabet_size(), rng);
    const FractionalAssignment f = tensor(f1, f2);
    CHECK((f - kron(f1, f2)).cwiseAbs().maxCoeff() == 0.0);
    const ProjectionGame gh = tensor(g, h);
    CHECK(gh.alice_count() == g.alice_count() * h.alice_count());
    CHECK(gh.alphabet_size() == g.alphabet_size() * h.alphabet_size());
    const Eigen::MatrixXd lhs = oracle::apply(gh, f);
    const Eigen::MatrixXd rhs = kron(oracle::apply(g, f1), oracle::apply(h, f2));
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(collision_value_sq_of(gh, f) ==
          doctest::Approx(collision_value_sq_of(g, f1) * collision_value_sq_of(h, f2))
              .epsilon(1e-10));
  }
}

TEST_CASE("tensor_power matches repeated tensor") {
  const ProjectionGame g = small_random(7);
  const ProjectionGame a = tensor_power(g, 2);
  const ProjectionGame b = tensor(g, g);
  REQUIRE(a.edges().size() == b.edges().size());
  for (size_t i = 0; i < a.edges().size(); ++i) {
    CHECK(a.edges()[i].u == b.edges()[i].u);
    CHECK(a.edges()[i].v == b.edges()[i].v);
    CHECK(a.edges()[i].weight == doctest::Approx(b.edges()[i].weight));
    CHECK(a.edges()[i].constraint == b.edges()[i].constraint);
  }
  CHECK(tensor_power(g, 1).edges().size() == g.edges().size());
  CHECK_THROWS_AS(tensor_power(g, 0), DomainError);
}

TEST_CASE("unit game is neutral for values") {
  const ProjectionGame g = small_random(9);
  const ProjectionGame gu = tensor(g, unit_game());
  CHECK(value(gu) == doctest::Approx(value(g)));
  CHECK(collision_value_sq(gu) == doctest::Approx(collision_value_sq(g)));
}

TEST_CASE("trivial game keeps row sums on label 0") {
  Eigen::MatrixXd f(2, 3);
  f << 0.2, 0.3, 0.5, 0.0, 0.0, 0.4;
  const FractionalAssignment t = apply_trivial(f);
  CHECK(t(0, 0) == doctest::Approx(1.0));
  CHECK(t(1, 0) == doctest::Approx(0.4));
  CHECK(t.rightCols(2).cwiseAbs().maxCoeff() == 0.0);
  CHECK(apply_trivial_v(1, f)[0] == doctest::Approx(0.4));
  const ProjectionGame g = small_random(3);
  Rng rng(5);
  const Eigen::MatrixXd h = random_nonnegative(g.bob_count(), g.alphabet_size(), rng);
  double expect = 0.0;
  for (int v = 0; v < g.bob_count(); ++v) {
    expect += g.bob_measure()[v] * h.row(v).sum() * h.row(v).sum();
  }
  CHECK(trivial_norm_sq(g, h) == doctest::Approx(expect));
}

TEST_CASE("strategy predicate") {
  Eigen::MatrixXd f(2, 2);
  f << 0.5, 0.5, 1.0, 0.0;
  CHECK(is_strategy(f));
  f(1, 1) = 0.1;
  CHECK_FALSE(is_strategy(f));
  f << -0.5, 1.5, 1.0, 0.0;
  CHECK_FALSE(is_strategy(f));
}

TEST_CASE("invalid inputs are rejected") {
  const std::vector<std::pair<int, int>> dup = {{0, 0}, {0, 1}};
  CHECK_THROWS_AS(ProjectionConstraint(2, dup), DomainError);
  const std::vector<std::pair<int, int>> out_of_range = {{2, 0}};
  CHECK_THROWS_AS(ProjectionConstraint(2, out_of_range), DomainError);
  CHECK_THROWS_AS(ProjectionConstraint::from_image(2, {0}), DomainError);
  const auto id = ProjectionConstraint::identity(2);
  CHECK_THROWS_AS(ProjectionGame(1, 1, 2, {{1, 0, 1.0, id}}), DomainError);
  CHECK_THROWS_AS(ProjectionGame(1, 1, 2, {{0, 0, -1.0, id}}), DomainError);
  CHECK_THROWS_AS(ProjectionGame(1, 1, 2, {{0, 0, 0.0, id}}), DomainError);
  CHECK_THROWS_AS(ProjectionGame(1, 1, 3, {{0, 0, 1.0, id}}), DomainError);
  const ProjectionGame g(1, 1, 2, {{0, 0, 1.0, id}});
  CHECK_THROWS_AS(apply_game(g, Eigen::MatrixXd::Zero(2, 2)), DimensionError);
  CHECK_THROWS_AS(to_fractional({{2}}, 2), DomainError);
}

}  // TEST_SUITE

}  // namespace parrep
