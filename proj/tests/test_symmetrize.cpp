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
#include "parrep/random.hpp"
#include "parrep/replab.hpp"
#include "parrep/symmetrize.hpp"

namespace parrep {

TEST_SUITE("symmetrize") {

TEST_CASE("square game value equals the collision norm") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    CAPTURE(seed);
    RandomGameOptions o;
    o.alice_count = 3;
    o.bob_count = 3;
    o.alphabet_size = 3;
    o.density = 0.7;
    o.reject_prob = 0.3;
    o.seed = seed;
    const ProjectionGame g = random_projection_game(o);
    const SymmetrizedGame sg = symmetrize(g);
    Rng rng(seed + 1000);
    Eigen::MatrixXd f(3, 3);
    for (int i = 0; i < 9; ++i) f(i / 3, i % 3) = rng.uniform();
    const double expect = oracle::norm_sq(g, f);
    CHECK(sym_value(sg, f) == doctest::Approx(expect).epsilon(1e-12));

    Eigen::VectorXd x(9);
    for (int v = 0; v < 3; ++v) {
      for (int b = 0; b < 3; ++b) x[v * 3 + b] = f(v, b);
    }
    const Eigen::MatrixXd k = collision_kernel(g);
    CHECK((k - k.transpose()).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(x.dot(k * x) == doctest::Approx(expect).epsilon(1e-12));

    BobAssignment det{{rng.below(3), rng.below(3), rng.below(3)}};
    CHECK(sym_value(sg, det) ==
          doctest::Approx(oracle::labeling_collision(g, det.labels)).epsilon(1e-12));
  }
}

TEST_CASE("pair weights are a symmetric coupling of the Bob marginal") {
  const ProjectionGame g = random_projection_game(3, 4, 2, 0.6, 17);
  const Eigen::MatrixXd p = pair_weights(symmetrize(g));
  CHECK((p - p.transpose()).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(p.sum() == doctest::Approx(1.0));
  const Eigen::VectorXd rows = p.rowwise().sum();
  CHECK((rows - g.bob_measure()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("consistent pairs of the two-question game") {
  const SymmetrizedGame sg = symmetrize(feige_game());
  for (const SymTriple& t : sg.triples) {
    // Each Feige constraint accepts exactly two labels, each projecting to
    // itself, so the consistent pairs are equal-label pairs.
    for (const auto& [b1, b2] : t.tau) CHECK(b1 == b2);
    if (t.v1 == t.v2) {
      CHECK(t.tau.size() == 2);
    } else {
      CHECK(t.tau.size() == 1);
    }
  }
}

}  // TEST_SUITE

}  // namespace parrep
