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

#include <algorithm>
#include <numeric>
#include <vector>

#include "parrep/enumerate.hpp"
#include "parrep/errors.hpp"
#include "parrep/random.hpp"
#include "parrep/relax.hpp"
#include "parrep/replab.hpp"
#include "parrep/rounding.hpp"
#include "parrep/symmetrize.hpp"
#include "parrep/transfer.hpp"

namespace parrep {
namespace {

VectorAssignment random_assignment(int bob, int sigma, int omega, Rng& rng) {
  Eigen::VectorXd w(omega);
  Eigen::MatrixXd x(bob * sigma, omega);
  for (int i = 0; i < omega; ++i) w[i] = 0.1 + rng.uniform();
  for (int r = 0; r < bob * sigma; ++r) {
    for (int c = 0; c < omega; ++c) x(r, c) = rng.bernoulli(0.3) ? 0.0 : rng.uniform(0.0, 2.0);
  }
  return VectorAssignment(bob, sigma, w, x);
}

// 0/1 deterministic slices; question v may be unlabeled in a slice.
VectorAssignment random_partial(int bob, int sigma, int omega, Rng& rng) {
  Eigen::VectorXd w(omega);
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(bob * sigma, omega);
  for (int c = 0; c < omega; ++c) {
    w[c] = 0.1 + rng.uniform();
    for (int v = 0; v < bob; ++v) {
      if (rng.bernoulli(0.7)) x(v * sigma + rng.below(sigma), c) = 1.0;
    }
  }
  return VectorAssignment(bob, sigma, w, x);
}

// Exact first-hit expectation: the order of first appearances of i.i.d.
// draws is a Plackett-Luce permutation, so sum over all orders.
double plackett_luce_expectation(const SymmetrizedGame& sg,
                                 const CorrelatedSampler& sampler) {
  const auto& slices = sampler.slices();
  std::vector<size_t> order(slices.size());
  std::iota(order.begin(), order.end(), size_t{0});
  double total = 0.0;
  do {
    double p = 1.0;
    double used = 0.0;
    for (size_t k = 0; k + 1 < order.size(); ++k) {
      const double q = slices[order[k]].probability;
      p *= q / (1.0 - used);
      used += q;
    }
    BobAssignment x;
    x.labels.assign(static_cast<size_t>(sampler.bob_count()), kRejected);
    for (size_t k : order) {
      for (int v = 0; v < sampler.bob_count(); ++v) {
        if (x.labels[size_t(v)] == kRejected) x.labels[size_t(v)] = slices[k].labels[size_t(v)];
      }
    }
    total += p * sym_value(sg, x);
  } while (std::next_permutation(order.begin(), order.end()));
  return total;
}

}  // namespace

TEST_SUITE("rounding") {

TEST_CASE("derandomize keeps vertex norms and never loses game norm") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    CAPTURE(seed);
    const ProjectionGame g = random_projection_game(3, 3, 3, 0.8, seed);
    Rng rng(seed);
    const VectorAssignment f = random_assignment(3, 3, 3, rng);
    const VectorAssignment d = derandomize(g, f);
    CHECK(is_deterministic(d));
    CHECK((vertex_norms_sq(d) - vertex_norms_sq(f)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(game_norm_sq(g, d) >= game_norm_sq(g, f) - 1e-12);
    for (Eigen::Index r = 0; r < f.values.rows(); ++r) {
      for (Eigen::Index c = 0; c < f.values.cols(); ++c) {
        if (d.values(r, c) > 0.0) CHECK(f.values(r, c) > 0.0);
      }
    }

    const VectorAssignment n = normalize_for_rounding(d);
    CHECK(n.values.maxCoeff() <= 1.0 + 1e-12);
    CHECK(vertex_norms_sq(n).maxCoeff() == doctest::Approx(1.0));
    CHECK(certificate_ratio(g, n) == doctest::Approx(certificate_ratio(g, d)).epsilon(1e-12));
  }
  VectorAssignment zero(1, 2, Eigen::VectorXd::Ones(1), Eigen::MatrixXd::Zero(2, 1));
  CHECK_THROWS_AS(normalize_for_rounding(zero), DomainError);
}

TEST_CASE("threshold rounding of a two-level slice") {
  // v0 carries label 1 at height 1, v1 carries label 0 at height sqrt(1/2).
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(4, 1);
  x(1, 0) = 1.0;
  x(2, 0) = std::sqrt(0.5);
  const VectorAssignment f(2, 2, Eigen::VectorXd::Ones(1), x);
  const ThresholdRounding tr = threshold_round(f);
  REQUIRE(tr.measure.intervals.size() == 1);
  const auto& iv = tr.measure.intervals[0];
  REQUIRE(iv.size() == 2);
  CHECK(iv[0].lo == 0.0);
  CHECK(iv[0].hi == doctest::Approx(0.5));
  CHECK(iv[1].lo == doctest::Approx(0.5));
  CHECK(iv[1].hi == 1.0);
  CHECK(iv[0].weight == doctest::Approx(0.5));
  const Eigen::VectorXd both = tr.rounded.values.col(iv[0].slice);
  const Eigen::VectorXd top = tr.rounded.values.col(iv[1].slice);
  CHECK(both == (Eigen::VectorXd(4) << 0, 1, 1, 0).finished());
  CHECK(top == (Eigen::VectorXd(4) << 0, 1, 0, 0).finished());
}

TEST_CASE("threshold layers integrate back to the squared entries") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const ProjectionGame g = random_projection_game(3, 3, 3, 0.8, seed);
    Rng rng(seed + 7);
    const VectorAssignment f = normalize_for_rounding(derandomize(g, random_assignment(3, 3, 2, rng)));
    const ThresholdRounding tr = threshold_round(f);
    for (Eigen::Index w = 0; w < f.omega_size(); ++w) {
      Eigen::VectorXd acc = Eigen::VectorXd::Zero(f.values.rows());
      double len = 0.0;
      for (const auto& piece : tr.measure.intervals[size_t(w)]) {
        acc += piece.weight * tr.rounded.values.col(piece.slice);
        len += piece.weight;
        CHECK(tr.rounded.weights[piece.slice] == doctest::Approx(f.weights[w] * piece.weight));
      }
      CHECK(len == doctest::Approx(1.0));
      CHECK((acc - f.values.col(w).cwiseAbs2()).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
  Rng rng(1);
  CHECK_THROWS_AS(threshold_round(random_assignment(2, 2, 2, rng)), ContractViolation);
}

TEST_CASE("first-hit expectation matches the permutation sum") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    CAPTURE(seed);
    const ProjectionGame g = random_projection_game(3, 3, 2, 0.8, seed);
    const SymmetrizedGame sg = symmetrize(g);
    Rng rng(seed * 13);
    const CorrelatedSampler sampler(random_partial(3, 2, 3, rng));
    REQUIRE(sampler.slices().size() <= 7);
    double total = 0.0;
    for (const auto& s : sampler.slices()) total += s.probability;
    CHECK(total == doctest::Approx(1.0));
    const double exact = expected_sym_value(sg, sampler);
    CHECK(exact == doctest::Approx(plackett_luce_expectation(sg, sampler)).epsilon(1e-12));
    CHECK(first_hit_agreement_bound(sg, sampler) <= exact + 1e-12);
  }
}

TEST_CASE("sampled assignments average to the exact expectation") {
  const ProjectionGame g = random_projection_game(3, 3, 2, 0.8, 21);
  const SymmetrizedGame sg = symmetrize(g);
  Rng build(5);
  const CorrelatedSampler sampler(random_partial(3, 2, 3, build));
  constexpr int kTrials = 20000;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int t = 0; t < kTrials; ++t) {
    Rng rng(static_cast<std::uint64_t>(t));
    const BobAssignment x = sampler.sample(rng);
    for (int l : x.labels) CHECK(l != kRejected);
    const double v = sym_value(sg, x);
    sum += v;
    sum_sq += v * v;
  }
  const double mean = sum / kTrials;
  const double sd = std::sqrt(std::max(0.0, sum_sq / kTrials - mean * mean));
  CHECK(std::abs(mean - expected_sym_value(sg, sampler)) <= 5.0 * sd / std::sqrt(kTrials) + 1e-12);
}

TEST_CASE("sampler pads every question to the same mass") {
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(6, 2);
  x(0, 0) = 1.0;  // v0 label 0 in slice 0
  x(3, 1) = 1.0;  // v1 label 1 in slice 1
  const VectorAssignment f(3, 2, (Eigen::VectorXd(2) << 0.75, 0.25).finished(), x);
  const CorrelatedSampler s(f);
  CHECK(s.zero_support() == std::vector<int>{2});
  CHECK(s.padded_norm_sq() == doctest::Approx(0.75));
  std::vector<double> mass(3, 0.0);
  for (const auto& sl : s.slices()) {
    for (int v = 0; v < 3; ++v) {
      if (sl.labels[size_t(v)] != kRejected) mass[size_t(v)] += sl.probability;
    }
  }
  CHECK(mass[0] == doctest::Approx(mass[1]));
  CHECK(mass[1] == doctest::Approx(mass[2]));
  Eigen::MatrixXd half = x;
  half(0, 0) = 0.5;
  CHECK_THROWS_AS(CorrelatedSampler(VectorAssignment(3, 2, f.weights, half)), ContractViolation);
}

TEST_CASE("joint-moment inequalities") {
  const std::vector<JointSample> equal = {{0.3, 0.3, 1, 0.5}, {0.8, 0.8, 1, 0.5}};
  const auto tight = check_gm_vs_min(equal);
  CHECK(tight.parameter == doctest::Approx(1.0));
  CHECK(tight.lhs == doctest::Approx(tight.rhs));
  CHECK(tight.holds);
  const std::vector<JointSample> apart = {{1.0, 0.0, 1, 1.0}};
  CHECK(check_gm_vs_min(apart).parameter == 0.0);
  CHECK(check_gm_vs_min(apart).holds);
  CHECK(check_cor_gm_vs_min(equal).holds);
  CHECK(check_min_vs_max(equal).lhs == doctest::Approx(1.0));

  Rng rng(99);
  for (int i = 0; i < 300; ++i) {
    std::vector<JointSample> d(1 + static_cast<size_t>(rng.below(5)));
    double total = 0.0;
    for (auto& s : d) {
      s = {rng.uniform(), rng.uniform(), rng.bernoulli(0.6) ? 1 : 0, rng.uniform() + 0.01};
      total += s.weight;
    }
    for (auto& s : d) s.weight /= total;
    CHECK(check_gm_vs_min(d).holds);
    CHECK(check_cor_gm_vs_min(d).holds);
    CHECK(check_min_vs_max(d).holds);
  }

  const std::vector<JointSample> heavy = {{0.5, 0.5, 1, 0.7}};
  CHECK_THROWS_AS(check_gm_vs_min(heavy), DomainError);
  const std::vector<JointSample> negative = {{-0.1, 0.5, 1, 1.0}};
  CHECK_THROWS_AS(check_min_vs_max(negative), DomainError);
  const std::vector<JointSample> bad_z = {{0.1, 0.5, 2, 1.0}};
  CHECK_THROWS_AS(check_cor_gm_vs_min(bad_z), DomainError);
}

TEST_CASE("extraction from a two-question certificate") {
  const ProjectionGame g = feige_game();
  ValPlusSearchOptions o;
  o.seed = 2;
  const ValPlusCertificate c = val_plus_search(g, o);
  ExtractOptions eo;
  eo.seed = 4;
  eo.trials = 2000;
  const ExtractionReport r = extract_assignment(g, c.assignment, eo);
  CHECK(r.ok());
  CHECK(r.input_ratio == doctest::Approx(c.ratio));
  const double s = std::sqrt(0.75);
  CHECK(r.approximation_bound >= (1.0 - s) / (1.0 + s) - 1e-12);
  CHECK(r.expected_value >= r.approximation_bound - 1e-9);
  CHECK(r.best_sym_value <= collision_value_sq(g) + 1e-12);
  CHECK(r.best_value <= value(g) + 1e-12);
  CHECK(r.best_sym_value == doctest::Approx(sym_value(symmetrize(g), r.best)));
}

TEST_CASE("hybrid rounding bounds hold on normalized certificates") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    CAPTURE(seed);
    const ProjectionGame g = random_projection_game(3, 3, 2, 0.8, seed);
    Rng rng(seed);
    const VectorAssignment f = normalize_for_rounding(derandomize(g, random_assignment(3, 2, 2, rng)));
    const HybridRounding hr = hybrid_threshold_round(f, symmetrize(g));
    CHECK(hr.ok());
    CHECK(hr.measure.tau_lo == doctest::Approx(0.1));
    CHECK(hr.measure.tau_hi == doctest::Approx(0.9));
    CHECK(hr.slices.size() == static_cast<size_t>(f.omega_size()));
  }
}

TEST_CASE("two-game experiment on small pairs") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    CAPTURE(seed);
    auto [g, h] = random_game_pair(seed);
    TwoGamesOptions o;
    o.seed = seed;
    o.trials = 100;
    const TwoGamesReport r = two_games_experiment(g, h, o);
    CHECK(r.ok());
    CHECK(r.collision_gh <= r.collision_h + 1e-12);
    CHECK(r.gamma == doctest::Approx(1.0 - r.collision_h));
    CHECK(r.best_extracted <= r.collision_g + 1e-9);
  }
}

}  // TEST_SUITE

}  // namespace parrep
