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

#include "parrep/replab.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

#include "parrep/errors.hpp"
#include "parrep/random.hpp"
#include "parrep/relax.hpp"
#include "parrep/transfer.hpp"

namespace parrep {
namespace {

constexpr double kBoundSlack = 1e-7;

// Number of Bob questions and labels of G^(x)k, checked against the cap
// before the power is materialized.
void check_power_size(const ProjectionGame& game, int k,
                      const EnumerationLimits& limits) {
  const double labels = std::pow(game.alphabet_size(), k);
  const double questions = std::pow(game.bob_count(), k);
  const double states = std::pow(labels, questions);
  if (!(states <= limits.cap)) {
    throw CapExceeded("k = " + std::to_string(k) + ": " +
                      std::to_string(static_cast<long long>(labels)) + "^" +
                      std::to_string(static_cast<long long>(questions)) +
                      " states exceed the enumeration cap " +
                      std::to_string(static_cast<long long>(limits.cap)));
  }
}

ProjectionConstraint random_constraint(int alphabet_size, double reject_prob,
                                       int planted_beta, int planted_alpha,
                                       Rng& rng) {
  std::vector<int> image(static_cast<size_t>(alphabet_size));
  for (int& a : image) {
    a = rng.bernoulli(reject_prob) ? kRejected : rng.below(alphabet_size);
  }
  if (planted_beta >= 0) image[static_cast<size_t>(planted_beta)] = planted_alpha;
  return ProjectionConstraint::from_image(alphabet_size, std::move(image));
}

}  // namespace

ProjectionGame feige_game() {
  std::vector<Edge> edges;
  for (int u = 0; u < 2; ++u) {
    for (int v = 0; v < 2; ++v) {
      std::vector<int> image(4, kRejected);
      image[static_cast<size_t>(kFeigeA0 + u)] = kFeigeA0 + u;
      image[static_cast<size_t>(kFeigeB0 + v)] = kFeigeB0 + v;
      edges.push_back(
          {u, v, 0.25, ProjectionConstraint::from_image(4, std::move(image))});
    }
  }
  return ProjectionGame(2, 2, 4, std::move(edges));
}

BobAssignment feige_tensor_strategy() {
  BobAssignment out;
  out.labels.resize(4);
  for (int v1 = 0; v1 < 2; ++v1) {
    for (int v2 = 0; v2 < 2; ++v2) {
      out.labels[static_cast<size_t>(v1 * 2 + v2)] =
          (kFeigeA0 + v2) * 4 + (kFeigeB0 + v2);
    }
  }
  return out;
}

ProjectionGame odd_cycle_game(int m) {
  if (m < 3 || m % 2 == 0) {
    throw DomainError("odd cycle game needs an odd length >= 3, got " +
                      std::to_string(m));
  }
  const auto equal = ProjectionConstraint::identity(2);
  const auto differ = ProjectionConstraint::from_image(2, {1, 0});
  std::vector<Edge> edges;
  const double w = 1.0 / (2.0 * m);
  for (int i = 0; i < m; ++i) {
    edges.push_back({i, i, w, equal});
    edges.push_back({i, (i + 1) % m, w, differ});
  }
  return ProjectionGame(m, m, 2, std::move(edges));
}

ProjectionGame random_projection_game(const RandomGameOptions& o) {
  if (o.alice_count < 1 || o.bob_count < 1 || o.alphabet_size < 1) {
    throw DomainError("random game needs positive sizes");
  }
  if (!(o.density > 0.0) || o.density > 1.0) {
    throw DomainError("random game density must lie in (0, 1]");
  }
  if (o.reject_prob < 0.0 || o.reject_prob > 1.0) {
    throw DomainError("random game reject probability must lie in [0, 1]");
  }
  Rng rng(o.seed);
  std::vector<int> alice_plant(static_cast<size_t>(o.alice_count), -1);
  std::vector<int> bob_plant(static_cast<size_t>(o.bob_count), -1);
  if (o.planted) {
    for (int& a : alice_plant) a = rng.below(o.alphabet_size);
    for (int& b : bob_plant) b = rng.below(o.alphabet_size);
  }
  auto make_edge = [&](int u, int v) {
    const double w = o.integer_weights ? 1.0 + rng.below(4) : 1.0;
    return Edge{u, v, w,
                random_constraint(o.alphabet_size, o.reject_prob,
                                  bob_plant[static_cast<size_t>(v)],
                                  alice_plant[static_cast<size_t>(u)], rng)};
  };
  std::vector<Edge> edges;
  for (int u = 0; u < o.alice_count; ++u) {
    bool any = false;
    for (int v = 0; v < o.bob_count; ++v) {
      if (!rng.bernoulli(o.density)) continue;
      edges.push_back(make_edge(u, v));
      any = true;
    }
    if (!any) edges.push_back(make_edge(u, rng.below(o.bob_count)));
  }
  return ProjectionGame(o.alice_count, o.bob_count, o.alphabet_size,
                        std::move(edges));
}

ProjectionGame random_projection_game(int alice_count, int bob_count,
                                      int alphabet_size, double density,
                                      std::uint64_t seed) {
  RandomGameOptions o;
  o.alice_count = alice_count;
  o.bob_count = bob_count;
  o.alphabet_size = alphabet_size;
  o.density = density;
  o.seed = seed;
  return random_projection_game(o);
}

ProjectionGame random_biregular_game(int alice_count, int bob_count,
                                     int alice_degree, int alphabet_size,
                                     bool planted, std::uint64_t seed) {
  if (alice_count < 1 || bob_count < 1 || alice_degree < 1 ||
      alphabet_size < 1) {
    throw DomainError("biregular game needs positive sizes");
  }
  const int stubs = alice_count * alice_degree;
  if (stubs % bob_count != 0) {
    throw DomainError("biregular game: |U| * degree must be divisible by |V|");
  }
  const int bob_degree = stubs / bob_count;
  Rng rng(seed);
  std::vector<int> bob_stubs;
  for (int v = 0; v < bob_count; ++v) {
    bob_stubs.insert(bob_stubs.end(), static_cast<size_t>(bob_degree), v);
  }
  // Prefer a simple graph; fall back to the last multigraph drawn.
  constexpr int kAttempts = 100;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    rng.shuffle(bob_stubs);
    std::set<std::pair<int, int>> seen;
    bool simple = true;
    for (int i = 0; i < stubs; ++i) {
      if (!seen.insert({i / alice_degree, bob_stubs[static_cast<size_t>(i)]})
               .second) {
        simple = false;
      }
    }
    if (simple) break;
  }
  std::vector<int> alice_plant(static_cast<size_t>(alice_count), -1);
  std::vector<int> bob_plant(static_cast<size_t>(bob_count), -1);
  if (planted) {
    for (int& a : alice_plant) a = rng.below(alphabet_size);
    for (int& b : bob_plant) b = rng.below(alphabet_size);
  }
  std::vector<Edge> edges;
  for (int i = 0; i < stubs; ++i) {
    const int u = i / alice_degree;
    const int v = bob_stubs[static_cast<size_t>(i)];
    edges.push_back({u, v, 1.0,
                     random_constraint(alphabet_size, 0.0,
                                       bob_plant[static_cast<size_t>(v)],
                                       alice_plant[static_cast<size_t>(u)],
                                       rng)});
  }
  return ProjectionGame(alice_count, bob_count, alphabet_size,
                        std::move(edges));
}

bool RepetitionReport::ok() const {
  return std::all_of(rows.begin(), rows.end(),
                     [](const RepetitionRow& r) { return r.ok(); });
}

RepetitionReport parrep_report(const ProjectionGame& game, int k_max,
                               const EnumerationLimits& limits) {
  if (k_max < 1) throw DomainError("k_max must be at least 1");
  RepetitionReport report;
  report.value = value(game, limits);
  report.collision_sq = collision_value_sq(game, limits);
  const double rho = report.value;
  const double c1 = report.collision_sq;
  const double eps = 1.0 - rho;

  double prev_value = 1.0;
  double prev_col = 1.0;
  for (int k = 1; k <= k_max; ++k) {
    RepetitionRow row;
    row.k = k;
    try {
      check_power_size(game, k, limits);
    } catch (const CapExceeded& e) {
      row.refusal = e.what();
      report.rows.push_back(std::move(row));
      break;
    }
    const ProjectionGame power = tensor_power(game, k);
    row.computed = true;
    row.value = value(power, limits);
    row.collision_sq = collision_value_sq(power, limits);
    row.phi_bound = std::pow(phi(c1), k);
    row.chain_bound = std::pow(phi(c1), k - 1) * c1;
    row.value_bound = std::pow(phi(rho), k / 2.0);
    row.small_applicable = rho <= 0.25;
    row.small_bound = std::pow(4.0 * rho, k / 4.0);
    row.rao_bound = std::pow(1.0 - eps * eps / 16.0, k);

    row.chain_ok = row.value * row.value <= row.collision_sq + kTolerance &&
                   row.collision_sq <= row.chain_bound + kBoundSlack &&
                   row.chain_bound <= row.phi_bound + kTolerance;
    row.value_ok = row.value <= row.value_bound + kBoundSlack;
    row.small_ok =
        !row.small_applicable || row.value <= row.small_bound + kBoundSlack;
    row.rao_ok = row.value <= row.rao_bound + kBoundSlack;
    row.monotone_ok = row.value <= prev_value + kTolerance &&
                      row.collision_sq <= prev_col + kTolerance;
    prev_value = row.value;
    prev_col = row.collision_sq;
    report.rows.push_back(std::move(row));
  }
  return report;
}

bool FewRepsReport::ok() const {
  return std::all_of(rows.begin(), rows.end(), [](const FewRepsRow& r) {
    return !r.computed || r.monotone_ok;
  });
}

FewRepsReport few_reps_report(const ProjectionGame& game, int k_max,
                              const EnumerationLimits& limits) {
  if (k_max < 1) throw DomainError("k_max must be at least 1");
  FewRepsReport report;
  report.epsilon = 1.0 - collision_value_sq(game, limits);
  double prev_deficit = 0.0;
  for (int k = 1; k <= k_max; ++k) {
    FewRepsRow row;
    row.k = k;
    try {
      check_power_size(game, k, limits);
    } catch (const CapExceeded& e) {
      row.refusal = e.what();
      report.rows.push_back(std::move(row));
      break;
    }
    row.computed = true;
    row.collision_sq = collision_value_sq(tensor_power(game, k), limits);
    row.deficit = 1.0 - row.collision_sq;
    row.t = report.epsilon > kTolerance ? row.deficit / report.epsilon : 0.0;
    row.t_over_sqrt_k = row.t / std::sqrt(static_cast<double>(k));
    row.monotone_ok = row.deficit >= prev_deficit - kTolerance;
    prev_deficit = row.deficit;
    report.rows.push_back(std::move(row));
  }
  return report;
}

int ProductSweepReport::violations() const {
  return static_cast<int>(std::count_if(
      pairs.begin(), pairs.end(), [](const ProductPair& p) { return !p.ok(); }));
}

ProductPair product_check(const ProjectionGame& g, const ProjectionGame& h,
                          std::string label, const EnumerationLimits& limits) {
  ProductPair p;
  p.label = std::move(label);
  p.collision_g = collision_value_sq(g, limits);
  p.collision_h = collision_value_sq(h, limits);
  p.collision_gh = collision_value_sq(tensor(g, h), limits);
  p.lambda_plus_g = lambda_plus(g, limits).value;
  p.product_bound = phi(p.collision_g) * p.collision_h;
  p.simple_bound = p.lambda_plus_g * std::sqrt(p.collision_h);
  p.monotone_ok = p.collision_gh <= p.collision_g + kTolerance;
  p.simple_ok = std::sqrt(p.collision_gh) <= p.simple_bound + kBoundSlack;
  p.product_ok = p.collision_gh <= p.product_bound + kBoundSlack;
  return p;
}

std::pair<ProjectionGame, ProjectionGame> random_game_pair(std::uint64_t seed) {
  Rng rng(seed);
  RandomGameOptions g;
  g.alice_count = 2 + rng.below(2);
  g.bob_count = 2 + rng.below(2);
  g.alphabet_size = 2;
  g.density = 0.75;
  g.reject_prob = 0.2;
  g.seed = rng.engine()();
  RandomGameOptions h;
  h.alice_count = 2;
  h.bob_count = 2;
  h.alphabet_size = 2;
  h.density = 0.75;
  h.reject_prob = 0.2;
  h.seed = rng.engine()();
  return {random_projection_game(g), random_projection_game(h)};
}

ProductSweepReport product_theorem_sweep(int n_pairs, std::uint64_t seed,
                                         const EnumerationLimits& limits) {
  if (n_pairs < 0) throw DomainError("pair count must be nonnegative");
  ProductSweepReport report;
  const ProjectionGame na = feige_game();
  report.pairs.push_back(product_check(na, na, "feige", limits));
  for (int i = 0; i < n_pairs; ++i) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(i);
    auto [g, h] = random_game_pair(s);
    report.pairs.push_back(
        product_check(g, h, "seed " + std::to_string(s), limits));
  }
  return report;
}

bool FeigeReport::ok() const {
  return std::abs(value - 0.5) <= kTolerance &&
         std::abs(collision_sq - 0.5) <= kTolerance &&
         std::abs(tensor_value - 0.5) <= kTolerance &&
         std::abs(tensor_strategy_collision_sq - 0.25) <= kTolerance &&
         tensor_collision_sq >= 0.25 - kTolerance &&
         tensor_collision_sq <= 0.4715;
}

FeigeReport feige_suite() {
  const ProjectionGame na = feige_game();
  const ProjectionGame na2 = tensor(na, na);
  FeigeReport r;
  r.value = value(na);
  r.collision_sq = collision_value_sq(na);
  r.tensor_value = value(na2);
  r.tensor_strategy_collision_sq =
      collision_value_sq_of(na2, feige_tensor_strategy());
  const CollisionSolution best = solve_collision(na2);
  r.tensor_collision_sq = best.value_sq;
  r.tensor_optimum = best.bob;
  r.tensor_upper_bound = phi(0.5) * 0.5;
  return r;
}

}  // namespace parrep
