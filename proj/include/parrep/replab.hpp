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

// Named games and the repetition experiments run on them.

#ifndef PARREP_REPLAB_HPP_
#define PARREP_REPLAB_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "parrep/enumerate.hpp"
#include "parrep/game.hpp"

namespace parrep {

// Non-interactive agreement: U = V = {0, 1}, uniform questions, labels
// A0, A1, B0, B1 (0..3). Bob's A_u is accepted as A_u and B_v as B_v.
ProjectionGame feige_game();

inline constexpr int kFeigeA0 = 0;
inline constexpr int kFeigeA1 = 1;
inline constexpr int kFeigeB0 = 2;
inline constexpr int kFeigeB1 = 3;

// Bob answers question (v1, v2) of NA (x) NA with (A v2, B v2).
BobAssignment feige_tensor_strategy();

// Alice holds cycle vertex i; Bob holds i (answers must agree) or i + 1
// (answers must differ), each with probability 1/2. Binary alphabet; the
// value is 1 - 1/(2m). Throws DomainError unless m is odd and at least 3.
ProjectionGame odd_cycle_game(int m);

struct RandomGameOptions {
  int alice_count = 3;
  int bob_count = 3;
  int alphabet_size = 2;
  // Probability that a given (u, v) pair carries a constraint. Every Alice
  // question keeps at least one constraint.
  double density = 1.0;
  // Probability that a Bob label has no accepted Alice label.
  double reject_prob = 0.0;
  // Plant a labeling that satisfies every constraint.
  bool planted = false;
  // Integer weights in 1..4 instead of uniform weights.
  bool integer_weights = true;
  std::uint64_t seed = 0;
};

ProjectionGame random_projection_game(const RandomGameOptions& options);
ProjectionGame random_projection_game(int alice_count, int bob_count,
                                      int alphabet_size, double density,
                                      std::uint64_t seed);

// (c, d)-regular bipartite multigraph with c * |U| = d * |V| uniform edges,
// drawn from the configuration model. Planted mode makes it satisfiable.
ProjectionGame random_biregular_game(int alice_count, int bob_count,
                                     int alice_degree, int alphabet_size,
                                     bool planted, std::uint64_t seed);

struct RepetitionRow {
  int k = 0;
  bool computed = false;
  std::string refusal;
  double value = 0.0;
  double collision_sq = 0.0;
  double chain_bound = 0.0;   // phi(||G||^2)^(k-1) ||G||^2
  double phi_bound = 0.0;     // phi(||G||^2)^k
  double value_bound = 0.0;   // phi(val)^(k/2)
  double small_bound = 0.0;   // (4 val)^(k/4)
  bool small_applicable = false;  // val <= 1/4
  double rao_bound = 0.0;     // (1 - eps^2/16)^k with eps = 1 - val
  bool chain_ok = false;      // val^2 <= ||G^k||^2 <= chain <= phi_bound
  bool value_ok = false;
  bool small_ok = false;
  bool rao_ok = false;
  bool monotone_ok = false;   // relative to row k - 1
  bool ok() const {
    return !computed ||
           (chain_ok && value_ok && small_ok && rao_ok && monotone_ok);
  }
};

struct RepetitionReport {
  double value = 0.0;
  double collision_sq = 0.0;
  std::vector<RepetitionRow> rows;  // k = 1..k_max
  bool ok() const;
};

RepetitionReport parrep_report(const ProjectionGame& game, int k_max,
                               const EnumerationLimits& limits = {});

struct FewRepsRow {
  int k = 0;
  bool computed = false;
  std::string refusal;
  double collision_sq = 0.0;
  double deficit = 0.0;  // 1 - ||G^k||^2
  double t = 0.0;        // deficit / (1 - ||G||^2)
  double t_over_sqrt_k = 0.0;
  bool monotone_ok = false;
};

struct FewRepsReport {
  double epsilon = 0.0;  // 1 - ||G||^2
  std::vector<FewRepsRow> rows;
  bool ok() const;
};

FewRepsReport few_reps_report(const ProjectionGame& game, int k_max,
                              const EnumerationLimits& limits = {});

struct ProductPair {
  std::string label;
  double collision_g = 0.0;
  double collision_h = 0.0;
  double collision_gh = 0.0;
  double lambda_plus_g = 0.0;
  double product_bound = 0.0;  // phi(||G||^2) ||H||^2
  double simple_bound = 0.0;   // lambda+(G) ||H||
  bool monotone_ok = false;
  bool simple_ok = false;
  bool product_ok = false;
  bool ok() const { return monotone_ok && simple_ok && product_ok; }
};

struct ProductSweepReport {
  std::vector<ProductPair> pairs;
  int violations() const;
};

// Checks ||G (x) H||^2 <= ||G||^2, ||G (x) H|| <= lambda+(G) ||H|| and
// ||G (x) H||^2 <= phi(||G||^2) ||H||^2 on one pair.
ProductPair product_check(const ProjectionGame& g, const ProjectionGame& h,
                          std::string label,
                          const EnumerationLimits& limits = {});

// A seeded pair of small games for the product experiments.
std::pair<ProjectionGame, ProjectionGame> random_game_pair(std::uint64_t seed);

// The Feige pair followed by `n_pairs` seeded pairs.
ProductSweepReport product_theorem_sweep(int n_pairs, std::uint64_t seed,
                                         const EnumerationLimits& limits = {});

struct FeigeReport {
  double value = 0.0;
  double collision_sq = 0.0;
  double tensor_value = 0.0;
  double tensor_strategy_collision_sq = 0.0;
  double tensor_collision_sq = 0.0;
  double tensor_upper_bound = 0.0;  // phi(1/2) / 2
  BobAssignment tensor_optimum;
  bool ok() const;
};

FeigeReport feige_suite();

}  // namespace parrep

#endif  // PARREP_REPLAB_HPP_
