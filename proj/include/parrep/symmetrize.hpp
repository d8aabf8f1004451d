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

// The symmetrized game: draw u, then two independent constraints (v, pi) and
// (v', pi') at u. Bob's answers beta, beta' are consistent when they project
// to the same Alice answer, and the success probability of a single Bob
// strategy f equals ||Gf||^2.

#ifndef PARREP_SYMMETRIZE_HPP_
#define PARREP_SYMMETRIZE_HPP_

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "parrep/game.hpp"

namespace parrep {

struct SymTriple {
  int v1 = 0;
  int v2 = 0;
  double weight = 0.0;
  // Consistent label pairs (beta, beta'), sorted.
  std::vector<std::pair<int, int>> tau;
};

struct SymmetrizedGame {
  int bob_count = 0;
  int alphabet_size = 0;
  // Sorted by (v1, v2, tau); weights sum to one.
  std::vector<SymTriple> triples;
  // Marginal of v1 (equal to the Bob marginal of the source game).
  Eigen::VectorXd bob_measure;
};

SymmetrizedGame symmetrize(const ProjectionGame& game);

// E_{(v,v',tau)} sum_{(beta,beta') in tau} f(v, beta) f(v', beta').
double sym_value(const SymmetrizedGame& sg, const FractionalAssignment& f);
double sym_value(const SymmetrizedGame& sg, const BobAssignment& f);

// Quadratic form of ||Gf||^2 on vec(f) (index v * |Sigma| + beta):
// K = M^T D_U M with M the operator matrix and D_U the Alice measure.
Eigen::MatrixXd collision_kernel(const ProjectionGame& game);

// mu_sym(v, v'): total symmetrized mass on each Bob pair.
Eigen::MatrixXd pair_weights(const SymmetrizedGame& sg);

}  // namespace parrep

#endif  // PARREP_SYMMETRIZE_HPP_
