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

#ifndef PARREP_VECTOR_ASSIGNMENT_HPP_
#define PARREP_VECTOR_ASSIGNMENT_HPP_

#include <Eigen/Dense>

#include "parrep/game.hpp"

namespace parrep {

// Nonnegative f on V x Sigma x Omega over a finite weighted measure space.
//
// `values` has one column per point of Omega (a slice f_omega) and one row per
// (v, beta), flattened as v * alphabet_size + beta. `weights` holds the
// (strictly positive, not necessarily normalized) measure of each point.
struct VectorAssignment {
  int bob_count = 0;
  int alphabet_size = 0;
  Eigen::VectorXd weights;
  Eigen::MatrixXd values;

  VectorAssignment() = default;
  VectorAssignment(int bob_count, int alphabet_size, Eigen::VectorXd weights,
                   Eigen::MatrixXd values);

  // Constant embedding of a fractional assignment over a one-point space.
  static VectorAssignment lift(const FractionalAssignment& f,
                               double weight = 1.0);

  Eigen::Index omega_size() const { return weights.size(); }

  // Slice f_omega as a |V| x |Sigma| matrix.
  FractionalAssignment slice(Eigen::Index omega) const;
  void set_slice(Eigen::Index omega, const FractionalAssignment& f);
};

// Throws DimensionError / DomainError when shapes disagree, weights are not
// strictly positive or values are negative.
void validate(const VectorAssignment& f);
void validate(const ProjectionGame& game, const VectorAssignment& f);

// ||(G (x) Id) f||^2 = sum_omega w_omega ||G f_omega||^2.
double game_norm_sq(const ProjectionGame& game, const VectorAssignment& f);

// ||(T_v (x) Id) f||^2 = sum_omega w_omega (sum_beta f(v, beta, omega))^2, one
// entry per Bob question.
Eigen::VectorXd vertex_norms_sq(const VectorAssignment& f);

// ||(G (x) Id) f|| / max_v ||(T_v (x) Id) f||; zero for f = 0.
double certificate_ratio(const ProjectionGame& game, const VectorAssignment& f);

// Every (v, omega) slice has at most one positive label.
bool is_deterministic(const VectorAssignment& f);

}  // namespace parrep

#endif  // PARREP_VECTOR_ASSIGNMENT_HPP_
