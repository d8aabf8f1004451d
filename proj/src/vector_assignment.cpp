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

#include "parrep/vector_assignment.hpp"

#include <cmath>

#include "parrep/errors.hpp"

namespace parrep {

using RowMajorMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

VectorAssignment::VectorAssignment(int bob_count, int alphabet_size,
                                   Eigen::VectorXd weights,
                                   Eigen::MatrixXd values)
    : bob_count(bob_count),
      alphabet_size(alphabet_size),
      weights(std::move(weights)),
      values(std::move(values)) {
  validate(*this);
}

VectorAssignment VectorAssignment::lift(const FractionalAssignment& f,
                                        double weight) {
  VectorAssignment out;
  out.bob_count = static_cast<int>(f.rows());
  out.alphabet_size = static_cast<int>(f.cols());
  out.weights = Eigen::VectorXd::Constant(1, weight);
  out.values.resize(f.size(), 1);
  out.set_slice(0, f);
  validate(out);
  return out;
}

FractionalAssignment VectorAssignment::slice(Eigen::Index omega) const {
  const Eigen::VectorXd column = values.col(omega);
  return Eigen::Map<const RowMajorMatrix>(column.data(), bob_count,
                                          alphabet_size);
}

void VectorAssignment::set_slice(Eigen::Index omega,
                                 const FractionalAssignment& f) {
  if (f.rows() != bob_count || f.cols() != alphabet_size) {
    throw DimensionError("slice has the wrong shape");
  }
  const RowMajorMatrix row_major = f;
  values.col(omega) =
      Eigen::Map<const Eigen::VectorXd>(row_major.data(), row_major.size());
}

void validate(const VectorAssignment& f) {
  if (f.bob_count <= 0 || f.alphabet_size <= 0) {
    throw DimensionError("vector assignment needs positive dimensions");
  }
  if (f.values.rows() != Eigen::Index{f.bob_count} * f.alphabet_size ||
      f.values.cols() != f.weights.size()) {
    throw DimensionError("vector assignment table does not match its shape");
  }
  if (f.weights.size() == 0) throw DomainError("measure space is empty");
  if (!(f.weights.array() > 0.0).all() || !f.weights.allFinite()) {
    throw DomainError("measure weights must be positive and finite");
  }
  if ((f.values.array() < 0.0).any() || !f.values.allFinite()) {
    throw DomainError("vector assignment must be nonnegative and finite");
  }
}

void validate(const ProjectionGame& game, const VectorAssignment& f) {
  validate(f);
  if (f.bob_count != game.bob_count() ||
      f.alphabet_size != game.alphabet_size()) {
    throw DimensionError("vector assignment does not match the game");
  }
}

double game_norm_sq(const ProjectionGame& game, const VectorAssignment& f) {
  validate(game, f);
  double total = 0.0;
  for (Eigen::Index w = 0; w < f.omega_size(); ++w) {
    total += f.weights[w] * collision_value_sq_of(game, f.slice(w));
  }
  return total;
}

Eigen::VectorXd vertex_norms_sq(const VectorAssignment& f) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(f.bob_count);
  for (int v = 0; v < f.bob_count; ++v) {
    const Eigen::RowVectorXd sums =
        f.values.middleRows(Eigen::Index{v} * f.alphabet_size, f.alphabet_size)
            .colwise()
            .sum();
    out[v] = sums.array().square().matrix().dot(f.weights.transpose());
  }
  return out;
}

double certificate_ratio(const ProjectionGame& game,
                         const VectorAssignment& f) {
  const double denom = vertex_norms_sq(f).maxCoeff();
  if (denom <= 0.0) return 0.0;
  return std::sqrt(game_norm_sq(game, f) / denom);
}

bool is_deterministic(const VectorAssignment& f) {
  for (Eigen::Index w = 0; w < f.omega_size(); ++w) {
    for (int v = 0; v < f.bob_count; ++v) {
      int positive = 0;
      for (int b = 0; b < f.alphabet_size; ++b) {
        if (f.values(Eigen::Index{v} * f.alphabet_size + b, w) > 0.0) {
          ++positive;
        }
      }
      if (positive > 1) return false;
    }
  }
  return true;
}

}  // namespace parrep
