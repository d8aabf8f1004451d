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

// Nonnegative Rayleigh-quotient relaxations of the collision value.
//
//   lambda+(G) = max_{h >= 0} ||Gh|| / ||Th||
//   val+(G)    = sup_{Omega, f >= 0} ||(G x Id) f|| / max_v ||(T_v x Id) f||
//
// lambda+ is computed exactly by enumerating the support labeling of h and
// solving a Perron eigenproblem for its magnitudes. val+ is bracketed: a
// seeded search produces certificates (lower bounds) and the approximation
// bound turns the collision value into an upper bound.

#ifndef PARREP_RELAX_HPP_
#define PARREP_RELAX_HPP_

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "parrep/enumerate.hpp"
#include "parrep/game.hpp"
#include "parrep/vector_assignment.hpp"

namespace parrep {

// Q restricted to one labeling x: entry (i, j) is the symmetrized mass on
// the Bob pair (vertices[i], vertices[j]) whose constraint accepts
// (x_v, x_v'), i.e. mu_sym(v, v') * Q_{v, v'}. Only positive-measure Bob
// questions appear.
struct LabelingMatrix {
  std::vector<int> labeling;
  std::vector<int> vertices;
  Eigen::MatrixXd weighted;
  Eigen::VectorXd measure;
};

LabelingMatrix labeling_matrix(const ProjectionGame& game,
                               const Eigen::MatrixXd& kernel,
                               std::vector<int> labeling);

struct PerronResult {
  double eigenvalue = 0.0;
  Eigen::VectorXd vector;  // nonnegative, unit Euclidean norm
  int iterations = 0;
  double residual = 0.0;
  // Smallest entry seen before clipping, for the nonnegativity check.
  double min_entry = 0.0;
};

struct PowerIterationOptions {
  double tolerance = 1e-12;
  int max_iterations = 100000;
};

// Largest eigenvalue of a symmetric entrywise-nonnegative matrix by shifted
// power iteration from the all-ones vector. Throws ConvergenceError (with the
// residual in its message) if the iteration budget is exhausted.
PerronResult perron_eigen(const Eigen::MatrixXd& m,
                          const PowerIterationOptions& options = {});

struct LambdaPlusResult {
  double value = 0.0;  // lambda+, not squared
  std::vector<int> labeling;
  Eigen::VectorXd magnitudes;  // g over all Bob questions (zero off-support)
  long long labelings_checked = 0;
};

LambdaPlusResult lambda_plus(const ProjectionGame& game,
                             const EnumerationLimits& limits = {},
                             const PowerIterationOptions& options = {});

struct ValPlusCertificate {
  VectorAssignment assignment;
  double ratio = 0.0;
};

struct ValPlusSearchOptions {
  int omega_size = 4;
  int iterations = 2000;
  int random_starts = 3;
  std::uint64_t seed = 0;
  // Whether to seed one start with the optimal deterministic assignment.
  bool classical_start = true;
  EnumerationLimits limits;
};

ValPlusCertificate val_plus_search(const ProjectionGame& game,
                                   const ValPlusSearchOptions& options = {});

struct ValPlusInterval {
  double lower = 0.0;
  double upper = 0.0;
  double collision_value_sq = 0.0;
  double search_ratio = 0.0;
  ValPlusCertificate certificate;
};

ValPlusInterval val_plus_interval(const ProjectionGame& game,
                                  const ValPlusSearchOptions& options = {});

// f (x) f' on Omega x Omega' for the game G (x) H, in the row-major
// question and label encoding of the game tensor. The returned ratio is the
// product of the input ratios.
ValPlusCertificate tensor_certificate(const ValPlusCertificate& c1,
                                      const ValPlusCertificate& c2);

struct ExpanderCheck {
  double gamma = 0.0;    // measured spectral gap
  double epsilon = 0.0;  // 1 - lambda+
  double lambda_plus = 0.0;
  double delta = 0.0;    // ||G||^2
  double lhs = 0.0;      // 1 - delta
  double rhs = 0.0;      // 36 eps / gamma + 18 eps
  bool applicable = false;  // gamma > 0 and eps / gamma <= 1/6
  bool holds = true;
};

ExpanderCheck expander_approx_check(const ProjectionGame& game,
                                    const EnumerationLimits& limits = {});

}  // namespace parrep

#endif  // PARREP_RELAX_HPP_
