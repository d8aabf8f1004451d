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

// Two-prover projection games as measure-weighted linear operators.
//
// A game G with Alice questions U, Bob questions V and alphabet Sigma is a
// probability distribution over edges (u, v, pi), where pi maps each Bob
// answer beta to at most one accepted Alice answer alpha. G acts on
// functions f on V x Sigma by
//
//   (Gf)(u, alpha) = E_{(v,pi)|u} sum_{beta : pi(beta) = alpha} f(v, beta).
//
// Functions on V x Sigma (or U x Sigma) are Eigen matrices with one row per
// question and one column per label. Inner products on U x Sigma use the
// Alice marginal of the edge distribution and the counting measure on Sigma.

#ifndef PARREP_GAME_HPP_
#define PARREP_GAME_HPP_

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace parrep {

inline constexpr int kRejected = -1;
inline constexpr double kTolerance = 1e-9;

// Nonnegative function on V x Sigma (rows: Bob questions, cols: labels).
// A randomized Bob strategy has unit row sums.
using FractionalAssignment = Eigen::MatrixXd;

// Function on U x Sigma, e.g. Gf or an Alice strategy.
using AliceFunction = Eigen::MatrixXd;

// A projection constraint: beta -> alpha, or kRejected when no Alice answer
// accepts beta.
class ProjectionConstraint {
 public:
  ProjectionConstraint() = default;

  // Builds from (beta, alpha) pairs. Throws DomainError on a repeated beta
  // or on a label outside [0, alphabet_size).
  ProjectionConstraint(int alphabet_size,
                       std::span<const std::pair<int, int>> pairs);

  // Every beta maps to `alpha`.
  static ProjectionConstraint trivial(int alphabet_size, int alpha = 0);
  static ProjectionConstraint identity(int alphabet_size);
  // image[beta] = alpha or kRejected.
  static ProjectionConstraint from_image(int alphabet_size,
                                         std::vector<int> image);

  int alphabet_size() const { return static_cast<int>(image_.size()); }
  int project(int beta) const { return image_[static_cast<size_t>(beta)]; }
  const std::vector<int>& image() const { return image_; }
  // (beta, alpha) pairs in increasing beta.
  std::vector<std::pair<int, int>> pairs() const;

  friend bool operator==(const ProjectionConstraint&,
                         const ProjectionConstraint&) = default;

 private:
  std::vector<int> image_;
};

struct Edge {
  int u = 0;
  int v = 0;
  double weight = 0.0;
  ProjectionConstraint constraint;
};

class ProjectionGame {
 public:
  ProjectionGame() = default;

  // Raw nonnegative weights are normalized to a probability distribution.
  // Throws DomainError on out-of-range indices, negative weights, zero total
  // weight or constraints over a different alphabet.
  ProjectionGame(int alice_count, int bob_count, int alphabet_size,
                 std::vector<Edge> edges);

  int alice_count() const { return alice_count_; }
  int bob_count() const { return bob_count_; }
  int alphabet_size() const { return alphabet_size_; }

  const std::vector<Edge>& edges() const { return edges_; }
  // Edge indices incident to Alice question u, in input order.
  const std::vector<int>& alice_edges(int u) const {
    return alice_edges_[static_cast<size_t>(u)];
  }
  const std::vector<int>& bob_edges(int v) const {
    return bob_edges_[static_cast<size_t>(v)];
  }

  const Eigen::VectorXd& alice_measure() const { return alice_measure_; }
  const Eigen::VectorXd& bob_measure() const { return bob_measure_; }

 private:
  int alice_count_ = 0;
  int bob_count_ = 0;
  int alphabet_size_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> alice_edges_;
  std::vector<std::vector<int>> bob_edges_;
  Eigen::VectorXd alice_measure_;
  Eigen::VectorXd bob_measure_;
};

// Deterministic Bob strategy: one label per Bob question.
struct BobAssignment {
  std::vector<int> labels;

  friend bool operator==(const BobAssignment&, const BobAssignment&) = default;
};

// 0/1 fractional assignment with f(v, labels[v]) = 1.
FractionalAssignment to_fractional(const BobAssignment& assignment,
                                   int alphabet_size);

// True when f is nonnegative and every row sums to 1 within `tol`.
bool is_strategy(const FractionalAssignment& f, double tol = kTolerance);

// Gf on U x Sigma. Throws DimensionError on a shape mismatch.
AliceFunction apply_game(const ProjectionGame& game,
                         const FractionalAssignment& f);

// Dense matrix of G: row u * |Sigma| + alpha, column v * |Sigma| + beta.
Eigen::MatrixXd operator_matrix(const ProjectionGame& game);

// Trivial game T: (Tf)(v, 0) = sum_beta f(v, beta), zero elsewhere. Label 0
// plays the role of the distinguished accepting Alice answer.
FractionalAssignment apply_trivial(const FractionalAssignment& f);

// T_v f: the profile of row v under T, as a 1 x |Sigma| row.
Eigen::RowVectorXd apply_trivial_v(int v, const FractionalAssignment& f);

// ||g||^2 = E_u sum_alpha g(u, alpha)^2 under the Alice marginal.
double alice_norm_sq(const ProjectionGame& game, const AliceFunction& g);
// ||f||^2 = E_v sum_beta f(v, beta)^2 under the Bob marginal.
double bob_norm_sq(const ProjectionGame& game, const FractionalAssignment& f);
// ||Tf||^2 = E_v (sum_beta f(v, beta))^2.
double trivial_norm_sq(const ProjectionGame& game,
                       const FractionalAssignment& f);

// <g, Gf>: success probability of strategies f (Bob) and g (Alice).
double pair_value(const ProjectionGame& game, const FractionalAssignment& f,
                  const AliceFunction& g);

// ||Gf||^2.
double collision_value_sq_of(const ProjectionGame& game,
                             const FractionalAssignment& f);
double collision_value_sq_of(const ProjectionGame& game,
                             const BobAssignment& f);

// Direct product G (x) H. Question pairs and label pairs are encoded
// row-major: (v, v') -> v * |V'| + v', (beta, beta') -> beta * |Sigma'| +
// beta'. Throws CapExceeded when the product would be unreasonably large.
ProjectionGame tensor(const ProjectionGame& g1, const ProjectionGame& g2);
ProjectionGame tensor_power(const ProjectionGame& game, int k);

// Tensor of fractional assignments in the same row-major encoding.
FractionalAssignment tensor(const FractionalAssignment& f1,
                            const FractionalAssignment& f2);

// Single question on each side, one label, always accepted. Neutral element
// of the direct product up to relabeling.
ProjectionGame unit_game();

}  // namespace parrep

#endif  // PARREP_GAME_HPP_
