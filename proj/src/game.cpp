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

#include "parrep/game.hpp"

#include <cmath>
#include <string>

#include "parrep/errors.hpp"

namespace parrep {
namespace {

// Upper limit on edges * alphabet for materialized products.
constexpr double kMaxProductEntries = 5e7;

void check_assignment_shape(const ProjectionGame& game,
                            const FractionalAssignment& f) {
  if (f.rows() != game.bob_count() || f.cols() != game.alphabet_size()) {
    throw DimensionError("assignment is " + std::to_string(f.rows()) + "x" +
                         std::to_string(f.cols()) + ", game expects " +
                         std::to_string(game.bob_count()) + "x" +
                         std::to_string(game.alphabet_size()));
  }
}

}  // namespace

ProjectionConstraint::ProjectionConstraint(
    int alphabet_size, std::span<const std::pair<int, int>> pairs)
    : image_(static_cast<size_t>(alphabet_size), kRejected) {
  if (alphabet_size <= 0) throw DomainError("alphabet size must be positive");
  for (const auto& [beta, alpha] : pairs) {
    if (beta < 0 || beta >= alphabet_size || alpha < 0 ||
        alpha >= alphabet_size) {
      throw DomainError("constraint label out of range: " +
                        std::to_string(beta) + ">" + std::to_string(alpha));
    }
    auto& slot = image_[static_cast<size_t>(beta)];
    if (slot != kRejected) {
      throw DomainError("duplicate beta " + std::to_string(beta) +
                        " in projection constraint");
    }
    slot = alpha;
  }
}

ProjectionConstraint ProjectionConstraint::trivial(int alphabet_size,
                                                   int alpha) {
  return from_image(alphabet_size,
                    std::vector<int>(static_cast<size_t>(alphabet_size),
                                     alpha));
}

ProjectionConstraint ProjectionConstraint::identity(int alphabet_size) {
  std::vector<int> image(static_cast<size_t>(alphabet_size));
  for (int b = 0; b < alphabet_size; ++b) image[static_cast<size_t>(b)] = b;
  return from_image(alphabet_size, std::move(image));
}

ProjectionConstraint ProjectionConstraint::from_image(int alphabet_size,
                                                      std::vector<int> image) {
  if (static_cast<int>(image.size()) != alphabet_size || alphabet_size <= 0) {
    throw DomainError("constraint image has wrong length");
  }
  for (int a : image) {
    if (a != kRejected && (a < 0 || a >= alphabet_size)) {
      throw DomainError("constraint label out of range");
    }
  }
  ProjectionConstraint c;
  c.image_ = std::move(image);
  return c;
}

std::vector<std::pair<int, int>> ProjectionConstraint::pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int b = 0; b < alphabet_size(); ++b) {
    if (image_[static_cast<size_t>(b)] != kRejected) {
      out.emplace_back(b, image_[static_cast<size_t>(b)]);
    }
  }
  return out;
}

ProjectionGame::ProjectionGame(int alice_count, int bob_count,
                               int alphabet_size, std::vector<Edge> edges)
    : alice_count_(alice_count),
      bob_count_(bob_count),
      alphabet_size_(alphabet_size),
      edges_(std::move(edges)) {
  if (alice_count <= 0 || bob_count <= 0 || alphabet_size <= 0) {
    throw DomainError("question and alphabet counts must be positive");
  }
  double total = 0.0;
  for (const Edge& e : edges_) {
    if (e.u < 0 || e.u >= alice_count || e.v < 0 || e.v >= bob_count) {
      throw DomainError("edge endpoint out of range: u=" +
                        std::to_string(e.u) + " v=" + std::to_string(e.v));
    }
    if (!(e.weight >= 0.0) || !std::isfinite(e.weight)) {
      throw DomainError("edge weights must be finite and nonnegative");
    }
    if (e.constraint.alphabet_size() != alphabet_size) {
      throw DomainError("constraint alphabet does not match the game");
    }
    total += e.weight;
  }
  if (!(total > 0.0)) throw DomainError("total edge weight must be positive");
  if (total != 1.0) {
    for (Edge& e : edges_) e.weight /= total;
  }

  alice_edges_.assign(static_cast<size_t>(alice_count), {});
  bob_edges_.assign(static_cast<size_t>(bob_count), {});
  alice_measure_ = Eigen::VectorXd::Zero(alice_count);
  bob_measure_ = Eigen::VectorXd::Zero(bob_count);
  for (size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    alice_edges_[static_cast<size_t>(e.u)].push_back(static_cast<int>(i));
    bob_edges_[static_cast<size_t>(e.v)].push_back(static_cast<int>(i));
    alice_measure_[e.u] += e.weight;
    bob_measure_[e.v] += e.weight;
  }
}

FractionalAssignment to_fractional(const BobAssignment& assignment,
                                   int alphabet_size) {
  const auto n = static_cast<Eigen::Index>(assignment.labels.size());
  FractionalAssignment f = FractionalAssignment::Zero(n, alphabet_size);
  for (Eigen::Index v = 0; v < n; ++v) {
    const int b = assignment.labels[static_cast<size_t>(v)];
    if (b < 0 || b >= alphabet_size) {
      throw DomainError("assignment label out of range");
    }
    f(v, b) = 1.0;
  }
  return f;
}

bool is_strategy(const FractionalAssignment& f, double tol) {
  if ((f.array() < 0.0).any()) return false;
  return ((f.rowwise().sum().array() - 1.0).abs() <= tol).all();
}

AliceFunction apply_game(const ProjectionGame& game,
                         const FractionalAssignment& f) {
  check_assignment_shape(game, f);
  AliceFunction out =
      AliceFunction::Zero(game.alice_count(), game.alphabet_size());
  for (const Edge& e : game.edges()) {
    const double mu_u = game.alice_measure()[e.u];
    if (e.weight == 0.0) continue;
    const double w = e.weight / mu_u;
    const auto& image = e.constraint.image();
    for (int b = 0; b < game.alphabet_size(); ++b) {
      const int a = image[static_cast<size_t>(b)];
      if (a != kRejected) out(e.u, a) += w * f(e.v, b);
    }
  }
  return out;
}

Eigen::MatrixXd operator_matrix(const ProjectionGame& game) {
  const int s = game.alphabet_size();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(
      static_cast<Eigen::Index>(game.alice_count()) * s,
      static_cast<Eigen::Index>(game.bob_count()) * s);
  for (const Edge& e : game.edges()) {
    if (e.weight == 0.0) continue;
    const double w = e.weight / game.alice_measure()[e.u];
    for (int b = 0; b < s; ++b) {
      const int a = e.constraint.project(b);
      if (a != kRejected) {
        m(static_cast<Eigen::Index>(e.u) * s + a,
          static_cast<Eigen::Index>(e.v) * s + b) += w;
      }
    }
  }
  return m;
}

FractionalAssignment apply_trivial(const FractionalAssignment& f) {
  FractionalAssignment out = FractionalAssignment::Zero(f.rows(), f.cols());
  if (f.cols() > 0) out.col(0) = f.rowwise().sum();
  return out;
}

Eigen::RowVectorXd apply_trivial_v(int v, const FractionalAssignment& f) {
  if (v < 0 || v >= f.rows()) {
    throw DomainError("vertex " + std::to_string(v) + " out of range");
  }
  Eigen::RowVectorXd out = Eigen::RowVectorXd::Zero(f.cols());
  if (f.cols() > 0) out[0] = f.row(v).sum();
  return out;
}

double alice_norm_sq(const ProjectionGame& game, const AliceFunction& g) {
  if (g.rows() != game.alice_count() || g.cols() != game.alphabet_size()) {
    throw DimensionError("Alice function has the wrong shape");
  }
  return game.alice_measure().dot(g.rowwise().squaredNorm());
}

double bob_norm_sq(const ProjectionGame& game, const FractionalAssignment& f) {
  check_assignment_shape(game, f);
  return game.bob_measure().dot(f.rowwise().squaredNorm());
}

double trivial_norm_sq(const ProjectionGame& game,
                       const FractionalAssignment& f) {
  check_assignment_shape(game, f);
  return game.bob_measure().dot(f.rowwise().sum().array().square().matrix());
}

double pair_value(const ProjectionGame& game, const FractionalAssignment& f,
                  const AliceFunction& g) {
  const AliceFunction gf = apply_game(game, f);
  if (g.rows() != gf.rows() || g.cols() != gf.cols()) {
    throw DimensionError("Alice strategy has the wrong shape");
  }
  return game.alice_measure().dot(g.cwiseProduct(gf).rowwise().sum());
}

double collision_value_sq_of(const ProjectionGame& game,
                             const FractionalAssignment& f) {
  return alice_norm_sq(game, apply_game(game, f));
}

double collision_value_sq_of(const ProjectionGame& game,
                             const BobAssignment& f) {
  if (static_cast<int>(f.labels.size()) != game.bob_count()) {
    throw DimensionError("assignment length does not match the game");
  }
  return collision_value_sq_of(game, to_fractional(f, game.alphabet_size()));
}

ProjectionGame tensor(const ProjectionGame& g1, const ProjectionGame& g2) {
  const double alice = double(g1.alice_count()) * g2.alice_count();
  const double bob = double(g1.bob_count()) * g2.bob_count();
  const double sigma = double(g1.alphabet_size()) * g2.alphabet_size();
  const double edges = double(g1.edges().size()) * double(g2.edges().size());
  if (alice > 1e8 || bob > 1e8 || sigma > 1e6 ||
      edges * sigma > kMaxProductEntries) {
    throw CapExceeded("tensor product too large: " +
                      std::to_string(static_cast<long long>(edges)) +
                      " edges over alphabet " +
                      std::to_string(static_cast<long long>(sigma)));
  }
  const int s2 = g2.alphabet_size();
  const int s = g1.alphabet_size() * s2;
  std::vector<Edge> out;
  out.reserve(g1.edges().size() * g2.edges().size());
  for (const Edge& e1 : g1.edges()) {
    for (const Edge& e2 : g2.edges()) {
      std::vector<int> image(static_cast<size_t>(s), kRejected);
      for (int b1 = 0; b1 < g1.alphabet_size(); ++b1) {
        const int a1 = e1.constraint.project(b1);
        if (a1 == kRejected) continue;
        for (int b2 = 0; b2 < s2; ++b2) {
          const int a2 = e2.constraint.project(b2);
          if (a2 == kRejected) continue;
          image[static_cast<size_t>(b1 * s2 + b2)] = a1 * s2 + a2;
        }
      }
      out.push_back({e1.u * g2.alice_count() + e2.u,
                     e1.v * g2.bob_count() + e2.v, e1.weight * e2.weight,
                     ProjectionConstraint::from_image(s, std::move(image))});
    }
  }
  return ProjectionGame(g1.alice_count() * g2.alice_count(),
                        g1.bob_count() * g2.bob_count(), s, std::move(out));
}

ProjectionGame tensor_power(const ProjectionGame& game, int k) {
  if (k < 1) throw DomainError("tensor power requires k >= 1");
  ProjectionGame out = game;
  for (int i = 1; i < k; ++i) out = tensor(out, game);
  return out;
}

FractionalAssignment tensor(const FractionalAssignment& f1,
                            const FractionalAssignment& f2) {
  FractionalAssignment out(f1.rows() * f2.rows(), f1.cols() * f2.cols());
  for (Eigen::Index v = 0; v < f1.rows(); ++v) {
    for (Eigen::Index b = 0; b < f1.cols(); ++b) {
      out.block(v * f2.rows(), b * f2.cols(), f2.rows(), f2.cols()) =
          f1(v, b) * f2;
    }
  }
  return out;
}

ProjectionGame unit_game() {
  return ProjectionGame(1, 1, 1,
                        {{0, 0, 1.0, ProjectionConstraint::identity(1)}});
}

}  // namespace parrep
