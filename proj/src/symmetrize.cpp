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

#include "parrep/symmetrize.hpp"

#include <map>
#include <tuple>

#include "parrep/errors.hpp"

namespace parrep {
namespace {

using TripleKey = std::tuple<int, int, std::vector<std::pair<int, int>>>;

std::vector<std::pair<int, int>> consistent_pairs(
    const ProjectionConstraint& a, const ProjectionConstraint& b) {
  std::vector<std::pair<int, int>> tau;
  const int s = a.alphabet_size();
  for (int beta = 0; beta < s; ++beta) {
    const int alpha = a.project(beta);
    if (alpha == kRejected) continue;
    for (int beta2 = 0; beta2 < s; ++beta2) {
      if (b.project(beta2) == alpha) tau.emplace_back(beta, beta2);
    }
  }
  return tau;
}

void check_shape(const SymmetrizedGame& sg, const FractionalAssignment& f) {
  if (f.rows() != sg.bob_count || f.cols() != sg.alphabet_size) {
    throw DimensionError("assignment shape does not match the game");
  }
}

}  // namespace

SymmetrizedGame symmetrize(const ProjectionGame& game) {
  std::map<TripleKey, double> mass;
  const auto& edges = game.edges();
  for (int u = 0; u < game.alice_count(); ++u) {
    const double mu = game.alice_measure()[u];
    if (mu <= 0.0) continue;
    for (int i : game.alice_edges(u)) {
      const Edge& e1 = edges[static_cast<size_t>(i)];
      if (e1.weight == 0.0) continue;
      for (int j : game.alice_edges(u)) {
        const Edge& e2 = edges[static_cast<size_t>(j)];
        if (e2.weight == 0.0) continue;
        // mu(u) * mu(e1 | u) * mu(e2 | u).
        mass[{e1.v, e2.v, consistent_pairs(e1.constraint, e2.constraint)}] +=
            e1.weight * e2.weight / mu;
      }
    }
  }
  SymmetrizedGame sg;
  sg.bob_count = game.bob_count();
  sg.alphabet_size = game.alphabet_size();
  sg.bob_measure = game.bob_measure();
  sg.triples.reserve(mass.size());
  for (auto& [key, w] : mass) {
    sg.triples.push_back({std::get<0>(key), std::get<1>(key), w,
                          std::get<2>(key)});
  }
  return sg;
}

double sym_value(const SymmetrizedGame& sg, const FractionalAssignment& f) {
  check_shape(sg, f);
  double total = 0.0;
  for (const SymTriple& t : sg.triples) {
    double inner = 0.0;
    for (const auto& [b1, b2] : t.tau) inner += f(t.v1, b1) * f(t.v2, b2);
    total += t.weight * inner;
  }
  return total;
}

double sym_value(const SymmetrizedGame& sg, const BobAssignment& f) {
  if (static_cast<int>(f.labels.size()) != sg.bob_count) {
    throw DimensionError("assignment length does not match the game");
  }
  return sym_value(sg, to_fractional(f, sg.alphabet_size));
}

Eigen::MatrixXd collision_kernel(const ProjectionGame& game) {
  const Eigen::MatrixXd m = operator_matrix(game);
  Eigen::VectorXd d(m.rows());
  for (int u = 0; u < game.alice_count(); ++u) {
    d.segment(Eigen::Index{u} * game.alphabet_size(), game.alphabet_size())
        .setConstant(game.alice_measure()[u]);
  }
  return m.transpose() * d.asDiagonal() * m;
}

Eigen::MatrixXd pair_weights(const SymmetrizedGame& sg) {
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(sg.bob_count, sg.bob_count);
  for (const SymTriple& t : sg.triples) p(t.v1, t.v2) += t.weight;
  return p;
}

}  // namespace parrep
